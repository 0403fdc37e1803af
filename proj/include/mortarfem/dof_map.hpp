#pragma once

#include <vector>

#include "mortarfem/errors.hpp"
#include "mortarfem/geometry.hpp"

namespace mortarfem {

enum class DofClass { interior, dirichlet, master, slave };

/// Global numbering over all subdomain nodes (subdomains concatenated) and
/// the disjoint classification that drives constraint elimination.
/// Dirichlet nodes are exactly the nodes on the outer boundary; slaves are
/// the interior nonmortar trace nodes of each interface; masters are the
/// remaining interface nodes (mortar traces and nonmortar endpoints).
struct DofMap {
  std::vector<int> offsets; // size subdomains+1, offsets.back() == full_count
  std::vector<DofClass> cls;
  std::vector<int> full_to_reduced; // -1 for dirichlet and slave dofs
  std::vector<int> reduced_to_full;

  int full_count() const { return static_cast<int>(cls.size()); }
  int reduced_count() const { return static_cast<int>(reduced_to_full.size()); }
  int global_id(int subdomain, int local) const { return offsets[subdomain] + local; }
  bool is_free(int full) const { return full_to_reduced[full] >= 0; }
};

inline DofMap build_dof_map(const Partition& partition,
                            const std::vector<SubdomainMesh>& meshes,
                            const std::vector<InterfaceSegment>& interfaces) {
  DofMap dm;
  dm.offsets.resize(meshes.size() + 1, 0);
  for (std::size_t s = 0; s < meshes.size(); ++s)
    dm.offsets[s + 1] = dm.offsets[s] + meshes[s].node_count();
  dm.cls.assign(dm.offsets.back(), DofClass::interior);

  // outer-boundary nodes; only subdomain-boundary nodes can qualify
  const double probe = boundary_probe(meshes);
  for (std::size_t s = 0; s < meshes.size(); ++s) {
    const SubdomainMesh& m = meshes[s];
    for (int iy = 0; iy < m.nodes_y(); ++iy) {
      for (int ix = 0; ix < m.nodes_x(); ++ix) {
        const bool edge = ix == 0 || ix == m.nodes_x() - 1 || iy == 0 || iy == m.nodes_y() - 1;
        if (!edge) continue;
        if (partition.on_domain_boundary(m.x_coords[ix], m.y_coords[iy], probe))
          dm.cls[dm.global_id(static_cast<int>(s), m.node_id(ix, iy))] = DofClass::dirichlet;
      }
    }
  }

  for (const InterfaceSegment& seg : interfaces) {
    for (const int local : seg.mortar.edge_nodes) {
      const int g = dm.global_id(seg.mortar.subdomain, local);
      if (dm.cls[g] == DofClass::interior) dm.cls[g] = DofClass::master;
    }
    const std::vector<int>& nm = seg.nonmortar.edge_nodes;
    for (const int local : {nm.front(), nm.back()}) {
      const int g = dm.global_id(seg.nonmortar.subdomain, local);
      if (dm.cls[g] == DofClass::interior) dm.cls[g] = DofClass::master;
    }
    for (std::size_t t = 1; t + 1 < nm.size(); ++t) {
      const int g = dm.global_id(seg.nonmortar.subdomain, nm[t]);
      if (dm.cls[g] != DofClass::interior)
        throw ValidationError(
            "build_dof_map: interior nonmortar trace node already classified; "
            "partition topology is not supported");
      dm.cls[g] = DofClass::slave;
    }
  }

  dm.full_to_reduced.assign(dm.full_count(), -1);
  for (int g = 0; g < dm.full_count(); ++g) {
    if (dm.cls[g] == DofClass::interior || dm.cls[g] == DofClass::master) {
      dm.full_to_reduced[g] = static_cast<int>(dm.reduced_to_full.size());
      dm.reduced_to_full.push_back(g);
    }
  }
  return dm;
}

} // namespace mortarfem
