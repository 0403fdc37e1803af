#pragma once

#include <map>
#include <vector>

#include "mortarfem/assembly.hpp"
#include "mortarfem/dof_map.hpp"
#include "mortarfem/geometry.hpp"
#include "mortarfem/mortar.hpp"
#include "mortarfem/sparse.hpp"

namespace mortarfem {

/// Fully assembled constrained discretization: meshes, interface couplings,
/// prolongation, and the reduced mass / stiffness matrices.
struct MortarSystem {
  Partition partition;
  std::vector<SubdomainMesh> meshes;
  std::vector<InterfaceSegment> interfaces;
  std::vector<CouplingMap> couplings;
  std::vector<double> alpha;
  DofMap dofmap;
  Eigen::SparseMatrix<double> prolongation;
  SparseSymMatrix mass_full, stiffness_full;
  SparseSymMatrix mass, stiffness; // reduced

  Eigen::VectorXd prolong(const Eigen::VectorXd& reduced) const {
    return prolongation * reduced;
  }
  Eigen::VectorXd restrict_load(const Eigen::VectorXd& full) const {
    return prolongation.transpose() * full;
  }
};

inline MortarSystem build_mortar_system(Partition partition,
                                        std::vector<SubdomainMesh> meshes,
                                        std::vector<double> alpha,
                                        const std::map<int, int>& mortar_overrides = {}) {
  MortarSystem sys;
  sys.partition = std::move(partition);
  sys.meshes = std::move(meshes);
  sys.alpha = std::move(alpha);
  sys.interfaces = extract_interfaces(sys.partition, sys.meshes, mortar_overrides);
  sys.couplings.reserve(sys.interfaces.size());
  for (const InterfaceSegment& seg : sys.interfaces)
    sys.couplings.push_back(build_coupling(seg));
  sys.dofmap = build_dof_map(sys.partition, sys.meshes, sys.interfaces);
  sys.prolongation = build_prolongation(sys.dofmap, sys.interfaces, sys.couplings);
  auto [m, a] = assemble_unconstrained(sys.meshes, sys.dofmap, sys.alpha);
  sys.mass_full = std::move(m);
  sys.stiffness_full = std::move(a);
  sys.mass = reduce(sys.mass_full, sys.prolongation);
  sys.stiffness = reduce(sys.stiffness_full, sys.prolongation);
  return sys;
}

} // namespace mortarfem
