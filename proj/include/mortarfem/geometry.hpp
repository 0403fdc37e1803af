#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "mortarfem/errors.hpp"
#include "mortarfem/quadrature.hpp"

namespace mortarfem {

/// Axis-aligned rectangle.
struct Rect {
  double xmin = 0.0, ymin = 0.0, xmax = 0.0, ymax = 0.0;

  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  double area() const { return width() * height(); }

  bool contains(double x, double y, double tol) const {
    return x >= xmin - tol && x <= xmax + tol && y >= ymin - tol && y <= ymax + tol;
  }
};

/// Shared full edge between two subdomains, found during partition
/// validation. `lower` is the subdomain on the smaller-coordinate side of
/// the interface line.
struct InterfacePair {
  int lower = -1, upper = -1;
  int axis = 0;      // 0: vertical line x = coord, 1: horizontal line y = coord
  double coord = 0.0;
  double lo = 0.0, hi = 0.0; // extent along the interface
};

/// Non-overlapping rectangular decomposition of a polygonal domain.
/// Interfaces are full edges of both adjacent subdomains; rectangles may
/// also touch at isolated vertices.
struct Partition {
  std::vector<Rect> subdomains;
  std::vector<InterfacePair> interface_pairs;
  double domain_area = 0.0;

  int count() const { return static_cast<int>(subdomains.size()); }

  /// Diagonal-probe test: a point lies on the domain boundary exactly when
  /// some small diagonal offset of it escapes every subdomain.
  bool on_domain_boundary(double x, double y, double probe) const {
    const double tol = 1e-12 * probe;
    for (const double sx : {-1.0, 1.0}) {
      for (const double sy : {-1.0, 1.0}) {
        const double px = x + sx * probe, py = y + sy * probe;
        bool covered = false;
        for (const Rect& r : subdomains) {
          if (r.contains(px, py, tol)) {
            covered = true;
            break;
          }
        }
        if (!covered) return true;
      }
    }
    return false;
  }
};

/// Validate a rectangle list and detect all interfaces.
/// Rejects overlapping interiors and partially shared edges.
inline Partition build_partition(const std::vector<Rect>& rects) {
  if (rects.empty()) throw ValidationError("build_partition: no subdomains given");
  double extent = 0.0;
  for (std::size_t i = 0; i < rects.size(); ++i) {
    const Rect& r = rects[i];
    if (!(r.width() > 0.0) || !(r.height() > 0.0))
      throw ValidationError("build_partition: subdomain " + std::to_string(i) +
                            " has nonpositive extent");
    extent = std::max({extent, std::abs(r.xmin), std::abs(r.xmax), std::abs(r.ymin),
                       std::abs(r.ymax), r.width(), r.height()});
  }
  const double tol = 1e-12 * extent;

  Partition part;
  part.subdomains = rects;
  for (const Rect& r : rects) part.domain_area += r.area();

  for (std::size_t i = 0; i < rects.size(); ++i) {
    for (std::size_t j = i + 1; j < rects.size(); ++j) {
      const Rect& a = rects[i];
      const Rect& b = rects[j];
      const double ox = std::min(a.xmax, b.xmax) - std::max(a.xmin, b.xmin);
      const double oy = std::min(a.ymax, b.ymax) - std::max(a.ymin, b.ymin);
      if (ox > tol && oy > tol)
        throw ValidationError("build_partition: subdomains " + std::to_string(i) + " and " +
                              std::to_string(j) + " overlap");
      const bool touch_x = std::abs(a.xmax - b.xmin) <= tol || std::abs(b.xmax - a.xmin) <= tol;
      const bool touch_y = std::abs(a.ymax - b.ymin) <= tol || std::abs(b.ymax - a.ymin) <= tol;
      if (touch_x && oy > tol) {
        // vertical interface candidate; must be a full edge of both
        if (std::abs(a.ymin - b.ymin) > tol || std::abs(a.ymax - b.ymax) > tol)
          throw ValidationError("build_partition: subdomains " + std::to_string(i) + " and " +
                                std::to_string(j) +
                                " share a partial vertical edge; interfaces must be full edges");
        InterfacePair p;
        const bool a_left = std::abs(a.xmax - b.xmin) <= tol;
        p.lower = a_left ? static_cast<int>(i) : static_cast<int>(j);
        p.upper = a_left ? static_cast<int>(j) : static_cast<int>(i);
        p.axis = 0;
        p.coord = a_left ? a.xmax : b.xmax;
        p.lo = a.ymin;
        p.hi = a.ymax;
        part.interface_pairs.push_back(p);
      } else if (touch_y && ox > tol) {
        if (std::abs(a.xmin - b.xmin) > tol || std::abs(a.xmax - b.xmax) > tol)
          throw ValidationError("build_partition: subdomains " + std::to_string(i) + " and " +
                                std::to_string(j) +
                                " share a partial horizontal edge; interfaces must be full edges");
        InterfacePair p;
        const bool a_below = std::abs(a.ymax - b.ymin) <= tol;
        p.lower = a_below ? static_cast<int>(i) : static_cast<int>(j);
        p.upper = a_below ? static_cast<int>(j) : static_cast<int>(i);
        p.axis = 1;
        p.coord = a_below ? a.ymax : b.ymax;
        p.lo = a.xmin;
        p.hi = a.xmax;
        part.interface_pairs.push_back(p);
      }
    }
  }
  return part;
}

/// L-shaped domain [-1,1]^2 minus the open first-quadrant square, split into
/// three unit squares. Interfaces: [-1,0] x {0} and {0} x [-1,0].
inline Partition lshape_partition() {
  return build_partition({
      {-1.0, 0.0, 0.0, 1.0},
      {-1.0, -1.0, 0.0, 0.0},
      {0.0, -1.0, 1.0, 0.0},
  });
}

/// Unit square split into two half-width subdomains at x = 1/2.
inline Partition unit_square_2x1_partition() {
  return build_partition({
      {0.0, 0.0, 0.5, 1.0},
      {0.5, 0.0, 1.0, 1.0},
  });
}

inline Partition partition_preset(const std::string& name) {
  if (name == "lshape") return lshape_partition();
  if (name == "unit-square-2x1") return unit_square_2x1_partition();
  throw ValidationError("partition_preset: unknown preset '" + name + "'");
}

/// Structured tensor-product mesh of one subdomain: nx-by-ny uniform cells,
/// Lagrange degree k per direction, nodes at mapped Gauss-Lobatto points.
/// Node (ix, iy) has id iy * (nx*k + 1) + ix, x running fastest.
struct SubdomainMesh {
  int subdomain = -1;
  Rect rect;
  int nx = 0, ny = 0, degree = 1;
  std::vector<double> x_breaks, y_breaks; // cell boundaries, sizes nx+1, ny+1
  std::vector<double> x_coords, y_coords; // 1d node coordinates, sizes nx*k+1, ny*k+1

  int nodes_x() const { return nx * degree + 1; }
  int nodes_y() const { return ny * degree + 1; }
  int node_count() const { return nodes_x() * nodes_y(); }
  int cell_count() const { return nx * ny; }

  int node_id(int ix, int iy) const { return iy * nodes_x() + ix; }

  double cell_hx() const { return rect.width() / nx; }
  double cell_hy() const { return rect.height() / ny; }
  double max_cell_size() const { return std::max(cell_hx(), cell_hy()); }

  /// Global node ids of cell (cx, cy) in lexicographic local order,
  /// matching the reference element layout.
  std::vector<int> cell_nodes(int cx, int cy) const {
    std::vector<int> ids;
    ids.reserve((degree + 1) * (degree + 1));
    for (int b = 0; b <= degree; ++b)
      for (int a = 0; a <= degree; ++a)
        ids.push_back(node_id(cx * degree + a, cy * degree + b));
    return ids;
  }
};

namespace detail {

inline void fill_axis(double lo, double hi, int n, int degree,
                      const std::vector<double>& ref_nodes, std::vector<double>& breaks,
                      std::vector<double>& coords) {
  const double h = (hi - lo) / n;
  breaks.resize(n + 1);
  for (int c = 0; c <= n; ++c) breaks[c] = lo + c * h;
  breaks[n] = hi;
  coords.assign(n * degree + 1, 0.0);
  for (int c = 0; c < n; ++c) {
    const double a = breaks[c], b = breaks[c + 1];
    for (int i = 0; i < degree; ++i)
      coords[c * degree + i] = a + 0.5 * (ref_nodes[i] + 1.0) * (b - a);
    coords[c * degree] = a; // exact cell boundary
  }
  coords[n * degree] = hi;
}

} // namespace detail

inline SubdomainMesh build_subdomain_mesh(const Rect& rect, int subdomain, int nx, int ny,
                                          int degree) {
  if (nx < 1 || ny < 1)
    throw ValidationError("build_subdomain_mesh: cell counts must be >= 1");
  if (degree < 1) throw ValidationError("build_subdomain_mesh: degree must be >= 1");
  if (!(rect.width() > 0.0) || !(rect.height() > 0.0))
    throw ValidationError("build_subdomain_mesh: rectangle has nonpositive extent");
  SubdomainMesh mesh;
  mesh.subdomain = subdomain;
  mesh.rect = rect;
  mesh.nx = nx;
  mesh.ny = ny;
  mesh.degree = degree;
  const std::vector<double> ref = gauss_lobatto_nodes(degree + 1);
  detail::fill_axis(rect.xmin, rect.xmax, nx, degree, ref, mesh.x_breaks, mesh.x_coords);
  detail::fill_axis(rect.ymin, rect.ymax, ny, degree, ref, mesh.y_breaks, mesh.y_coords);
  return mesh;
}

/// One side of an interface: the adjacent subdomain's trace mesh and the
/// mesh nodes lying on the interface, ordered along it.
struct InterfaceSide {
  int subdomain = -1;
  int degree = 1;
  std::vector<double> breakpoints; // trace mesh along the interface
  std::vector<int> edge_nodes;     // local node ids within the subdomain mesh
  double normal_x = 0.0, normal_y = 0.0; // outward normal of this subdomain
};

/// Interface with its mortar / nonmortar side designation resolved.
struct InterfaceSegment {
  int id = -1;
  int axis = 0;
  double coord = 0.0, lo = 0.0, hi = 0.0;
  InterfaceSide mortar, nonmortar;

  int nonmortar_subintervals() const {
    return static_cast<int>(nonmortar.breakpoints.size()) - 1;
  }
};

namespace detail {

inline InterfaceSide make_side(const SubdomainMesh& mesh, const InterfacePair& p,
                               bool is_lower) {
  InterfaceSide side;
  side.subdomain = mesh.subdomain;
  side.degree = mesh.degree;
  if (p.axis == 0) {
    side.breakpoints = mesh.y_breaks;
    const int ix = is_lower ? mesh.nx * mesh.degree : 0;
    for (int iy = 0; iy < mesh.nodes_y(); ++iy)
      side.edge_nodes.push_back(mesh.node_id(ix, iy));
    side.normal_x = is_lower ? 1.0 : -1.0;
    side.normal_y = 0.0;
  } else {
    side.breakpoints = mesh.x_breaks;
    const int iy = is_lower ? mesh.ny * mesh.degree : 0;
    for (int ix = 0; ix < mesh.nodes_x(); ++ix)
      side.edge_nodes.push_back(mesh.node_id(ix, iy));
    side.normal_x = 0.0;
    side.normal_y = is_lower ? 1.0 : -1.0;
  }
  return side;
}

} // namespace detail

/// Resolve interface sides for the given meshes. The side with the coarser
/// trace (fewer subintervals) becomes the mortar side; ties go to the lower
/// subdomain index. `mortar_overrides` maps interface id to the subdomain
/// index that should act as mortar instead.
inline std::vector<InterfaceSegment> extract_interfaces(
    const Partition& partition, const std::vector<SubdomainMesh>& meshes,
    const std::map<int, int>& mortar_overrides = {}) {
  if (meshes.size() != partition.subdomains.size())
    throw ValidationError("extract_interfaces: mesh count does not match subdomain count");
  std::vector<InterfaceSegment> out;
  for (std::size_t g = 0; g < partition.interface_pairs.size(); ++g) {
    const InterfacePair& p = partition.interface_pairs[g];
    InterfaceSegment seg;
    seg.id = static_cast<int>(g);
    seg.axis = p.axis;
    seg.coord = p.coord;
    seg.lo = p.lo;
    seg.hi = p.hi;
    InterfaceSide lower = detail::make_side(meshes[p.lower], p, true);
    InterfaceSide upper = detail::make_side(meshes[p.upper], p, false);

    int mortar_sub;
    const auto ov = mortar_overrides.find(seg.id);
    if (ov != mortar_overrides.end()) {
      if (ov->second != p.lower && ov->second != p.upper)
        throw ValidationError("extract_interfaces: mortar override for interface " +
                              std::to_string(seg.id) + " names subdomain " +
                              std::to_string(ov->second) + " which is not adjacent");
      mortar_sub = ov->second;
    } else {
      const std::size_t nl = lower.breakpoints.size(), nu = upper.breakpoints.size();
      if (nl < nu) mortar_sub = p.lower;
      else if (nu < nl) mortar_sub = p.upper;
      else mortar_sub = std::min(p.lower, p.upper);
    }
    if (mortar_sub == p.lower) {
      seg.mortar = std::move(lower);
      seg.nonmortar = std::move(upper);
    } else {
      seg.mortar = std::move(upper);
      seg.nonmortar = std::move(lower);
    }
    if (seg.nonmortar_subintervals() < 2)
      throw ValidationError("extract_interfaces: nonmortar trace on interface " +
                            std::to_string(seg.id) +
                            " needs at least 2 subintervals; refine that subdomain or flip "
                            "the mortar side");
    out.push_back(std::move(seg));
  }
  return out;
}

/// Largest cell size over all subdomain meshes.
inline double mesh_parameter(const std::vector<SubdomainMesh>& meshes) {
  double h = 0.0;
  for (const SubdomainMesh& m : meshes) h = std::max(h, m.max_cell_size());
  return h;
}

/// Probe distance for boundary classification: well below any node spacing.
inline double boundary_probe(const std::vector<SubdomainMesh>& meshes) {
  double min_cell = std::numeric_limits<double>::max();
  for (const SubdomainMesh& m : meshes)
    min_cell = std::min({min_cell, m.cell_hx(), m.cell_hy()});
  return 1e-4 * min_cell;
}

} // namespace mortarfem
