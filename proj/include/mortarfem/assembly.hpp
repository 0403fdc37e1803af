#pragma once

#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "mortarfem/dof_map.hpp"
#include "mortarfem/local_assembly.hpp"
#include "mortarfem/sparse.hpp"
#include "mortarfem/trace_space.hpp"

namespace mortarfem {

/// Gradient field (ux, uy)(x, y, t), used for interface flux data.
using GradientField = std::function<std::pair<double, double>(double, double, double)>;

/// Scalar field that may differ by subdomain: f(s, x, y, t). Sources of
/// problems with piecewise-constant diffusion live here.
using SubdomainField = std::function<double(int, double, double, double)>;

/// Block-diagonal mass and stiffness matrices over all subdomain nodes,
/// with per-subdomain constant diffusion coefficients. Uniform cells within
/// a subdomain share one local matrix pair.
inline std::pair<SparseSymMatrix, SparseSymMatrix> assemble_unconstrained(
    const std::vector<SubdomainMesh>& meshes, const DofMap& dm,
    const std::vector<double>& alpha) {
  if (alpha.size() != meshes.size())
    throw ValidationError("assemble_unconstrained: alpha list length must equal "
                          "subdomain count");
  for (double a : alpha)
    if (!(a > 0.0))
      throw ValidationError("assemble_unconstrained: alpha must be positive");
  std::vector<Eigen::Triplet<double>> mt, at;
  for (std::size_t s = 0; s < meshes.size(); ++s) {
    const SubdomainMesh& mesh = meshes[s];
    const ReferenceElement elem(mesh.degree);
    const LocalMatrices loc = local_matrices(elem, mesh.x_breaks[0], mesh.x_breaks[1],
                                             mesh.y_breaks[0], mesh.y_breaks[1], alpha[s]);
    const int nloc = elem.node_count();
    for (int cy = 0; cy < mesh.ny; ++cy) {
      for (int cx = 0; cx < mesh.nx; ++cx) {
        const std::vector<int> ids = mesh.cell_nodes(cx, cy);
        for (int i = 0; i < nloc; ++i) {
          const int gi = dm.global_id(static_cast<int>(s), ids[i]);
          for (int j = 0; j < nloc; ++j) {
            const int gj = dm.global_id(static_cast<int>(s), ids[j]);
            mt.emplace_back(gi, gj, loc.mass(i, j));
            at.emplace_back(gi, gj, loc.stiffness(i, j));
          }
        }
      }
    }
  }
  return {SparseSymMatrix::from_triplets(dm.full_count(), mt),
          SparseSymMatrix::from_triplets(dm.full_count(), at)};
}

/// Volume load vector over all subdomain nodes at time t.
inline Eigen::VectorXd assemble_load(const std::vector<SubdomainMesh>& meshes,
                                     const DofMap& dm, const SubdomainField& f, double t) {
  Eigen::VectorXd load = Eigen::VectorXd::Zero(dm.full_count());
  for (std::size_t s = 0; s < meshes.size(); ++s) {
    const SubdomainMesh& mesh = meshes[s];
    const ReferenceElement elem(mesh.degree);
    const QuadratureRule rule = gauss_legendre(mesh.degree + 2);
    const ShapeTable tab = elem.tabulate(rule.points);
    const int k = mesh.degree;
    const double jac = 0.25 * mesh.cell_hx() * mesh.cell_hy();
    for (int cy = 0; cy < mesh.ny; ++cy) {
      for (int cx = 0; cx < mesh.nx; ++cx) {
        const double x0 = mesh.x_breaks[cx], x1 = mesh.x_breaks[cx + 1];
        const double y0 = mesh.y_breaks[cy], y1 = mesh.y_breaks[cy + 1];
        const std::vector<int> ids = mesh.cell_nodes(cx, cy);
        for (int qy = 0; qy < rule.size(); ++qy) {
          const double py = y0 + 0.5 * (rule.points[qy] + 1.0) * (y1 - y0);
          for (int qx = 0; qx < rule.size(); ++qx) {
            const double px = x0 + 0.5 * (rule.points[qx] + 1.0) * (x1 - x0);
            const double w = rule.weights[qx] * rule.weights[qy] * jac *
                             f(static_cast<int>(s), px, py, t);
            for (int b = 0; b <= k; ++b)
              for (int a = 0; a <= k; ++a)
                load(dm.global_id(static_cast<int>(s), ids[b * (k + 1) + a])) +=
                    w * tab.value[qx][a] * tab.value[qy][b];
          }
        }
      }
    }
  }
  return load;
}

inline Eigen::VectorXd assemble_load(const std::vector<SubdomainMesh>& meshes,
                                     const DofMap& dm, const ScalarField& f, double t) {
  return assemble_load(
      meshes, dm, [&f](int, double x, double y, double tt) { return f(x, y, tt); }, t);
}

/// Add the two-sided interface flux terms to a load vector: for each
/// interface and each side, the side's diffusion coefficient times the
/// normal derivative of the given field, integrated against that side's
/// edge basis on the merged-breakpoint rule. This makes manufactured
/// problems with interface flux jumps exactly consistent.
inline void add_interface_flux_load(Eigen::VectorXd& load, const DofMap& dm,
                                    const std::vector<InterfaceSegment>& interfaces,
                                    const std::vector<double>& alpha,
                                    const GradientField& grad, double t) {
  for (const InterfaceSegment& seg : interfaces) {
    const int order = std::max(seg.mortar.degree, seg.nonmortar.degree) + 2;
    const CompositeRule rule =
        interface_quadrature(seg.mortar.breakpoints, seg.nonmortar.breakpoints, order);
    for (const InterfaceSide* side : {&seg.mortar, &seg.nonmortar}) {
      const IntervalSpace tspace = trace_space(side->breakpoints, side->degree);
      const double a = alpha[side->subdomain];
      for (int q = 0; q < rule.size(); ++q) {
        const double tau = rule.points[q];
        const double px = seg.axis == 0 ? seg.coord : tau;
        const double py = seg.axis == 0 ? tau : seg.coord;
        const auto [ux, uy] = grad(px, py, t);
        const double flux = a * (ux * side->normal_x + uy * side->normal_y);
        const double w = rule.weights[q] * flux;
        const int iv = tspace.find_interval(tau);
        const std::vector<int>& ids = tspace.interval_ids(iv);
        for (std::size_t p = 0; p < ids.size(); ++p) {
          const int g = dm.global_id(side->subdomain, side->edge_nodes[ids[p]]);
          load(g) += w * lagrange_value(tspace.interval_coords(iv), static_cast<int>(p), tau);
        }
      }
    }
  }
}

/// Nodal interpolant of a field at time t over all subdomain nodes.
inline Eigen::VectorXd interpolate(const std::vector<SubdomainMesh>& meshes, const DofMap& dm,
                                   const ScalarField& u, double t) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(dm.full_count());
  for (std::size_t s = 0; s < meshes.size(); ++s) {
    const SubdomainMesh& mesh = meshes[s];
    for (int iy = 0; iy < mesh.nodes_y(); ++iy)
      for (int ix = 0; ix < mesh.nodes_x(); ++ix)
        v(dm.global_id(static_cast<int>(s), mesh.node_id(ix, iy))) =
            u(mesh.x_coords[ix], mesh.y_coords[iy], t);
  }
  return v;
}

} // namespace mortarfem
