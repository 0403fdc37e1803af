#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "mortarfem/assembly.hpp"
#include "mortarfem/dof_map.hpp"
#include "mortarfem/geometry.hpp"
#include "mortarfem/reference_element.hpp"

namespace mortarfem {

/// L2 and broken H1 error of a finite element function (full coefficients)
/// against an exact field, integrated cell by cell with a (degree+3)^2
/// Gauss rule. The broken H1 norm sums full per-subdomain H1 norms, so it
/// dominates the L2 norm by construction.
struct ErrorNorms {
  double l2 = 0.0;
  double broken_h1 = 0.0;
};

inline ErrorNorms error_norms(const std::vector<SubdomainMesh>& meshes, const DofMap& dm,
                              const Eigen::VectorXd& coeffs_full, const ScalarField& u,
                              const ScalarField& ux, const ScalarField& uy, double t) {
  double l2 = 0.0, h1 = 0.0;
  for (std::size_t s = 0; s < meshes.size(); ++s) {
    const SubdomainMesh& mesh = meshes[s];
    const ReferenceElement elem(mesh.degree);
    const QuadratureRule rule = gauss_legendre(mesh.degree + 3);
    const ShapeTable tab = elem.tabulate(rule.points);
    const int k = mesh.degree;
    const double hx = mesh.cell_hx(), hy = mesh.cell_hy();
    const double jac = 0.25 * hx * hy;
    for (int cy = 0; cy < mesh.ny; ++cy) {
      for (int cx = 0; cx < mesh.nx; ++cx) {
        const std::vector<int> ids = mesh.cell_nodes(cx, cy);
        const double x0 = mesh.x_breaks[cx], y0 = mesh.y_breaks[cy];
        for (int qy = 0; qy < rule.size(); ++qy) {
          const double py = y0 + 0.5 * (rule.points[qy] + 1.0) * hy;
          for (int qx = 0; qx < rule.size(); ++qx) {
            const double px = x0 + 0.5 * (rule.points[qx] + 1.0) * hx;
            double vh = 0.0, gxh = 0.0, gyh = 0.0;
            for (int b = 0; b <= k; ++b) {
              for (int a = 0; a <= k; ++a) {
                const double c = coeffs_full(dm.global_id(static_cast<int>(s), ids[b * (k + 1) + a]));
                vh += c * tab.value[qx][a] * tab.value[qy][b];
                gxh += c * tab.deriv[qx][a] * (2.0 / hx) * tab.value[qy][b];
                gyh += c * tab.value[qx][a] * tab.deriv[qy][b] * (2.0 / hy);
              }
            }
            const double w = rule.weights[qx] * rule.weights[qy] * jac;
            const double ev = vh - u(px, py, t);
            const double ex = gxh - ux(px, py, t);
            const double ey = gyh - uy(px, py, t);
            l2 += w * ev * ev;
            h1 += w * (ev * ev + ex * ex + ey * ey);
          }
        }
      }
    }
  }
  ErrorNorms out;
  out.l2 = std::sqrt(l2);
  out.broken_h1 = std::sqrt(h1);
  return out;
}

/// L2 norm of an arbitrary field over the meshed domain, same rule choice.
inline double field_l2_norm(const std::vector<SubdomainMesh>& meshes, const ScalarField& f,
                            double t, int extra_order = 3) {
  double acc = 0.0;
  for (const SubdomainMesh& mesh : meshes) {
    const QuadratureRule rule = gauss_legendre(mesh.degree + extra_order);
    const double hx = mesh.cell_hx(), hy = mesh.cell_hy();
    const double jac = 0.25 * hx * hy;
    for (int cy = 0; cy < mesh.ny; ++cy) {
      for (int cx = 0; cx < mesh.nx; ++cx) {
        const double x0 = mesh.x_breaks[cx], y0 = mesh.y_breaks[cy];
        for (int qy = 0; qy < rule.size(); ++qy) {
          const double py = y0 + 0.5 * (rule.points[qy] + 1.0) * hy;
          for (int qx = 0; qx < rule.size(); ++qx) {
            const double px = x0 + 0.5 * (rule.points[qx] + 1.0) * hx;
            const double v = f(px, py, t);
            acc += rule.weights[qx] * rule.weights[qy] * jac * v * v;
          }
        }
      }
    }
  }
  return std::sqrt(acc);
}

/// Load vector of a field against the full broken basis with a
/// (degree+3)^2 rule, for projection right-hand sides.
inline Eigen::VectorXd assemble_load_fine(const std::vector<SubdomainMesh>& meshes,
                                          const DofMap& dm, const ScalarField& f, double t) {
  Eigen::VectorXd load = Eigen::VectorXd::Zero(dm.full_count());
  for (std::size_t s = 0; s < meshes.size(); ++s) {
    const SubdomainMesh& mesh = meshes[s];
    const ReferenceElement elem(mesh.degree);
    const QuadratureRule rule = gauss_legendre(mesh.degree + 3);
    const ShapeTable tab = elem.tabulate(rule.points);
    const int k = mesh.degree;
    const double jac = 0.25 * mesh.cell_hx() * mesh.cell_hy();
    for (int cy = 0; cy < mesh.ny; ++cy) {
      for (int cx = 0; cx < mesh.nx; ++cx) {
        const double x0 = mesh.x_breaks[cx], y0 = mesh.y_breaks[cy];
        const std::vector<int> ids = mesh.cell_nodes(cx, cy);
        for (int qy = 0; qy < rule.size(); ++qy) {
          const double py = y0 + 0.5 * (rule.points[qy] + 1.0) * mesh.cell_hy();
          for (int qx = 0; qx < rule.size(); ++qx) {
            const double px = x0 + 0.5 * (rule.points[qx] + 1.0) * mesh.cell_hx();
            const double w = rule.weights[qx] * rule.weights[qy] * jac * f(px, py, t);
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

/// Pairing of the stiffness form with an exact gradient field:
/// out_i = sum over cells of alpha * grad(u) . grad(phi_i).
inline Eigen::VectorXd assemble_stiffness_pairing(const std::vector<SubdomainMesh>& meshes,
                                                  const DofMap& dm,
                                                  const std::vector<double>& alpha,
                                                  const GradientField& grad, double t) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dm.full_count());
  for (std::size_t s = 0; s < meshes.size(); ++s) {
    const SubdomainMesh& mesh = meshes[s];
    const ReferenceElement elem(mesh.degree);
    const QuadratureRule rule = gauss_legendre(mesh.degree + 2);
    const ShapeTable tab = elem.tabulate(rule.points);
    const int k = mesh.degree;
    const double hx = mesh.cell_hx(), hy = mesh.cell_hy();
    const double jac = 0.25 * hx * hy;
    const double a = alpha[s];
    for (int cy = 0; cy < mesh.ny; ++cy) {
      for (int cx = 0; cx < mesh.nx; ++cx) {
        const double x0 = mesh.x_breaks[cx], y0 = mesh.y_breaks[cy];
        const std::vector<int> ids = mesh.cell_nodes(cx, cy);
        for (int qy = 0; qy < rule.size(); ++qy) {
          const double py = y0 + 0.5 * (rule.points[qy] + 1.0) * hy;
          for (int qx = 0; qx < rule.size(); ++qx) {
            const double px = x0 + 0.5 * (rule.points[qx] + 1.0) * hx;
            const auto [gx, gy] = grad(px, py, t);
            const double w = rule.weights[qx] * rule.weights[qy] * jac * a;
            for (int b = 0; b <= k; ++b) {
              for (int ai = 0; ai <= k; ++ai) {
                const double px_i = tab.deriv[qx][ai] * (2.0 / hx) * tab.value[qy][b];
                const double py_i = tab.value[qx][ai] * tab.deriv[qy][b] * (2.0 / hy);
                out(dm.global_id(static_cast<int>(s), ids[b * (k + 1) + ai])) +=
                    w * (gx * px_i + gy * py_i);
              }
            }
          }
        }
      }
    }
  }
  return out;
}

} // namespace mortarfem
