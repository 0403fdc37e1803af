#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "mortarfem/geometry.hpp"
#include "mortarfem/reference_element.hpp"

namespace mortarfem {

struct LocalMatrices {
  Eigen::MatrixXd mass;
  Eigen::MatrixXd stiffness;
};

/// Scalar diffusion coefficient sampled at a physical point. Constant
/// per-subdomain coefficients wrap trivially.
using CoefficientField = std::function<double(double, double)>;

/// Time-dependent scalar field f(x, y, t).
using ScalarField = std::function<double(double, double, double)>;

/// Mass and stiffness matrices of one rectangular cell [x0,x1] x [y0,y1],
/// integrated with a (degree+2)^2 Gauss rule: exact for the constant-alpha
/// integrands with two points to spare.
inline LocalMatrices local_matrices(const ReferenceElement& elem, double x0, double x1,
                                    double y0, double y1, const CoefficientField& alpha) {
  const int k = elem.degree();
  const int n1 = k + 1;
  const int n = n1 * n1;
  const double hx = x1 - x0, hy = y1 - y0;
  if (!(hx > 0.0) || !(hy > 0.0))
    throw ValidationError("local_matrices: cell has nonpositive extent");
  const QuadratureRule rule = gauss_legendre(k + 2);
  const ShapeTable tab = elem.tabulate(rule.points);
  LocalMatrices out;
  out.mass = Eigen::MatrixXd::Zero(n, n);
  out.stiffness = Eigen::MatrixXd::Zero(n, n);
  const double jac = 0.25 * hx * hy;
  for (int qy = 0; qy < rule.size(); ++qy) {
    const double py = y0 + 0.5 * (rule.points[qy] + 1.0) * hy;
    for (int qx = 0; qx < rule.size(); ++qx) {
      const double px = x0 + 0.5 * (rule.points[qx] + 1.0) * hx;
      const double w = rule.weights[qx] * rule.weights[qy] * jac;
      const double a = alpha(px, py);
      for (int bi = 0; bi <= k; ++bi) {
        for (int ai = 0; ai <= k; ++ai) {
          const int i = bi * n1 + ai;
          const double vi = tab.value[qx][ai] * tab.value[qy][bi];
          const double gx_i = tab.deriv[qx][ai] * (2.0 / hx) * tab.value[qy][bi];
          const double gy_i = tab.value[qx][ai] * tab.deriv[qy][bi] * (2.0 / hy);
          for (int bj = 0; bj <= k; ++bj) {
            for (int aj = 0; aj <= k; ++aj) {
              const int j = bj * n1 + aj;
              const double vj = tab.value[qx][aj] * tab.value[qy][bj];
              const double gx_j = tab.deriv[qx][aj] * (2.0 / hx) * tab.value[qy][bj];
              const double gy_j = tab.value[qx][aj] * tab.deriv[qy][bj] * (2.0 / hy);
              out.mass(i, j) += w * vi * vj;
              out.stiffness(i, j) += w * a * (gx_i * gx_j + gy_i * gy_j);
            }
          }
        }
      }
    }
  }
  return out;
}

inline LocalMatrices local_matrices(const ReferenceElement& elem, double x0, double x1,
                                    double y0, double y1, double alpha) {
  if (!(alpha > 0.0)) throw ValidationError("local_matrices: alpha must be positive");
  return local_matrices(elem, x0, x1, y0, y1,
                        [alpha](double, double) { return alpha; });
}

/// Cell load vector for a source field evaluated at time t, with the same
/// (degree+2)^2 Gauss rule.
inline Eigen::VectorXd local_load(const ReferenceElement& elem, double x0, double x1,
                                  double y0, double y1, const ScalarField& f, double t) {
  const int k = elem.degree();
  const int n1 = k + 1;
  const double hx = x1 - x0, hy = y1 - y0;
  const QuadratureRule rule = gauss_legendre(k + 2);
  const ShapeTable tab = elem.tabulate(rule.points);
  Eigen::VectorXd load = Eigen::VectorXd::Zero(n1 * n1);
  const double jac = 0.25 * hx * hy;
  for (int qy = 0; qy < rule.size(); ++qy) {
    const double py = y0 + 0.5 * (rule.points[qy] + 1.0) * hy;
    for (int qx = 0; qx < rule.size(); ++qx) {
      const double px = x0 + 0.5 * (rule.points[qx] + 1.0) * hx;
      const double w = rule.weights[qx] * rule.weights[qy] * jac * f(px, py, t);
      for (int bi = 0; bi <= k; ++bi)
        for (int ai = 0; ai <= k; ++ai)
          load(bi * n1 + ai) += w * tab.value[qx][ai] * tab.value[qy][bi];
    }
  }
  return load;
}

} // namespace mortarfem
