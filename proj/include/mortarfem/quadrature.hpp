#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "mortarfem/errors.hpp"

namespace mortarfem {

/// Quadrature rule on the reference interval [-1, 1].
struct QuadratureRule {
  std::vector<double> points;
  std::vector<double> weights;

  int size() const { return static_cast<int>(points.size()); }
};

namespace detail {

/// Legendre polynomial P_n and its derivative at x, by three-term recurrence.
inline void legendre(int n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  if (n == 0) {
    p = p0;
    dp = 0.0;
    return;
  }
  for (int j = 2; j <= n; ++j) {
    const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  // (1-x^2) P_n' = n (P_{n-1} - x P_n); endpoints never queried by Newton here
  dp = n * (p0 - x * p1) / (1.0 - x * x);
}

} // namespace detail

/// n-point Gauss-Legendre rule, exact for polynomials of degree 2n-1.
/// Nodes are Newton-refined Legendre roots; symmetric to the last bit.
inline QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw ValidationError("gauss_legendre: point count must be >= 1");
  QuadratureRule rule;
  rule.points.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double p = 0.0, dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      detail::legendre(n, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    detail::legendre(n, x, p, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.points[i] = -x;
    rule.points[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.points[n / 2] = 0.0;
  return rule;
}

/// Gauss-Lobatto nodes (not weights) on [-1, 1]: endpoints plus the roots of
/// P_{n-1}'. Used for element node placement, n >= 2.
inline std::vector<double> gauss_lobatto_nodes(int n) {
  if (n < 2) throw ValidationError("gauss_lobatto_nodes: need at least 2 nodes");
  std::vector<double> nodes(n);
  nodes.front() = -1.0;
  nodes.back() = 1.0;
  const int m = n - 1; // interior nodes are roots of P_m'
  for (int i = 1; i < m; ++i) {
    // interior roots of P_m', bracketed by Chebyshev-like initial guesses
    double x = std::cos(M_PI * i / m);
    for (int it = 0; it < 100; ++it) {
      double p, dp;
      detail::legendre(m, x, p, dp);
      // P_m'' from the Legendre ODE
      const double ddp = (2.0 * x * dp - m * (m + 1.0) * p) / (1.0 - x * x);
      const double dx = dp / ddp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[m - i] = x;
  }
  // enforce exact symmetry
  for (int i = 0; i < n / 2; ++i) {
    const double s = 0.5 * (nodes[n - 1 - i] - nodes[i]);
    nodes[i] = -s;
    nodes[n - 1 - i] = s;
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;
  std::sort(nodes.begin(), nodes.end());
  return nodes;
}

/// Composite Gauss rule on an interval mesh. Points live in physical
/// coordinates; exact for piecewise polynomials of degree 2*order-1 whose
/// breakpoints are a subset of the mesh.
struct CompositeRule {
  std::vector<double> points;
  std::vector<double> weights;

  int size() const { return static_cast<int>(points.size()); }
};

inline CompositeRule composite_gauss(const std::vector<double>& breakpoints, int order) {
  if (breakpoints.size() < 2)
    throw ValidationError("composite_gauss: need at least one subinterval");
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
    if (!(breakpoints[i] < breakpoints[i + 1]))
      throw ValidationError("composite_gauss: breakpoints must be strictly increasing");
  const QuadratureRule base = gauss_legendre(order);
  CompositeRule rule;
  rule.points.reserve((breakpoints.size() - 1) * order);
  rule.weights.reserve((breakpoints.size() - 1) * order);
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const double a = breakpoints[i], b = breakpoints[i + 1];
    const double mid = 0.5 * (a + b), hal = 0.5 * (b - a);
    for (int q = 0; q < base.size(); ++q) {
      rule.points.push_back(mid + hal * base.points[q]);
      rule.weights.push_back(hal * base.weights[q]);
    }
  }
  return rule;
}

/// Sorted union of two breakpoint sets covering the same extent.
/// Duplicates within a relative tolerance of the extent collapse to the
/// value from the first set.
inline std::vector<double> merge_breakpoints(const std::vector<double>& a,
                                             const std::vector<double>& b) {
  if (a.size() < 2 || b.size() < 2)
    throw ValidationError("merge_breakpoints: each mesh needs at least one subinterval");
  const double len = a.back() - a.front();
  const double tol = 1e-12 * std::max(1.0, std::abs(len));
  if (std::abs(a.front() - b.front()) > tol || std::abs(a.back() - b.back()) > tol)
    throw ValidationError("merge_breakpoints: meshes cover different extents");
  std::vector<double> merged;
  merged.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i] <= b[j] + tol)) {
      if (i < a.size() && j < b.size() && std::abs(a[i] - b[j]) <= tol) ++j;
      merged.push_back(a[i++]);
    } else {
      merged.push_back(b[j++]);
    }
  }
  return merged;
}

/// Merged-mesh composite rule for integrals of products of functions living
/// on two different interval meshes over a shared interface.
inline CompositeRule interface_quadrature(const std::vector<double>& mortar_breaks,
                                          const std::vector<double>& nonmortar_breaks,
                                          int order) {
  return composite_gauss(merge_breakpoints(mortar_breaks, nonmortar_breaks), order);
}

} // namespace mortarfem
