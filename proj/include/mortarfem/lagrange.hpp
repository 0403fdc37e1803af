#pragma once

#include <vector>

#include "mortarfem/errors.hpp"

namespace mortarfem {

/// Lagrange basis polynomial i on the given node set, evaluated at x.
/// Product form: exact 1 at its own node, exact 0 at the others.
inline double lagrange_value(const std::vector<double>& nodes, int i, double x) {
  double v = 1.0;
  const double xi = nodes[i];
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    if (static_cast<int>(j) == i) continue;
    v *= (x - nodes[j]) / (xi - nodes[j]);
  }
  return v;
}

/// Derivative of Lagrange basis polynomial i at x.
inline double lagrange_derivative(const std::vector<double>& nodes, int i, double x) {
  const double xi = nodes[i];
  double sum = 0.0;
  for (std::size_t m = 0; m < nodes.size(); ++m) {
    if (static_cast<int>(m) == i) continue;
    double term = 1.0 / (xi - nodes[m]);
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (static_cast<int>(j) == i || j == m) continue;
      term *= (x - nodes[j]) / (xi - nodes[j]);
    }
    sum += term;
  }
  return sum;
}

} // namespace mortarfem
