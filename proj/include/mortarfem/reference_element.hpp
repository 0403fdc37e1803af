#pragma once

#include <vector>

#include "mortarfem/errors.hpp"
#include "mortarfem/lagrange.hpp"
#include "mortarfem/quadrature.hpp"

namespace mortarfem {

/// Values and derivatives of all 1d shape functions at a set of points,
/// laid out as table[point][shape].
struct ShapeTable {
  std::vector<std::vector<double>> value;
  std::vector<std::vector<double>> deriv;
};

/// Tensor-product Lagrange element of degree k on [-1,1]^2 with
/// Gauss-Lobatto node placement per direction. The 2d basis is
/// phi_{a + b*(k+1)}(x, y) = l_a(x) l_b(y), x running fastest.
class ReferenceElement {
public:
  explicit ReferenceElement(int degree)
      : degree_(degree) {
    if (degree < 1) throw ValidationError("ReferenceElement: degree must be >= 1");
    nodes_ = gauss_lobatto_nodes(degree + 1);
  }

  int degree() const { return degree_; }
  int nodes_per_dim() const { return degree_ + 1; }
  int node_count() const { return (degree_ + 1) * (degree_ + 1); }

  /// 1d node coordinates on [-1, 1], ascending, endpoints included.
  const std::vector<double>& nodes_1d() const { return nodes_; }

  double shape_1d(int i, double x) const { return lagrange_value(nodes_, i, x); }
  double shape_1d_deriv(int i, double x) const { return lagrange_derivative(nodes_, i, x); }

  /// Tabulate all 1d shapes at the points of a quadrature rule.
  ShapeTable tabulate(const std::vector<double>& points) const {
    ShapeTable t;
    t.value.resize(points.size());
    t.deriv.resize(points.size());
    for (std::size_t q = 0; q < points.size(); ++q) {
      t.value[q].resize(nodes_.size());
      t.deriv[q].resize(nodes_.size());
      for (std::size_t i = 0; i < nodes_.size(); ++i) {
        t.value[q][i] = shape_1d(static_cast<int>(i), points[q]);
        t.deriv[q][i] = shape_1d_deriv(static_cast<int>(i), points[q]);
      }
    }
    return t;
  }

private:
  int degree_;
  std::vector<double> nodes_;
};

} // namespace mortarfem
