#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "mortarfem/lagrange.hpp"
#include "mortarfem/quadrature.hpp"
#include "mortarfem/reference_element.hpp"

using namespace mortarfem;

namespace {

double integrate(const QuadratureRule& rule, double (*f)(double)) {
  double s = 0.0;
  for (int i = 0; i < rule.size(); ++i) s += rule.weights[i] * f(rule.points[i]);
  return s;
}

// closed-form integral of x^d over [-1, 1]
double monomial_integral(int d) { return d % 2 == 1 ? 0.0 : 2.0 / (d + 1); }

} // namespace

TEST_CASE("gauss rule point counts and frozen low-order values", "[quadrature]") {
  const QuadratureRule r1 = gauss_legendre(1);
  REQUIRE(r1.size() == 1);
  CHECK(r1.points[0] == Catch::Approx(0.0).margin(1e-15));
  CHECK(r1.weights[0] == Catch::Approx(2.0).margin(1e-15));

  const QuadratureRule r2 = gauss_legendre(2);
  REQUIRE(r2.size() == 2);
  const double g = 1.0 / std::sqrt(3.0);
  CHECK(r2.points[0] == Catch::Approx(-g).margin(1e-15));
  CHECK(r2.points[1] == Catch::Approx(g).margin(1e-15));
  CHECK(r2.weights[0] == Catch::Approx(1.0).margin(1e-15));
  CHECK(r2.weights[1] == Catch::Approx(1.0).margin(1e-15));
}

TEST_CASE("five-point gauss rule integrates x^8 on [-1,1]", "[quadrature]") {
  const QuadratureRule r = gauss_legendre(5);
  const double got = integrate(r, [](double x) { return std::pow(x, 8); });
  CHECK(got == Catch::Approx(2.0 / 9.0).margin(1e-14));
}

TEST_CASE("n-point gauss rules are exact through degree 2n-1", "[quadrature]") {
  for (int n = 1; n <= 8; ++n) {
    const QuadratureRule r = gauss_legendre(n);
    double wsum = 0.0;
    for (int i = 0; i < n; ++i) wsum += r.weights[i];
    CHECK(wsum == Catch::Approx(2.0).margin(1e-14));
    for (int d = 0; d <= 2 * n - 1; ++d) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += r.weights[i] * std::pow(r.points[i], d);
      CHECK(s == Catch::Approx(monomial_integral(d)).margin(1e-13));
    }
  }
}

TEST_CASE("gauss points are symmetric and increasing", "[quadrature]") {
  for (int n = 2; n <= 9; ++n) {
    const QuadratureRule r = gauss_legendre(n);
    for (int i = 0; i < n; ++i) {
      CHECK(r.points[i] == Catch::Approx(-r.points[n - 1 - i]).margin(1e-15));
      CHECK(r.weights[i] == Catch::Approx(r.weights[n - 1 - i]).margin(1e-15));
      if (i > 0) CHECK(r.points[i] > r.points[i - 1]);
    }
  }
}

TEST_CASE("lobatto nodes include endpoints and known interiors", "[quadrature]") {
  const std::vector<double> n2 = gauss_lobatto_nodes(2);
  REQUIRE(n2.size() == 2);
  CHECK(n2[0] == -1.0);
  CHECK(n2[1] == 1.0);

  const std::vector<double> n3 = gauss_lobatto_nodes(3);
  REQUIRE(n3.size() == 3);
  CHECK(n3[1] == Catch::Approx(0.0).margin(1e-15));

  const std::vector<double> n4 = gauss_lobatto_nodes(4);
  CHECK(n4[1] == Catch::Approx(-1.0 / std::sqrt(5.0)).margin(1e-14));
  CHECK(n4[2] == Catch::Approx(1.0 / std::sqrt(5.0)).margin(1e-14));

  const std::vector<double> n5 = gauss_lobatto_nodes(5);
  CHECK(n5[1] == Catch::Approx(-std::sqrt(3.0 / 7.0)).margin(1e-14));
  CHECK(n5[2] == Catch::Approx(0.0).margin(1e-15));

  for (int n = 2; n <= 7; ++n) {
    const std::vector<double> nodes = gauss_lobatto_nodes(n);
    CHECK(nodes.front() == -1.0);
    CHECK(nodes.back() == 1.0);
    for (int i = 0; i < n; ++i)
      CHECK(nodes[i] == Catch::Approx(-nodes[n - 1 - i]).margin(1e-14));
  }
}

TEST_CASE("lagrange basis is nodal and sums to one", "[quadrature]") {
  const std::vector<double> nodes = gauss_lobatto_nodes(5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      CHECK(lagrange_value(nodes, i, nodes[j]) ==
            Catch::Approx(i == j ? 1.0 : 0.0).margin(1e-12));
  for (const double x : {-0.9, -0.3, 0.17, 0.55, 0.99}) {
    double sum = 0.0, dsum = 0.0;
    for (int i = 0; i < 5; ++i) {
      sum += lagrange_value(nodes, i, x);
      dsum += lagrange_derivative(nodes, i, x);
    }
    CHECK(sum == Catch::Approx(1.0).margin(1e-12));
    CHECK(dsum == Catch::Approx(0.0).margin(1e-11));
  }
}

TEST_CASE("lagrange derivative matches the derivative of a reproduced cubic",
          "[quadrature]") {
  const std::vector<double> nodes = gauss_lobatto_nodes(4);
  const auto p = [](double x) { return 2.0 * x * x * x - x * x + 0.5 * x - 3.0; };
  const auto dp = [](double x) { return 6.0 * x * x - 2.0 * x + 0.5; };
  for (const double x : {-0.8, -0.25, 0.0, 0.4, 0.95}) {
    double v = 0.0, d = 0.0;
    for (int i = 0; i < 4; ++i) {
      v += p(nodes[i]) * lagrange_value(nodes, i, x);
      d += p(nodes[i]) * lagrange_derivative(nodes, i, x);
    }
    CHECK(v == Catch::Approx(p(x)).margin(1e-12));
    CHECK(d == Catch::Approx(dp(x)).margin(1e-11));
  }
}

TEST_CASE("reference element tabulation matches direct evaluation", "[quadrature]") {
  const ReferenceElement elem(3);
  REQUIRE(elem.node_count() == 16);
  const QuadratureRule rule = gauss_legendre(4);
  const ShapeTable tab = elem.tabulate(rule.points);
  for (int q = 0; q < rule.size(); ++q) {
    double sum = 0.0;
    for (int i = 0; i <= 3; ++i) {
      CHECK(tab.value[q][i] == Catch::Approx(elem.shape_1d(i, rule.points[q])).margin(1e-14));
      sum += tab.value[q][i];
    }
    CHECK(sum == Catch::Approx(1.0).margin(1e-12));
  }
}

TEST_CASE("composite rules integrate piecewise and merged meshes", "[quadrature]") {
  const std::vector<double> breaks{0.0, 0.25, 0.6, 1.0};
  const CompositeRule rule = composite_gauss(breaks, 3);
  double s = 0.0, total = 0.0;
  for (int q = 0; q < rule.size(); ++q) {
    s += rule.weights[q] * rule.points[q] * rule.points[q];
    total += rule.weights[q];
  }
  CHECK(s == Catch::Approx(1.0 / 3.0).margin(1e-14));
  CHECK(total == Catch::Approx(1.0).margin(1e-14));
}

TEST_CASE("breakpoint merging keeps both meshes' cuts exactly once", "[quadrature]") {
  const std::vector<double> a{0.0, 0.5, 1.0};
  const std::vector<double> b{0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0};
  const std::vector<double> merged = merge_breakpoints(a, b);
  REQUIRE(merged.size() == 5);
  CHECK(merged[0] == 0.0);
  CHECK(merged[1] == Catch::Approx(1.0 / 3.0).margin(1e-15));
  CHECK(merged[2] == 0.5);
  CHECK(merged[3] == Catch::Approx(2.0 / 3.0).margin(1e-15));
  CHECK(merged[4] == 1.0);

  CHECK_THROWS_AS(merge_breakpoints({0.0, 1.0}, {0.0, 0.5}), ValidationError);
}

TEST_CASE("interface rule integrates products of piecewise linears exactly",
          "[quadrature]") {
  // hat on {0, 1/2, 1} times hat on {0, 1/3, 2/3, 1}: piecewise quadratic on
  // the merged mesh, so a 2-point-per-piece rule is exact
  const std::vector<double> a{0.0, 0.5, 1.0};
  const std::vector<double> b{0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0};
  const auto hat = [](const std::vector<double>& m, std::size_t i, double x) {
    if (x <= m[i - 1] || x >= m[i + 1]) return 0.0;
    return x <= m[i] ? (x - m[i - 1]) / (m[i] - m[i - 1]) : (m[i + 1] - x) / (m[i + 1] - m[i]);
  };
  const CompositeRule rule = interface_quadrature(a, b, 2);
  double got = 0.0;
  for (int q = 0; q < rule.size(); ++q)
    got += rule.weights[q] * hat(a, 1, rule.points[q]) * hat(b, 2, rule.points[q]);

  // dense reference answer on a very fine independent rule
  const int pieces = 3000;
  std::vector<double> fine(pieces + 1);
  for (int i = 0; i <= pieces; ++i) fine[i] = static_cast<double>(i) / pieces;
  const CompositeRule ref = composite_gauss(fine, 4);
  double want = 0.0;
  for (int q = 0; q < ref.size(); ++q)
    want += ref.weights[q] * hat(a, 1, ref.points[q]) * hat(b, 2, ref.points[q]);
  CHECK(got == Catch::Approx(want).margin(1e-12));
}
