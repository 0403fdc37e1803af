#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "mortarfem/geometry.hpp"
#include "mortarfem/mortar.hpp"
#include "mortarfem/trace_space.hpp"

using namespace mortarfem;

namespace {

std::vector<double> uniform_breaks(double a, double b, int cells) {
  std::vector<double> v(cells + 1);
  for (int i = 0; i <= cells; ++i) v[i] = a + (b - a) * static_cast<double>(i) / cells;
  v.back() = b;
  return v;
}

double eval_space(const IntervalSpace& space, const Eigen::VectorXd& coeffs, double x) {
  double v = 0.0;
  for (int j = 0; j < space.dim(); ++j) v += coeffs(j) * space.eval(j, x);
  return v;
}

// dense quadrature moments of a callable against every multiplier basis.
// The fine grid refines every multiplier subinterval (plus any extra kink
// locations) so piecewise-polynomial integrands are integrated exactly; a
// uniform grid that straddles breakpoints would pollute the reference at
// the 1e-8 level.
Eigen::VectorXd dense_moments(const IntervalSpace& mult,
                              const std::function<double(double)>& f,
                              const std::vector<double>& extra_kinks = {}) {
  std::vector<double> base = mult.breakpoints();
  base.insert(base.end(), extra_kinks.begin(), extra_kinks.end());
  std::sort(base.begin(), base.end());
  base.erase(std::unique(base.begin(), base.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-12; }),
             base.end());
  std::vector<double> fine;
  for (std::size_t i = 0; i + 1 < base.size(); ++i)
    for (int j = 0; j < 50; ++j)
      fine.push_back(base[i] + (base[i + 1] - base[i]) * j / 50.0);
  fine.push_back(base.back());
  const CompositeRule rule = composite_gauss(fine, 6);
  Eigen::VectorXd m = Eigen::VectorXd::Zero(mult.dim());
  for (int q = 0; q < rule.size(); ++q) {
    const double w = rule.weights[q] * f(rule.points[q]);
    for (int j = 0; j < mult.dim(); ++j) m(j) += w * mult.eval(j, rule.points[q]);
  }
  return m;
}

} // namespace

TEST_CASE("multiplier dimension counts nodes of the reduced-end space", "[mortar]") {
  CHECK(multiplier_dim(2, 1) == 1);
  CHECK(multiplier_dim(3, 2) == 5);
  CHECK(multiplier_dim(5, 1) == 4);
  CHECK_THROWS_AS(multiplier_dim(1, 2), ValidationError);
  CHECK_THROWS_AS(multiplier_dim(0, 1), ValidationError);

  for (int cells = 2; cells <= 10; ++cells) {
    for (int k = 1; k <= 4; ++k) {
      const IntervalSpace mult = multiplier_space(uniform_breaks(0.0, 1.0, cells), k);
      CHECK(mult.dim() == multiplier_dim(cells, k));
      CHECK(mult.dim() == k * cells - 1);
    }
  }
}

TEST_CASE("trace space dimension and nodal evaluation", "[mortar]") {
  const IntervalSpace tr = trace_space(uniform_breaks(0.0, 1.0, 3), 2);
  CHECK(tr.dim() == 7);
  for (int j = 0; j < tr.dim(); ++j)
    for (int i = 0; i < tr.dim(); ++i)
      CHECK(tr.eval(j, tr.node_coords()[i]) ==
            Catch::Approx(i == j ? 1.0 : 0.0).margin(1e-12));
}

TEST_CASE("piecewise-constant multiplier on two cells is the constant", "[mortar]") {
  const IntervalSpace mult = multiplier_space({0.0, 0.5, 1.0}, 1);
  REQUIRE(mult.dim() == 1);
  for (const double x : {0.1, 0.4, 0.5, 0.6, 0.9})
    CHECK(mult.eval(0, x) == Catch::Approx(1.0).margin(1e-13));
}

TEST_CASE("multiplier space drops one degree on the end cells", "[mortar]") {
  const IntervalSpace mult = multiplier_space(uniform_breaks(0.0, 1.0, 3), 2);
  REQUIRE(mult.dim() == 5);
  // on the first cell the functions are linear: second differences vanish
  for (int j = 0; j < mult.dim(); ++j) {
    const double a = mult.eval(j, 0.02), b = mult.eval(j, 0.12), c = mult.eval(j, 0.22);
    CHECK(c - 2.0 * b + a == Catch::Approx(0.0).margin(1e-11));
  }
  // on the middle cell they are genuinely quadratic for some basis function
  double max_second_diff = 0.0;
  for (int j = 0; j < mult.dim(); ++j) {
    const double a = mult.eval(j, 0.40), b = mult.eval(j, 0.50), c = mult.eval(j, 0.60);
    max_second_diff = std::max(max_second_diff, std::abs(c - 2.0 * b + a));
  }
  CHECK(max_second_diff > 1e-3);
}

TEST_CASE("projection of the parabola onto a two-cell linear trace", "[mortar]") {
  const Eigen::VectorXd coeffs =
      mortar_project({0.0, 0.5, 1.0}, 1, [](double x) { return x * (1.0 - x); });
  REQUIRE(coeffs.size() == 1);
  CHECK(coeffs(0) == Catch::Approx(1.0 / 3.0).margin(1e-13));
}

TEST_CASE("projection reproduces members of the interior trace space", "[mortar]") {
  const std::vector<double> breaks = uniform_breaks(0.0, 2.0, 5);
  const int k = 2;
  const IntervalSpace tr = trace_space(breaks, k);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::VectorXd interior(tr.dim() - 2);
  for (int i = 0; i < interior.size(); ++i) interior(i) = dist(rng);
  const auto member = [&](double x) { return eval_interior_trace(tr, interior, x); };
  const Eigen::VectorXd projected = mortar_project(breaks, k, member);
  REQUIRE(projected.size() == interior.size());
  for (int i = 0; i < interior.size(); ++i)
    CHECK(projected(i) == Catch::Approx(interior(i)).margin(1e-11));
}

TEST_CASE("projection error has vanishing moments against every multiplier", "[mortar]") {
  const std::vector<double> breaks{0.0, 0.4, 0.7, 1.0};
  const int k = 2;
  const auto v = [](double x) { return std::sin(3.0 * x) + x * x * x; };
  const Eigen::VectorXd coeffs = mortar_project(breaks, k, v);
  const IntervalSpace tr = trace_space(breaks, k);
  const IntervalSpace mult = multiplier_space(breaks, k);
  const Eigen::VectorXd residual_moments = dense_moments(
      mult, [&](double x) { return v(x) - eval_interior_trace(tr, coeffs, x); });
  CHECK(residual_moments.cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("matching meshes couple each slave to the coincident mortar node", "[mortar]") {
  const Partition p = unit_square_2x1_partition();
  const int k = 2, cells = 4;
  const std::vector<SubdomainMesh> meshes{
      build_subdomain_mesh(p.subdomains[0], 0, 2, cells, k),
      build_subdomain_mesh(p.subdomains[1], 1, 3, cells, k),
  };
  const std::vector<InterfaceSegment> segs = extract_interfaces(p, meshes);
  const CouplingMap map = build_coupling(segs[0]);
  const int m = map.mortar_dim;
  REQUIRE(map.slave_count == m - 2);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::VectorXd masters(m + 2);
  for (int i = 0; i < m; ++i) masters(i) = dist(rng);
  masters(m) = masters(0);         // nonmortar endpoints agree with the
  masters(m + 1) = masters(m - 1); // mortar endpoint values
  const Eigen::VectorXd slaves = map.coeff * masters;
  for (int s = 0; s < map.slave_count; ++s)
    CHECK(slaves(s) == Catch::Approx(masters(s + 1)).margin(1e-11));
}

TEST_CASE("coupled jump has vanishing moments on nonmatching meshes", "[mortar]") {
  const Partition p = unit_square_2x1_partition();
  const std::vector<SubdomainMesh> meshes{
      build_subdomain_mesh(p.subdomains[0], 0, 2, 4, 2),
      build_subdomain_mesh(p.subdomains[1], 1, 3, 6, 3),
  };
  const std::vector<InterfaceSegment> segs = extract_interfaces(p, meshes);
  const CouplingMap map = build_coupling(segs[0]);
  const IntervalSpace m_trace = trace_space(segs[0].mortar.breakpoints, segs[0].mortar.degree);
  const IntervalSpace nm_trace =
      trace_space(segs[0].nonmortar.breakpoints, segs[0].nonmortar.degree);
  const IntervalSpace mult =
      multiplier_space(segs[0].nonmortar.breakpoints, segs[0].nonmortar.degree);
  REQUIRE(map.mortar_dim == m_trace.dim());
  REQUIRE(map.slave_count == nm_trace.dim() - 2);

  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  double scale = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd masters(map.master_count());
    for (int i = 0; i < masters.size(); ++i) masters(i) = dist(rng);
    const Eigen::VectorXd slaves = map.coeff * masters;
    Eigen::VectorXd nm_values(nm_trace.dim());
    nm_values(0) = masters(map.mortar_dim);
    nm_values(nm_trace.dim() - 1) = masters(map.mortar_dim + 1);
    for (int s = 0; s < map.slave_count; ++s) nm_values(s + 1) = slaves(s);
    const Eigen::VectorXd jump_moments = dense_moments(
        mult,
        [&](double x) {
          return eval_space(m_trace, masters.head(map.mortar_dim), x) -
                 eval_space(nm_trace, nm_values, x);
        },
        segs[0].mortar.breakpoints);
    scale = std::max(scale, masters.cwiseAbs().maxCoeff());
    CHECK(jump_moments.cwiseAbs().maxCoeff() <= 1e-11 * std::max(1.0, scale));
  }
}

TEST_CASE("same-mesh moment matrix agrees with dense quadrature", "[mortar]") {
  const std::vector<double> breaks{0.0, 0.3, 0.55, 0.8, 1.0};
  const int k = 3;
  const IntervalSpace tr = trace_space(breaks, k);
  const IntervalSpace mult = multiplier_space(breaks, k);
  const Eigen::MatrixXd fast = detail::moment_matrix_same_mesh(mult, tr);
  for (int s = 0; s < tr.dim(); ++s) {
    const Eigen::VectorXd col =
        dense_moments(mult, [&](double x) { return tr.eval(s, x); });
    for (int j = 0; j < mult.dim(); ++j)
      CHECK(fast(j, s) == Catch::Approx(col(j)).margin(1e-12));
  }
}
