#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "mortarfem/field_eval.hpp"
#include "mortarfem/manufactured.hpp"
#include "mortarfem/runner.hpp"

using namespace mortarfem;

TEST_CASE("manufactured derivatives agree with finite differences", "[analysis]") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> coord(-0.95, 0.95);
  std::uniform_real_distribution<double> time(0.0, 1.0);
  const double d = 1e-5;
  for (const char* name :
       {"exp-bubble-cubic", "bubble-cubic", "exp-bubble-quad", "bubble-quad", "sine-exp"}) {
    const ManufacturedSolution ms = manufactured_preset(name);
    for (int trial = 0; trial < 200; ++trial) {
      const double x = coord(rng), y = coord(rng), t = time(rng);
      const double ux_fd = (ms.u(x + d, y, t) - ms.u(x - d, y, t)) / (2.0 * d);
      const double uy_fd = (ms.u(x, y + d, t) - ms.u(x, y - d, t)) / (2.0 * d);
      const double ut_fd = (ms.u(x, y, t + d) - ms.u(x, y, t - d)) / (2.0 * d);
      const double lap_fd = (ms.u(x + d, y, t) - 2.0 * ms.u(x, y, t) + ms.u(x - d, y, t) +
                             ms.u(x, y + d, t) - 2.0 * ms.u(x, y, t) + ms.u(x, y - d, t)) /
                            (d * d);
      const double scale = 1.0 + std::abs(ms.u(x, y, t));
      CHECK(std::abs(ms.ux(x, y, t) - ux_fd) <= 1e-6 * (scale + std::abs(ux_fd)));
      CHECK(std::abs(ms.uy(x, y, t) - uy_fd) <= 1e-6 * (scale + std::abs(uy_fd)));
      CHECK(std::abs(ms.ut(x, y, t) - ut_fd) <= 1e-6 * (scale + std::abs(ut_fd)));
      CHECK(std::abs(ms.lap(x, y, t) - lap_fd) <= 2e-4 * (scale + std::abs(lap_fd)));
    }
  }
}

TEST_CASE("source assembly ties the pieces together", "[analysis]") {
  const ManufacturedSolution ms = manufactured_preset("exp-bubble-quad");
  // ut = u for the exponential-in-time presets, so source = u - a lap
  const double got = ms.source(0.3, 0.7, 0.5, 2.0);
  const double want = ms.u(0.3, 0.7, 0.5) - 2.0 * ms.lap(0.3, 0.7, 0.5);
  CHECK(got == Catch::Approx(want).margin(1e-15));
  CHECK(ms.elliptic_source(0.3, 0.7, 0.5, 2.0) ==
        Catch::Approx(-2.0 * ms.lap(0.3, 0.7, 0.5)).margin(1e-15));
}

TEST_CASE("error norms vanish for an exactly represented field", "[analysis]") {
  const Partition p = unit_square_2x1_partition();
  std::vector<SubdomainMesh> meshes{
      build_subdomain_mesh(p.subdomains[0], 0, 2, 3, 2),
      build_subdomain_mesh(p.subdomains[1], 1, 3, 4, 2),
  };
  const std::vector<InterfaceSegment> segs = extract_interfaces(p, meshes);
  const DofMap dm = build_dof_map(p, meshes, segs);
  const ManufacturedSolution ms = manufactured_preset("bubble-quad");
  const Eigen::VectorXd v = interpolate(meshes, dm, ms.u, 0.0);
  const ErrorNorms norms = error_norms(meshes, dm, v, ms.u, ms.ux, ms.uy, 0.0);
  CHECK(norms.l2 <= 1e-12);
  CHECK(norms.broken_h1 <= 1e-11);
}

TEST_CASE("field norm oracle: the quartic bubble on the unit square", "[analysis]") {
  const Partition p = unit_square_2x1_partition();
  std::vector<SubdomainMesh> meshes{
      build_subdomain_mesh(p.subdomains[0], 0, 2, 3, 2),
      build_subdomain_mesh(p.subdomains[1], 1, 3, 4, 2),
  };
  const ManufacturedSolution ms = manufactured_preset("bubble-quad");
  // integral of x^2 (1-x)^2 over [0,1] is 1/30 in each direction
  CHECK(field_l2_norm(meshes, ms.u, 0.0) == Catch::Approx(1.0 / 30.0).epsilon(1e-12));
}

TEST_CASE("broken first-order error dominates the mean-square error", "[analysis]") {
  const Partition p = unit_square_2x1_partition();
  std::vector<SubdomainMesh> meshes{
      build_subdomain_mesh(p.subdomains[0], 0, 2, 3, 1),
      build_subdomain_mesh(p.subdomains[1], 1, 3, 4, 1),
  };
  const std::vector<InterfaceSegment> segs = extract_interfaces(p, meshes);
  const DofMap dm = build_dof_map(p, meshes, segs);
  const ManufacturedSolution ms = manufactured_preset("sine-exp");
  const Eigen::VectorXd v = interpolate(meshes, dm, ms.u, 0.0);
  const ErrorNorms norms = error_norms(meshes, dm, v, ms.u, ms.ux, ms.uy, 0.0);
  CHECK(norms.broken_h1 >= norms.l2);
  CHECK(norms.l2 > 0.0);
}

TEST_CASE("observed orders reproduce the reference pairs digit for digit", "[analysis]") {
  const std::vector<double> hs{1.0 / 6, 1.0 / 8, 1.0 / 10, 1.0 / 12, 1.0 / 14};
  const std::vector<double> errors{0.026451, 0.016035, 0.010766, 0.0077316, 0.0058236};
  const std::vector<double> p = eoc(hs, errors);
  REQUIRE(p.size() == 4);
  CHECK(p[0] == Catch::Approx(1.7398377568757781).margin(1e-12));
  CHECK(p[1] == Catch::Approx(1.7853117899221311).margin(1e-12));
  CHECK(p[2] == Catch::Approx(1.8158971380573636).margin(1e-12));
  CHECK(p[3] == Catch::Approx(1.8384427499833393).margin(1e-12));

  // with r = h^2 the temporal orders are exactly half the spatial ones
  std::vector<double> rs(hs.size());
  for (std::size_t i = 0; i < hs.size(); ++i) rs[i] = hs[i] * hs[i];
  const std::vector<double> q = eoc(rs, errors);
  for (std::size_t i = 0; i < q.size(); ++i)
    CHECK(q[i] == Catch::Approx(0.5 * p[i]).margin(1e-13));
}

TEST_CASE("halving the error per halved resolution is first order", "[analysis]") {
  const std::vector<double> p = eoc({0.25, 0.125}, {0.02, 0.01});
  REQUIRE(p.size() == 1);
  CHECK(p[0] == Catch::Approx(1.0).margin(1e-14));
  const std::vector<double> p2 = eoc({0.25, 0.125}, {0.04, 0.01});
  CHECK(p2[0] == Catch::Approx(2.0).margin(1e-14));
}

TEST_CASE("order estimation rejects malformed studies", "[analysis]") {
  CHECK_THROWS_AS(eoc({0.25}, {0.02}), ValidationError);
  CHECK_THROWS_AS(eoc({0.25, 0.25}, {0.02, 0.01}), ValidationError);
  CHECK_THROWS_AS(eoc({0.125, 0.25}, {0.02, 0.01}), ValidationError);
  CHECK_THROWS_AS(eoc({0.25, 0.125}, {0.02}), ValidationError);
}

TEST_CASE("least-squares slope recovers an exact power law", "[analysis]") {
  std::vector<double> hs{0.5, 0.25, 0.125, 0.0625};
  std::vector<double> errors;
  for (const double h : hs) errors.push_back(3.7 * std::pow(h, 2.5));
  CHECK(fit_order(hs, errors) == Catch::Approx(2.5).margin(1e-12));
}

TEST_CASE("neighboring subdomains get deliberately different cell counts", "[analysis]") {
  RunConfig cfg = config_preset("table1");
  const Partition part = resolve_partition(cfg);
  const std::vector<int> colors = subdomain_colors(part);
  CHECK(colors[0] != colors[1]);
  CHECK(colors[1] != colors[2]);
  const std::vector<SubdomainMesh> meshes = meshes_for(cfg, part, 1.0 / 6.0);
  // unit squares: one color gets 6 cells per direction, the other 8
  for (const SubdomainMesh& mesh : meshes) {
    CHECK(mesh.nx == mesh.ny);
    CHECK((mesh.nx == 6 || mesh.nx == 8));
  }
  CHECK(meshes[0].nx != meshes[1].nx);
  CHECK(meshes[1].nx != meshes[2].nx);

  // half-width subdomains scale the density by their extent
  RunConfig cfg2 = config_preset("smooth-k2");
  const Partition part2 = resolve_partition(cfg2);
  const std::vector<SubdomainMesh> meshes2 = meshes_for(cfg2, part2, 1.0 / 4.0);
  CHECK(meshes2[0].ny + meshes2[1].ny == 4 + 6);
  CHECK(meshes2[0].nx * 2 == meshes2[0].ny);
  CHECK(meshes2[1].nx * 2 == meshes2[1].ny);
}

TEST_CASE("per-subdomain overrides replace derived mesh settings", "[analysis]") {
  RunConfig cfg = config_preset("smooth-k2");
  cfg.subdomain_overrides[1].nx = 5;
  cfg.subdomain_overrides[1].ny = 9;
  const Partition part = resolve_partition(cfg);
  const std::vector<SubdomainMesh> meshes = meshes_for(cfg, part, 1.0 / 4.0);
  CHECK(meshes[1].nx == 5);
  CHECK(meshes[1].ny == 9);
  CHECK(meshes[0].nx == 2);

  cfg.subdomain_overrides.clear();
  cfg.subdomain_overrides[7].alpha = 2.0;
  CHECK_THROWS_AS(resolve_alpha(cfg, part), ValidationError);
}

TEST_CASE("negative-norm studies demand at least quadratic elements", "[analysis]") {
  RunConfig cfg = config_preset("table1"); // degree 1
  CHECK_THROWS_AS(superconvergence_study(cfg), ValidationError);
}

TEST_CASE("an alpha list of the wrong length is rejected", "[analysis]") {
  RunConfig cfg = config_preset("table1");
  cfg.alpha = {1.0, 10.0};
  const Partition part = resolve_partition(cfg);
  CHECK_THROWS_AS(resolve_alpha(cfg, part), ValidationError);
}

TEST_CASE("study drivers insist on enough resolutions", "[analysis]") {
  RunConfig cfg = config_preset("smooth-k2");
  cfg.h_list = {1.0 / 4};
  CHECK_THROWS_AS(convergence_study(cfg), ValidationError);
  RunConfig tcfg = config_preset("temporal-k2");
  tcfg.r_list = {1.0 / 10};
  CHECK_THROWS_AS(time_convergence_study(tcfg), ValidationError);
}
