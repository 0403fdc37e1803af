#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>

#include "mortarfem/local_assembly.hpp"

using namespace mortarfem;

TEST_CASE("bilinear unit-cell mass matrix matches the closed form", "[local]") {
  const ReferenceElement elem(1);
  const LocalMatrices loc = local_matrices(elem, 0.0, 1.0, 0.0, 1.0, 1.0);
  Eigen::Matrix4d want;
  want << 4, 2, 2, 1, //
      2, 4, 1, 2,     //
      2, 1, 4, 2,     //
      1, 2, 2, 4;
  want /= 36.0;
  REQUIRE(loc.mass.rows() == 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(loc.mass(i, j) == Catch::Approx(want(i, j)).margin(1e-14));
}

TEST_CASE("bilinear unit-cell stiffness matrix matches the closed form", "[local]") {
  const ReferenceElement elem(1);
  const LocalMatrices loc = local_matrices(elem, 0.0, 1.0, 0.0, 1.0, 1.0);
  Eigen::Matrix4d want;
  want << 4, -1, -1, -2, //
      -1, 4, -2, -1,     //
      -1, -2, 4, -1,     //
      -2, -1, -1, 4;
  want /= 6.0;
  for (int i = 0; i < 4; ++i) {
    double rowsum = 0.0;
    for (int j = 0; j < 4; ++j) {
      CHECK(loc.stiffness(i, j) == Catch::Approx(want(i, j)).margin(1e-14));
      rowsum += loc.stiffness(i, j);
    }
    CHECK(rowsum == Catch::Approx(0.0).margin(1e-14));
  }
}

TEST_CASE("mass scales with area, stiffness linearly with the coefficient", "[local]") {
  const ReferenceElement elem(2);
  const LocalMatrices unit = local_matrices(elem, 0.0, 1.0, 0.0, 1.0, 1.0);
  const LocalMatrices scaled = local_matrices(elem, 0.0, 0.25, 0.5, 1.0, 3.0);
  CHECK(scaled.mass.sum() == Catch::Approx(0.25 * 0.5).margin(1e-13));
  CHECK(unit.mass.sum() == Catch::Approx(1.0).margin(1e-13));
  // constant coefficient multiplies the whole stiffness matrix
  const LocalMatrices alpha1 = local_matrices(elem, 0.0, 0.25, 0.5, 1.0, 1.0);
  CHECK((scaled.stiffness - 3.0 * alpha1.stiffness).cwiseAbs().maxCoeff() <= 1e-13);
  // constants lie in the stiffness kernel
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(unit.stiffness.rows());
  CHECK((unit.stiffness * ones).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("variable coefficient overload agrees with the constant one", "[local]") {
  const ReferenceElement elem(2);
  const LocalMatrices constant = local_matrices(elem, 0.0, 0.5, 0.0, 0.5, 7.0);
  const LocalMatrices callable = local_matrices(
      elem, 0.0, 0.5, 0.0, 0.5, [](double, double) { return 7.0; });
  CHECK((constant.stiffness - callable.stiffness).cwiseAbs().maxCoeff() <= 1e-13);
  CHECK_THROWS_AS(local_matrices(elem, 0.0, 1.0, 0.0, 1.0, 0.0), ValidationError);
  CHECK_THROWS_AS(local_matrices(elem, 0.0, 1.0, 0.0, 1.0, -2.0), ValidationError);
}

TEST_CASE("local matrices are symmetric and the mass is positive definite", "[local]") {
  for (int k : {1, 2, 3}) {
    const ReferenceElement elem(k);
    const LocalMatrices loc = local_matrices(elem, -1.0, 0.0, 0.5, 2.0, 2.5);
    CHECK((loc.mass - loc.mass.transpose()).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((loc.stiffness - loc.stiffness.transpose()).cwiseAbs().maxCoeff() <= 1e-13);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(loc.mass);
    CHECK(es.eigenvalues().minCoeff() > 0.0);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ess(loc.stiffness);
    CHECK(ess.eigenvalues().minCoeff() >= -1e-12);
  }
}

TEST_CASE("unit load splits evenly over bilinear shapes", "[local]") {
  const ReferenceElement elem(1);
  const Eigen::VectorXd load =
      local_load(elem, 0.0, 1.0, 0.0, 1.0, [](double, double, double) { return 1.0; }, 0.0);
  REQUIRE(load.size() == 4);
  for (int i = 0; i < 4; ++i) CHECK(load(i) == Catch::Approx(0.25).margin(1e-14));
}

TEST_CASE("linear load moments match hand integrals", "[local]") {
  const ReferenceElement elem(1);
  const Eigen::VectorXd load =
      local_load(elem, 0.0, 1.0, 0.0, 1.0, [](double x, double y, double) { return x + y; },
                 0.0);
  CHECK(load(0) == Catch::Approx(1.0 / 6.0).margin(1e-14)); // (1-x)(1-y)
  CHECK(load(1) == Catch::Approx(1.0 / 4.0).margin(1e-14)); // x(1-y)
  CHECK(load(2) == Catch::Approx(1.0 / 4.0).margin(1e-14)); // (1-x)y
  CHECK(load(3) == Catch::Approx(1.0 / 3.0).margin(1e-14)); // xy
  CHECK(load.sum() == Catch::Approx(1.0).margin(1e-14));
}
