#include <Eigen/Dense>
#include <cmath>
#include <memory>

#include "doctest.h"
#include "qasvd/errors.hpp"
#include "qasvd/gram.hpp"
#include "qasvd/matrix.hpp"
#include "qasvd/oracle.hpp"
#include "test_support.hpp"

using namespace qasvd;
using testsupport::demo_matrix;
using testsupport::det_cofactor;
using testsupport::lcg_matrix;

TEST_CASE("full_diagonalize solves the demo Gram matrix") {
  const EigenDecomposition eig = full_diagonalize(gram(DataMatrix(demo_matrix())));
  REQUIRE(eig.eigenvalues.size() == 2);
  CHECK(eig.eigenvalues(0) == doctest::Approx(1.43).epsilon(1e-12));
  CHECK(eig.eigenvalues(1) == doctest::Approx(0.57).epsilon(1e-12));
  Eigen::Vector2d plus(1.0, 1.0), minus(1.0, -1.0);
  plus /= std::sqrt(2.0);
  minus /= std::sqrt(2.0);
  CHECK(std::abs(eig.eigenvectors.col(0).dot(plus)) >= 1.0 - 1e-12);
  CHECK(std::abs(eig.eigenvectors.col(1).dot(minus)) >= 1.0 - 1e-12);
  CHECK(eig.iterations > 0);
}

TEST_CASE("full_diagonalize on an already diagonal matrix") {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(3, 3);
  d(0, 0) = 0.2;
  d(1, 1) = 1.5;
  d(2, 2) = 0.7;
  const EigenDecomposition eig = full_diagonalize(GramOperator::from_matrix(d));
  CHECK(eig.eigenvalues(0) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(eig.eigenvalues(1) == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(eig.eigenvalues(2) == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(std::abs(eig.eigenvectors(1, 0)) == doctest::Approx(1.0));
  CHECK(eig.offDiagonalNorm <= 1e-13);
}

TEST_CASE("full_diagonalize reconstructs random symmetric matrices") {
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::MatrixXd a = lcg_matrix(10, 10, 3000 + trial);
    const Eigen::MatrixXd sym = 0.5 * (a + a.transpose());
    const EigenDecomposition eig =
        full_diagonalize(GramOperator::from_matrix(sym));
    const Eigen::MatrixXd& v = eig.eigenvectors;
    CHECK((v.transpose() * v - Eigen::MatrixXd::Identity(10, 10))
              .cwiseAbs()
              .maxCoeff() <= 1e-10);
    CHECK((v * eig.eigenvalues.asDiagonal() * v.transpose() - sym)
              .cwiseAbs()
              .maxCoeff() <= 1e-9);
    for (Eigen::Index j = 0; j + 1 < 10; ++j) {
      CHECK(eig.eigenvalues(j) >= eig.eigenvalues(j + 1));
    }
  }
}

TEST_CASE("eigenvalue sums and products match trace and determinant") {
  for (const Eigen::Index n : {4, 5, 6}) {
    const Eigen::MatrixXd b = lcg_matrix(n, n, 4000 + n);
    const Eigen::MatrixXd g = b.transpose() * b;
    const EigenDecomposition eig =
        full_diagonalize(GramOperator::from_matrix(g));
    CHECK(eig.eigenvalues.sum() ==
          doctest::Approx(g.trace()).epsilon(1e-12));
    CHECK(eig.eigenvalues.prod() ==
          doctest::Approx(det_cofactor(g)).epsilon(1e-6));
  }
}

TEST_CASE("full_diagonalize rejects implicit operators") {
  const auto src = std::make_shared<const DataMatrix>(lcg_matrix(4, 3, 5000));
  CHECK_THROWS_AS(full_diagonalize(GramOperator::implicit_from(src)),
                  InputError);
}

TEST_CASE("power_iteration agrees with the Jacobi oracle") {
  const GramOperator g = gram(DataMatrix(demo_matrix()));
  const PrincipalComponent top = power_iteration(g, 1e-12, 200000);
  CHECK(top.lambda == doctest::Approx(1.43).epsilon(1e-10));
  CHECK(top.residual <= 1e-12 * 1.43);
  Eigen::Vector2d plus(1.0, 1.0);
  plus /= std::sqrt(2.0);
  CHECK(std::abs(top.v.dot(plus)) >= 1.0 - 1e-10);
}

TEST_CASE("power_iteration and Jacobi agree on fifty random instances") {
  double worstLambda = 0.0;
  double worstFid = 1.0;
  Lcg64 rng(6100);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index m = 2 + static_cast<Eigen::Index>(rng.next_u64() % 7);
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.next_u64() % 5);
    const DataMatrix a(lcg_matrix(m, n, 6200 + trial));
    const GramOperator g = gram(a);
    const EigenDecomposition eig = full_diagonalize(g);
    const PrincipalComponent top = power_iteration(g, 1e-12, 2000000);
    worstLambda =
        std::max(worstLambda, std::abs(top.lambda - eig.eigenvalues(0)));
    const double relGap =
        (eig.eigenvalues(0) - eig.eigenvalues(1)) /
        std::max(eig.eigenvalues(0), 1.0);
    if (relGap > 1e-6) {  // a unique top direction to compare against
      worstFid =
          std::min(worstFid, std::abs(top.v.dot(eig.eigenvectors.col(0))));
    }
  }
  CHECK(worstLambda <= 1e-8);
  CHECK(worstFid >= 1.0 - 1e-8);
}

TEST_CASE("power_iteration fills the left vector only in implicit mode") {
  const auto src = std::make_shared<const DataMatrix>(lcg_matrix(6, 4, 6300));
  const PrincipalComponent viaData =
      power_iteration(GramOperator::implicit_from(src), 1e-12, 1000000);
  REQUIRE(viaData.u.size() == 6);
  CHECK(viaData.u.norm() == doctest::Approx(1.0).epsilon(1e-8));
  const Eigen::MatrixXd& a = src->a;
  CHECK((a * (a.transpose() * viaData.u) - viaData.lambda * viaData.u).norm() <=
        1e-8 * viaData.lambda);
  CHECK(viaData.sigma ==
        doctest::Approx(std::sqrt(viaData.lambda)).epsilon(1e-12));

  const PrincipalComponent bare =
      power_iteration(GramOperator::from_matrix(a.transpose() * a), 1e-12,
                      1000000);
  CHECK(bare.u.size() == 0);
  CHECK(bare.lambda == doctest::Approx(viaData.lambda).epsilon(1e-9));
}

TEST_CASE("power_iteration handles identity and zero operators") {
  const PrincipalComponent id = power_iteration(
      GramOperator::from_matrix(Eigen::MatrixXd::Identity(3, 3)), 1e-10, 100);
  CHECK(id.lambda == doctest::Approx(1.0).epsilon(1e-12));

  const PrincipalComponent zero = power_iteration(
      GramOperator::from_matrix(Eigen::MatrixXd::Zero(3, 3)), 1e-10, 100);
  CHECK(zero.lambda == 0.0);
  CHECK(zero.sigma == 0.0);
}

TEST_CASE("power_iteration guards") {
  const GramOperator g = gram(DataMatrix(demo_matrix()));
  CHECK_THROWS_AS(power_iteration(g, 0.0, 100), ConfigError);
  CHECK_THROWS_AS(power_iteration(g, -1e-6, 100), ConfigError);
  CHECK_THROWS_AS(power_iteration(g, 1e-14, 2), MaxIterExceeded);
}
