#include <cmath>

#include "doctest.h"
#include "qasvd/errors.hpp"
#include "qasvd/two_level.hpp"

using namespace qasvd;

namespace {

TwoLevelParams params(double K, double alpha, double lambda0H = 1.0) {
  TwoLevelParams p;
  p.K = K;
  p.alpha = alpha;
  p.lambda0H = lambda0H;
  return p;
}

}  // namespace

TEST_CASE("two-level parameter validation") {
  CHECK_THROWS_AS(params(0.0, 0.5).validate(), ConfigError);
  CHECK_THROWS_AS(params(-1.0, 0.5).validate(), ConfigError);
  CHECK_THROWS_AS(params(1.0, 1.5).validate(), ConfigError);
  CHECK_THROWS_AS(params(1.0, 0.5, 0.0).validate(), ConfigError);
  CHECK_NOTHROW(params(1.0, -0.5).validate());
  CHECK_NOTHROW(params(1.0, 0.0).validate());  // zero overlap is a valid point
}

TEST_CASE("system matrix entries at K = alpha = x = 1/2") {
  const Eigen::Matrix2d m = system_matrix(params(0.5, 0.5), 0.5);
  CHECK(m(0, 0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(m(0, 1) == doctest::Approx(-0.125).epsilon(1e-15));
  CHECK(m(1, 0) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(m(1, 1) == doctest::Approx(-0.5).epsilon(1e-15));
}

TEST_CASE("energy branches at the endpoints") {
  for (const double K : {0.3, 1.0, 1.7}) {
    for (const double alpha : {0.2, 0.5, 0.9}) {
      const TwoLevelParams p = params(K, alpha);
      const EnergyBranches e0 = energy_branches(p, 0.0);
      CHECK(e0.minus == doctest::Approx(-1.0).epsilon(1e-14));
      CHECK(e0.plus == doctest::Approx(1.0).epsilon(1e-14));
      const EnergyBranches e1 = energy_branches(p, 1.0);
      CHECK(e1.minus == doctest::Approx(-K).epsilon(1e-14));
      CHECK(std::abs(e1.plus) <= 1e-14);
    }
  }
}

TEST_CASE("energy branches match the worked midpoint value") {
  // K = alpha = 0.5, x = 0.5: radicand 1/16 + 1 - 1/4 = 0.8125.
  const EnergyBranches e = energy_branches(params(0.5, 0.5), 0.5);
  CHECK(e.minus == doctest::Approx(-0.5756939094329987).epsilon(1e-14));
  CHECK(e.plus == doctest::Approx(0.32569390943299864).epsilon(1e-14));
}

TEST_CASE("energy branches solve the characteristic polynomial") {
  for (const double K : {0.4, 1.0, 1.9}) {
    for (const double alpha : {-0.8, 0.3, 0.7}) {
      const TwoLevelParams p = params(K, alpha, 1.3);
      for (int i = 0; i <= 10; ++i) {
        const double x = i / 10.0;
        const Eigen::Matrix2d m = system_matrix(p, x);
        const EnergyBranches e = energy_branches(p, x);
        CHECK(e.minus + e.plus == doctest::Approx(m.trace()).epsilon(1e-12));
        CHECK(e.minus * e.plus ==
              doctest::Approx(m.determinant()).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("branches touch where the radicand vanishes at zero overlap") {
  // alpha = 0 makes the radicand the perfect square (xK - 2(1-x))^2, which
  // vanishes at x = 2/(K+2): a true level crossing.
  const TwoLevelParams p = params(1.0, 0.0);
  const double xc = 2.0 / 3.0;
  const EnergyBranches e = energy_branches(p, xc);
  CHECK(e.plus - e.minus <= 1e-12);
  CHECK(e.minus == doctest::Approx(-xc / 2.0).epsilon(1e-12));
}

TEST_CASE("mixing coefficients start at phi0 and end at v0") {
  const TwoLevelParams p = params(0.8, 0.6);
  const MixingCoefficients start = coefficients(p, 0.0);
  CHECK(std::abs(start.a) <= 1e-14);
  CHECK(start.b == doctest::Approx(1.0).epsilon(1e-14));
  const MixingCoefficients end = coefficients(p, 1.0);
  CHECK(end.a == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(end.b) <= 1e-14);

  // Negative overlap flips the sign convention of the terminal state.
  const MixingCoefficients endNeg = coefficients(params(0.8, -0.6), 1.0);
  CHECK(endNeg.a == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("mixing coefficients match the frozen midpoint value") {
  const MixingCoefficients mix = coefficients(params(0.5, 0.5), 0.5);
  CHECK(mix.a == doctest::Approx(0.1397012445801135).epsilon(1e-12));
  CHECK(mix.b == doctest::Approx(0.9228037343200755).epsilon(1e-12));
}

TEST_CASE("mixing coefficients are the ground eigenvector, normalized") {
  const TwoLevelParams p = params(0.7, 0.6);
  double prevA = -1.0;
  double prevB = 2.0;
  for (int i = 0; i <= 1000; ++i) {
    const double x = i / 1000.0;
    const MixingCoefficients mix = coefficients(p, x);
    const EnergyBranches e = energy_branches(p, x);
    const Eigen::Matrix2d m = system_matrix(p, x);
    Eigen::Vector2d ab(mix.a, mix.b);
    CHECK((m * ab - e.minus * ab).norm() <= 1e-9);
    const double q =
        mix.a * mix.a + mix.b * mix.b + 2.0 * mix.a * mix.b * p.alpha;
    CHECK(q == doctest::Approx(1.0).epsilon(1e-12));
    // Continuity tracking: weight drains monotonically from phi0 into v0.
    CHECK(mix.a >= prevA - 1e-12);
    CHECK(mix.b <= prevB + 1e-12);
    prevA = mix.a;
    prevB = mix.b;
  }
}

TEST_CASE("min_gap matches the frozen closed form") {
  CHECK(min_gap(params(0.5, 0.5)) ==
        doctest::Approx(0.3779644730092272).epsilon(1e-12));
  CHECK(min_gap(params(0.5, 0.5, 2.0)) ==
        doctest::Approx(2.0 * 0.3779644730092272).epsilon(1e-12));
  CHECK_THROWS_AS(min_gap(params(1.0, 0.0)), DegenerateOverlap);
  CHECK_THROWS_AS(min_gap(params(1.0, 1.0)), DegenerateOverlap);
  CHECK_THROWS_AS(min_gap(params(1.0, -1.0)), DegenerateOverlap);
}

TEST_CASE("min_gap_location and the interior-minimum regime") {
  CHECK(min_gap_location(params(0.5, 0.5)) ==
        doctest::Approx(6.0 / 7.0).epsilon(1e-12));
  // Interior exactly when 2 alpha^2 - 1 <= K/2.
  CHECK(min_gap_location(params(1.0, 0.7)) <= 1.0);
  CHECK(min_gap_location(params(0.5, 0.95)) > 1.0);
}

TEST_CASE("time_scale equals Lambda0 over the squared gap") {
  CHECK(time_scale(params(0.5, 0.5)) == doctest::Approx(7.0).epsilon(1e-12));
  CHECK(time_scale(params(0.5, 0.5, 2.0)) ==
        doctest::Approx(3.5).epsilon(1e-12));
  CHECK(time_scale(params(1.0, 1e-3)) >= 1e5);
}

TEST_CASE("time_scale constancy identity over the overlap") {
  // t_s * 16 K^2 a^2 (1-a^2) Lambda0 / ((2+K)^2 - 8 K a^2) == 1 identically.
  for (const double K : {0.3, 0.8, 1.6}) {
    for (int i = 1; i <= 9; ++i) {
      const double alpha = i / 10.0;
      const TwoLevelParams p = params(K, alpha, 1.7);
      const double d = (2.0 + K) * (2.0 + K) - 8.0 * K * alpha * alpha;
      const double q = time_scale(p) * 16.0 * K * K * alpha * alpha *
                       (1.0 - alpha * alpha) * p.lambda0H / d;
      CHECK(q == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("time_scale is alpha <-> sqrt(1-alpha^2) symmetric only as K -> 0") {
  // At K = 1 the swap changes the denominator, so the ratio is fixed but
  // not one; in the small-K limit the denominator flattens and the ratio
  // tends to one.
  const double ratio1 = time_scale(params(1.0, 0.6)) /
                        time_scale(params(1.0, 0.8));
  CHECK(ratio1 == doctest::Approx(1.5773195876288661).epsilon(1e-12));
  const double ratio0 = time_scale(params(1e-6, 0.6)) /
                        time_scale(params(1e-6, 0.8));
  CHECK(std::abs(ratio0 - 1.0) <= 1e-5);
}

TEST_CASE("reduced_gap_oracle agrees with the closed form") {
  const TwoLevelParams p = params(0.5, 0.5);
  const GapMinimum oracle = reduced_gap_oracle(p, 1000001);
  CHECK(std::abs(oracle.minGap - min_gap(p)) <= 1e-6);
  CHECK(std::abs(oracle.argminX - 6.0 / 7.0) <= 2e-6);
  CHECK_THROWS_AS(reduced_gap_oracle(p, 2), ConfigError);
}

TEST_CASE("reduced_gap_oracle limiting regimes") {
  // alpha -> 1: the radicand is again a perfect square and the grid minimum
  // sits at x = 1 with gap K * Lambda0.
  const GapMinimum nearOne = reduced_gap_oracle(params(1.0, 1.0 - 1e-9), 100001);
  CHECK(nearOne.minGap >= 0.9);
  // K -> 0: the gap closes.
  const GapMinimum tiny = reduced_gap_oracle(params(1e-9, 0.5), 100001);
  CHECK(tiny.minGap <= 1e-6);
}

TEST_CASE("outside the interior regime the grid minimum sits at x = 1") {
  const TwoLevelParams p = params(0.5, 0.95);
  REQUIRE(min_gap_location(p) > 1.0);
  const GapMinimum oracle = reduced_gap_oracle(p, 1000001);
  CHECK(std::abs(oracle.minGap - p.K * p.lambda0H) <= 1e-6);
  CHECK(oracle.argminX >= 0.999);
}
