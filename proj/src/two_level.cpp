#include "qasvd/two_level.hpp"

#include <cmath>
#include <limits>

#include "qasvd/errors.hpp"

namespace qasvd {

void TwoLevelParams::validate() const {
  if (!(K > 0.0)) {
    throw ConfigError("two-level model: K must be positive");
  }
  if (!(std::abs(alpha) <= 1.0)) {
    throw ConfigError("two-level model: alpha must lie in [-1, 1]");
  }
  if (!(lambda0H > 0.0)) {
    throw ConfigError("two-level model: Lambda0 must be positive");
  }
}

Eigen::Matrix2d system_matrix(const TwoLevelParams& p, double x) {
  p.validate();
  const double lam0 = p.K * p.lambda0H;  // top Gram eigenvalue lambda0
  Eigen::Matrix2d m;
  m(0, 0) = -lam0 * x + (1.0 - x) * p.lambda0H;
  m(0, 1) = -lam0 * x * p.alpha;
  m(1, 0) = -2.0 * p.lambda0H * (1.0 - x) * p.alpha;
  m(1, 1) = -(1.0 - x) * p.lambda0H;
  return m;
}

EnergyBranches energy_branches(const TwoLevelParams& p, double x) {
  p.validate();
  const double c = 2.0 * p.alpha * p.alpha - 1.0;
  double r = x * x * p.K * p.K + 4.0 * (1.0 - x) * (1.0 - x) +
             4.0 * x * (1.0 - x) * c * p.K;
  if (r < -1e-12) {
    throw NegativeDiscriminant("energy branches: radicand " +
                               std::to_string(r) + " at x = " +
                               std::to_string(x));
  }
  if (r < 0.0) r = 0.0;
  const double root = std::sqrt(r);
  EnergyBranches e;
  e.minus = 0.5 * p.lambda0H * (-x * p.K - root);
  e.plus = 0.5 * p.lambda0H * (-x * p.K + root);
  return e;
}

MixingCoefficients coefficients(const TwoLevelParams& p, double x) {
  const Eigen::Matrix2d m = system_matrix(p, x);
  const double e = energy_branches(p, x).minus;

  // The eigenvector annihilates each row of (M - E); the two candidate
  // directions come from the adjugate rows. Use the better-conditioned one.
  const Eigen::Vector2d fromRow1(-m(0, 1), m(0, 0) - e);
  const Eigen::Vector2d fromRow2(m(1, 1) - e, -m(1, 0));
  const double n1 = fromRow1.norm();
  const double n2 = fromRow2.norm();
  const double scale = m.cwiseAbs().maxCoeff() + std::abs(e);
  if (std::max(n1, n2) <= 1e-14 * std::max(scale, 1.0)) {
    throw IllConditioned(
        "mixing coefficients: system matrix is degenerate at x = " +
        std::to_string(x));
  }
  Eigen::Vector2d dir = (n1 >= n2) ? fromRow1 : fromRow2;

  // Physical normalization ||a v0 + b phi0|| = 1 in the non-orthogonal basis.
  const double q = dir(0) * dir(0) + dir(1) * dir(1) +
                   2.0 * dir(0) * dir(1) * p.alpha;
  if (!(q > 0.0)) {
    throw IllConditioned("mixing coefficients: null physical norm at x = " +
                         std::to_string(x));
  }
  dir /= std::sqrt(q);

  // Continuity from (a, b) = (0, 1): b stays nonnegative along the ground
  // branch; at the b = 0 endpoint the state is +-v0 and the sign of alpha
  // picks the continuous limit.
  if (dir(1) < 0.0 || (dir(1) == 0.0 && dir(0) * p.alpha < 0.0)) {
    dir = -dir;
  }
  return MixingCoefficients{dir(0), dir(1)};
}

namespace {

void require_mixing(const TwoLevelParams& p) {
  p.validate();
  const double mix = std::abs(p.alpha * (1.0 - p.alpha * p.alpha));
  if (mix < 1e-14) {
    throw DegenerateOverlap(
        "gap formula degenerate: alpha = " + std::to_string(p.alpha) +
        " gives no avoided crossing");
  }
}

}  // namespace

double min_gap(const TwoLevelParams& p) {
  require_mixing(p);
  const double a2 = p.alpha * p.alpha;
  const double num = p.K * p.K * a2 * (1.0 - a2);
  const double den = (2.0 + p.K) * (2.0 + p.K) - 8.0 * p.K * a2;
  return 4.0 * p.lambda0H * std::sqrt(num / den);
}

double min_gap_location(const TwoLevelParams& p) {
  require_mixing(p);
  const double c = 2.0 * p.alpha * p.alpha - 1.0;
  return (4.0 - 2.0 * c * p.K) / (p.K * p.K + 4.0 - 4.0 * c * p.K);
}

double time_scale(const TwoLevelParams& p) {
  const double gap = min_gap(p);
  return p.lambda0H / (gap * gap);
}

GapMinimum reduced_gap_oracle(const TwoLevelParams& p, Eigen::Index gridSize) {
  p.validate();
  if (gridSize < 3) {
    throw ConfigError("gap oracle: grid must have at least 3 points");
  }
  GapMinimum best;
  best.minGap = std::numeric_limits<double>::infinity();
  const double step = 1.0 / static_cast<double>(gridSize - 1);
  for (Eigen::Index i = 0; i < gridSize; ++i) {
    const double x = static_cast<double>(i) * step;
    const Eigen::Matrix2d m = system_matrix(p, x);
    const double tr = m(0, 0) + m(1, 1);
    const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    const double disc = std::max(tr * tr - 4.0 * det, 0.0);
    const double gap = std::sqrt(disc);  // |E+ - E-| of the 2x2 matrix
    if (gap < best.minGap) {
      best.minGap = gap;
      best.argminX = x;
    }
  }
  return best;
}

}  // namespace qasvd
