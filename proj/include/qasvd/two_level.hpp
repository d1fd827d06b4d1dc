#pragma once

#include <Eigen/Dense>

namespace qasvd {

// Reduction of the anneal to span{v0, phi0}: K = lambda0/Lambda0 and
// alpha = <v0|phi0> fully determine the two energy branches.
struct TwoLevelParams {
  double K = 1.0;
  double alpha = 0.0;
  double lambda0H = 1.0;  // Lambda0, the initial-Hamiltonian depth

  void validate() const;
};

struct EnergyBranches {
  double minus = 0.0;
  double plus = 0.0;
};

// Mixing coefficients of the ground branch state a(x)|v0> + b(x)|phi0>,
// normalized in the physical (non-orthogonal) basis: a^2 + b^2 + 2ab alpha = 1.
struct MixingCoefficients {
  double a = 0.0;
  double b = 0.0;
};

struct GapMinimum {
  double minGap = 0.0;
  double argminX = 0.0;
};

// The 2x2 system matrix acting on (a, b):
//   [ -lambda0 x + (1-x) Lambda0      -lambda0 x alpha  ]
//   [ -2 Lambda0 (1-x) alpha          -(1-x) Lambda0    ]
// Its eigenvalues are the two energy branches. The matrix is not symmetric:
// the basis {v0, phi0} is not orthogonal.
Eigen::Matrix2d system_matrix(const TwoLevelParams& p, double x);

// E+-(x) = (Lambda0/2) [ -xK +- sqrt(x^2 K^2 + 4(1-x)^2 + 4x(1-x)(2a^2-1)K) ].
// Throws NegativeDiscriminant if the radicand drops below -1e-12; values in
// [-1e-12, 0] are clamped to zero.
EnergyBranches energy_branches(const TwoLevelParams& p, double x);

// Ground-branch eigenvector of system_matrix, continuity-tracked from
// (a, b) = (0, 1) at x = 0. Throws IllConditioned at an exact degeneracy.
MixingCoefficients coefficients(const TwoLevelParams& p, double x);

// Closed-form minimum gap 4 Lambda0 sqrt(K^2 a^2 (1-a^2) / ((2+K)^2 - 8Ka^2)).
// This is the value at the stationary point of the gap, which lies inside
// [0, 1] exactly when 2 alpha^2 - 1 <= K/2; see min_gap_location().
// Throws DegenerateOverlap when alpha is 0 or +-1 to within 1e-14.
double min_gap(const TwoLevelParams& p);

// Stationary point x* = (4 - 2cK) / (K^2 + 4 - 4cK) with c = 2 alpha^2 - 1.
double min_gap_location(const TwoLevelParams& p);

// T = Lambda0 / min_gap^2 (hbar = 1): the adiabatic time-scale estimate.
double time_scale(const TwoLevelParams& p);

// Independent check: scans E+ - E- on a uniform gridSize-point grid over
// x in [0, 1], extracting both eigenvalues of system_matrix directly via
// trace and determinant. Returns the grid minimum and its location.
GapMinimum reduced_gap_oracle(const TwoLevelParams& p, Eigen::Index gridSize);

}  // namespace qasvd
