#pragma once

#include <Eigen/Dense>

#include "qasvd/gram.hpp"

namespace qasvd {

// Two eigenvalues closer than this (relative to the largest) are treated as
// degenerate; vector comparisons should then go through subspace projectors.
inline constexpr double kDegeneracyTol = 1e-8;

struct EigenDecomposition {
  Eigen::VectorXd eigenvalues;   // descending
  Eigen::MatrixXd eigenvectors;  // orthonormal columns, matching order
  Eigen::Index iterations = 0;   // Jacobi rotations applied
  double offDiagonalNorm = 0.0;  // final off-diagonal Frobenius norm
};

// Classical ground truth: cyclic Jacobi rotations on the explicit symmetric
// matrix. Chosen for transparency and unconditional correctness, not speed.
// Throws NotSymmetric when asymmetry exceeds 1e-10 * max|G|.
EigenDecomposition full_diagonalize(const GramOperator& g);

// Second, independent oracle: plain power iteration with a deterministic
// start vector, usable in implicit (matrix-free) mode. Converges when
// ||G v - lambda v|| <= tol * max(|lambda|, 1) on the unscaled operator.
// Throws MaxIterExceeded past maxIter. The left vector u is filled only
// when the operator carries its source data matrix.
PrincipalComponent power_iteration(const GramOperator& g, double tol,
                                   Eigen::Index maxIter);

}  // namespace qasvd
