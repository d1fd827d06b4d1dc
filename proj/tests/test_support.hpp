#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "qasvd/io.hpp"

namespace testsupport {

// 3x2 demo data: two unit-norm columns with inner product 0.43, so the Gram
// matrix is [[1, 0.43], [0.43, 1]] with eigenpairs 1.43 @ (1,1)/sqrt(2) and
// 0.57 @ (1,-1)/sqrt(2).
inline Eigen::MatrixXd demo_matrix() {
  Eigen::MatrixXd a(3, 2);
  a << -0.69570264083015487, -0.68501459259346309,
      -0.022281597138145988, 0.72730107996599613,
      0.7179842379683008, -0.042286487372533092;
  return a;
}

// Symmetric 3x3 with spectrum {1.0, 0.45, 0.2}; the two lower eigenvalues
// sit close enough together that a too-short anneal cannot separate the top
// one, which makes it the canonical restart-exhaustion fixture.
inline Eigen::MatrixXd g3_matrix() {
  Eigen::MatrixXd g(3, 3);
  g << 0.5851049868766405, 0.1419947506561679, 0.27290026246719157,
      0.1419947506561679, 0.5979002624671916, 0.26010498687664035,
      0.27290026246719157, 0.26010498687664035, 0.46699475065616797;
  return g;
}

// Symmetric square root of g3_matrix(): a3 * a3 == g3 to machine precision,
// so a pipeline run on a3 sees exactly the g3 spectrum.
inline Eigen::MatrixXd a3_matrix() {
  Eigen::MatrixXd a(3, 3);
  a << 0.73741018438546091, 0.07275218319949936, 0.18983763241503979,
      0.07275218319949936, 0.74885462678998693, 0.17839319001051271,
      0.18983763241503976, 0.17839319001051268, 0.63176917757444684;
  return a;
}

// Row-major standard-normal fill from the deterministic LCG stream.
inline Eigen::MatrixXd lcg_matrix(Eigen::Index m, Eigen::Index n,
                                  std::uint64_t seed) {
  qasvd::Lcg64 rng(seed);
  Eigen::MatrixXd a(m, n);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      a(i, j) = rng.gauss();
    }
  }
  return a;
}

inline Eigen::VectorXd lcg_vector(Eigen::Index n, std::uint64_t seed) {
  qasvd::Lcg64 rng(seed);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v(i) = rng.gauss();
  }
  return v;
}

// Determinant by cofactor expansion: an intentionally naive, obviously
// correct alternative used to cross-check eigenvalue products.
inline double det_cofactor(const Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  if (n == 1) return a(0, 0);
  double det = 0.0;
  double sign = 1.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::MatrixXd minor(n - 1, n - 1);
    for (Eigen::Index r = 1; r < n; ++r) {
      Eigen::Index cc = 0;
      for (Eigen::Index c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = a(r, c);
      }
    }
    det += sign * a(0, j) * det_cofactor(minor);
    sign = -sign;
  }
  return det;
}

}  // namespace testsupport
