#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qasvd/errors.hpp"

namespace qasvd {

// Real m x n information matrix. Immutable after construction; every
// operation that changes entries returns a new DataMatrix.
struct DataMatrix {
  Eigen::MatrixXd a;
  bool normalized = false;

  DataMatrix() = default;
  explicit DataMatrix(Eigen::MatrixXd entries, bool isNormalized = false);

  Eigen::Index rows() const { return a.rows(); }
  Eigen::Index cols() const { return a.cols(); }
};

// Singular triplet (lambda, v, u) with the residual ||G v - lambda v||
// measured on the Gram operator it was extracted from.
struct PrincipalComponent {
  double lambda = 0.0;
  double sigma = 0.0;
  Eigen::VectorXd v;
  Eigen::VectorXd u;
  double residual = 0.0;
};

// Shifts every column to mean zero and rescales it to unit variance
// (population 1/m convention). Throws ConstantColumn if some column has
// variance <= 1e-14 before scaling.
DataMatrix normalize_columns(const DataMatrix& a);

// u = A v / sqrt(lambda). Throws ZeroSingularValue for lambda <= 1e-14.
Eigen::VectorXd left_vector(const DataMatrix& a, const Eigen::VectorXd& v,
                            double lambda);

// Partial reconstruction  sum_{j<k} sigma_j u_j v_j^T.  k == 0 yields the
// zero matrix of matching shape (the components list then provides only the
// dimensions and must be nonempty).
Eigen::MatrixXd reconstruct(const std::vector<PrincipalComponent>& components,
                            std::size_t k);

// A minus its rank-one layer sigma u v^T.
DataMatrix deflate(const DataMatrix& a, const PrincipalComponent& c);

}  // namespace qasvd
