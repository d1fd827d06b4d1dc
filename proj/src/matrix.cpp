#include "qasvd/matrix.hpp"

#include <cmath>

#include "qasvd/errors.hpp"

namespace qasvd {

DataMatrix::DataMatrix(Eigen::MatrixXd entries, bool isNormalized)
    : a(std::move(entries)), normalized(isNormalized) {
  if (a.rows() < 1 || a.cols() < 1) {
    throw DimensionMismatch("DataMatrix: dimensions must be positive");
  }
  if (!a.allFinite()) {
    throw InputError("DataMatrix: entries must be finite");
  }
}

DataMatrix normalize_columns(const DataMatrix& a) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  Eigen::MatrixXd out(m, n);
  const double invM = 1.0 / static_cast<double>(m);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double mean = a.a.col(j).mean();
    Eigen::VectorXd centered = a.a.col(j).array() - mean;
    const double variance = centered.squaredNorm() * invM;
    if (variance <= 1e-14) {
      throw ConstantColumn(static_cast<long>(j),
                           "normalize_columns: column " + std::to_string(j) +
                               " has (numerically) zero variance");
    }
    out.col(j) = centered / std::sqrt(variance);
  }
  return DataMatrix(std::move(out), true);
}

Eigen::VectorXd left_vector(const DataMatrix& a, const Eigen::VectorXd& v,
                            double lambda) {
  if (v.size() != a.cols()) {
    throw DimensionMismatch("left_vector: v has length " +
                            std::to_string(v.size()) + " but matrix has " +
                            std::to_string(a.cols()) + " columns");
  }
  if (lambda <= 1e-14) {
    throw ZeroSingularValue("left_vector: eigenvalue " +
                            std::to_string(lambda) +
                            " is too small for a stable left vector");
  }
  return (a.a * v) / std::sqrt(lambda);
}

Eigen::MatrixXd reconstruct(const std::vector<PrincipalComponent>& components,
                            std::size_t k) {
  if (components.empty()) {
    throw DimensionMismatch(
        "reconstruct: need at least one component to fix the output shape");
  }
  if (k > components.size()) {
    throw IndexOutOfRange("reconstruct: k=" + std::to_string(k) +
                          " exceeds component count " +
                          std::to_string(components.size()));
  }
  const Eigen::Index m = components.front().u.size();
  const Eigen::Index n = components.front().v.size();
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(m, n);
  for (std::size_t j = 0; j < k; ++j) {
    const PrincipalComponent& c = components[j];
    if (c.u.size() != m || c.v.size() != n) {
      throw DimensionMismatch("reconstruct: component " + std::to_string(j) +
                              " shape differs from the first component");
    }
    acc.noalias() += c.sigma * c.u * c.v.transpose();
  }
  return acc;
}

DataMatrix deflate(const DataMatrix& a, const PrincipalComponent& c) {
  if (c.u.size() != a.rows() || c.v.size() != a.cols()) {
    throw DimensionMismatch("deflate: component does not match matrix shape");
  }
  return DataMatrix(a.a - c.sigma * c.u * c.v.transpose(), false);
}

}  // namespace qasvd
