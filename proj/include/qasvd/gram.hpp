#pragma once

#include <Eigen/Dense>
#include <memory>

#include "qasvd/matrix.hpp"

namespace qasvd {

enum class GramMode { Explicit, Implicit };

// Largest n for which the dense n x n Gram matrix is materialized.
inline constexpr Eigen::Index kDenseGramLimit = 4096;

// The Hermitian positive-semidefinite action v -> A^T (A v), either as a
// materialized symmetric matrix or as a matrix-free handle, with an optional
// positive scale factor applied as G/s. An optional Householder reflection
// conjugates the operator (Q G Q with Q = I - 2 w w^T) so annealing can be
// restarted in a rotated basis without touching the data.
class GramOperator {
 public:
  GramOperator() = default;

  // Dense symmetric matrix supplied directly (tests, conjugation, demos).
  static GramOperator from_matrix(Eigen::MatrixXd g);
  // Materialized A^T A.
  static GramOperator explicit_from(const DataMatrix& a);
  // Matrix-free handle; the DataMatrix must outlive the operator.
  static GramOperator implicit_from(std::shared_ptr<const DataMatrix> a);

  Eigen::Index dim() const { return dim_; }
  bool is_explicit() const { return !implicitSrc_; }
  double scale() const { return scale_; }
  // The data matrix behind an implicit operator; null for explicit ones.
  const std::shared_ptr<const DataMatrix>& source() const {
    return implicitSrc_;
  }

  // Returns a copy with scale factor s (applied as G/s).
  GramOperator with_scale(double s) const;
  // Returns a copy scaled by the max-abs-row-sum bound, the default for
  // annealing: it keeps the scaled top eigenvalue of order one.
  GramOperator with_anneal_scale() const;
  // Returns a copy whose action is Q G Q for the Householder reflection
  // defined by unit vector w (Q is symmetric, so this is a conjugation).
  GramOperator householder_conjugated(const Eigen::VectorXd& w) const;

  // (1/s) G v.
  Eigen::VectorXd apply(const Eigen::VectorXd& v) const;
  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;
  // G v with no scale.
  Eigen::VectorXd apply_unscaled(const Eigen::VectorXd& v) const;
  Eigen::VectorXcd apply_unscaled(const Eigen::VectorXcd& v) const;

  // Upper bound on the top eigenvalue of the unscaled G: the max absolute
  // row sum when explicit; the Cauchy-Schwarz bound
  // max_j ||a_j|| * sum_k ||a_k|| over columns when implicit.
  double row_sum_bound() const;

  // Dense matrix view; only valid for explicit operators.
  const Eigen::MatrixXd& matrix() const;

 private:
  Eigen::MatrixXd g_;                             // explicit storage
  std::shared_ptr<const DataMatrix> implicitSrc_; // implicit handle
  Eigen::VectorXd reflector_;                     // empty = no conjugation
  double scale_ = 1.0;
  Eigen::Index dim_ = 0;

  Eigen::VectorXd raw_apply(const Eigen::VectorXd& v) const;
};

// mode Explicit materializes A^T A (n <= 4096); Implicit stores a handle.
GramOperator gram(const DataMatrix& a, GramMode mode = GramMode::Explicit);

// (1/s) G v with dimension checking.
Eigen::VectorXd gram_apply(const GramOperator& g, const Eigen::VectorXd& v);

}  // namespace qasvd
