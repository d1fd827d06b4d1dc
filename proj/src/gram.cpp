#include "qasvd/gram.hpp"

#include <cmath>

#include "qasvd/errors.hpp"

namespace qasvd {

GramOperator GramOperator::from_matrix(Eigen::MatrixXd g) {
  if (g.rows() != g.cols()) {
    throw DimensionMismatch("GramOperator: matrix must be square");
  }
  if (g.rows() < 1) {
    throw DimensionMismatch("GramOperator: dimension must be positive");
  }
  const double magnitude = g.cwiseAbs().maxCoeff();
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(magnitude, 1.0)) {
    throw NotSymmetric("GramOperator: matrix is not symmetric");
  }
  GramOperator out;
  out.dim_ = g.rows();
  out.g_ = 0.5 * (g + g.transpose());  // exact symmetry for downstream checks
  return out;
}

GramOperator GramOperator::explicit_from(const DataMatrix& a) {
  if (a.cols() > kDenseGramLimit) {
    throw DimensionMismatch("GramOperator: explicit Gram limited to n <= " +
                            std::to_string(kDenseGramLimit));
  }
  GramOperator out;
  out.dim_ = a.cols();
  Eigen::MatrixXd g = a.a.transpose() * a.a;
  out.g_ = 0.5 * (g + g.transpose());
  return out;
}

GramOperator GramOperator::implicit_from(std::shared_ptr<const DataMatrix> a) {
  if (!a) {
    throw InputError("GramOperator: null data matrix handle");
  }
  GramOperator out;
  out.dim_ = a->cols();
  out.implicitSrc_ = std::move(a);
  return out;
}

GramOperator GramOperator::with_scale(double s) const {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw InputError("GramOperator: scale factor must be positive and finite");
  }
  GramOperator out = *this;
  out.scale_ = s;
  return out;
}

GramOperator GramOperator::with_anneal_scale() const {
  const double bound = row_sum_bound();
  return with_scale(bound > 0.0 ? bound : 1.0);
}

GramOperator GramOperator::householder_conjugated(const Eigen::VectorXd& w) const {
  if (w.size() != dim_) {
    throw DimensionMismatch("GramOperator: reflector length " +
                            std::to_string(w.size()) + " != dimension " +
                            std::to_string(dim_));
  }
  const double norm = w.norm();
  if (norm <= 1e-14) {
    throw InputError("GramOperator: reflector must be nonzero");
  }
  GramOperator out = *this;
  out.reflector_ = w / norm;
  return out;
}

namespace {

// Q v with Q = I - 2 w w^T for unit w.
inline Eigen::VectorXd reflect(const Eigen::VectorXd& w,
                               const Eigen::VectorXd& v) {
  return v - 2.0 * (w.dot(v)) * w;
}

}  // namespace

Eigen::VectorXd GramOperator::raw_apply(const Eigen::VectorXd& v) const {
  if (implicitSrc_) {
    return implicitSrc_->a.transpose() * (implicitSrc_->a * v);
  }
  return g_ * v;
}

Eigen::VectorXd GramOperator::apply(const Eigen::VectorXd& v) const {
  return apply_unscaled(v) / scale_;
}

Eigen::VectorXcd GramOperator::apply(const Eigen::VectorXcd& v) const {
  return apply_unscaled(v) / scale_;
}

Eigen::VectorXd GramOperator::apply_unscaled(const Eigen::VectorXd& v) const {
  if (v.size() != dim_) {
    throw DimensionMismatch("GramOperator: vector length " +
                            std::to_string(v.size()) + " != dimension " +
                            std::to_string(dim_));
  }
  if (reflector_.size() == 0) {
    return raw_apply(v);
  }
  return reflect(reflector_, raw_apply(reflect(reflector_, v)));
}

Eigen::VectorXcd GramOperator::apply_unscaled(const Eigen::VectorXcd& v) const {
  Eigen::VectorXd re = apply_unscaled(Eigen::VectorXd(v.real()));
  Eigen::VectorXd im = apply_unscaled(Eigen::VectorXd(v.imag()));
  Eigen::VectorXcd out(v.size());
  out.real() = re;
  out.imag() = im;
  return out;
}

double GramOperator::row_sum_bound() const {
  if (implicitSrc_) {
    const Eigen::MatrixXd& a = implicitSrc_->a;
    double maxNorm = 0.0;
    double sumNorm = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const double nj = a.col(j).norm();
      maxNorm = std::max(maxNorm, nj);
      sumNorm += nj;
    }
    return maxNorm * sumNorm;
  }
  return g_.cwiseAbs().rowwise().sum().maxCoeff();
}

const Eigen::MatrixXd& GramOperator::matrix() const {
  if (implicitSrc_) {
    throw InputError("GramOperator: no dense matrix for an implicit operator");
  }
  return g_;
}

GramOperator gram(const DataMatrix& a, GramMode mode) {
  if (mode == GramMode::Implicit) {
    return GramOperator::implicit_from(std::make_shared<DataMatrix>(a));
  }
  return GramOperator::explicit_from(a);
}

Eigen::VectorXd gram_apply(const GramOperator& g, const Eigen::VectorXd& v) {
  return g.apply(v);
}

}  // namespace qasvd
