#include "qasvd/series.hpp"

#include <cmath>
#include <complex>

#include "qasvd/errors.hpp"

namespace qasvd {

SeriesExpansion series_terms(const GramOperator& g,
                             const InitialHamiltonian& h0, double T,
                             Eigen::Index maxOrder, double tailTol) {
  const Eigen::Index n = g.dim();
  h0.validate(n);
  if (!(T > 0.0)) {
    throw ConfigError("series: T must be positive");
  }
  if (maxOrder < 2) {
    throw ConfigError("series: maxOrder must be at least 2");
  }
  if (!(tailTol > 0.0)) {
    throw ConfigError("series: tailTol must be positive");
  }
  const double range = T * hamiltonian_bound(g, h0);
  if (range > kSeriesRangeLimit) {
    throw SeriesRange("series: T * Hbound = " + std::to_string(range) +
                      " exceeds the usable range " +
                      std::to_string(kSeriesRangeLimit) +
                      "; use the stepper instead");
  }

  const std::complex<double> overI{0.0, -1.0};  // 1/i
  const Eigen::VectorXcd d =
      h0.diagonal(n).cast<std::complex<double>>();
  auto applyH0 = [&d](const Eigen::VectorXcd& f) -> Eigen::VectorXcd {
    return (d.array() * f.array()).matrix();
  };

  SeriesExpansion out;
  out.T = T;
  out.terms.push_back(initial_state(h0, n));
  double maxNorm = 1.0;

  Eigen::VectorXcd f1 = overI * T * applyH0(out.terms[0]);
  out.terms.push_back(f1);
  double norm = f1.norm();
  if (norm <= tailTol * maxNorm) {
    out.truncationOrder = 1;
    out.tailNorm = norm;
    return out;
  }
  maxNorm = std::max(maxNorm, norm);

  for (Eigen::Index k = 2; k <= maxOrder; ++k) {
    const Eigen::VectorXcd& prev1 = out.terms[k - 1];
    const Eigen::VectorXcd& prev2 = out.terms[k - 2];
    Eigen::VectorXcd fk =
        overI * (T / static_cast<double>(k)) *
        (applyH0(prev1) - g.apply(prev2) - applyH0(prev2));
    norm = fk.norm();
    out.terms.push_back(std::move(fk));
    if (norm <= tailTol * maxNorm) {
      out.truncationOrder = k;
      out.tailNorm = norm;
      return out;
    }
    maxNorm = std::max(maxNorm, norm);
  }
  throw TruncationNotReached(
      "series: tail norm " + std::to_string(norm) + " still above " +
      std::to_string(tailTol) + " * " + std::to_string(maxNorm) +
      " after " + std::to_string(maxOrder) + " terms");
}

SeriesSum series_sum(const SeriesExpansion& expansion) {
  if (expansion.terms.empty()) {
    throw InputError("series_sum: empty expansion");
  }
  Eigen::VectorXcd acc =
      Eigen::VectorXcd::Zero(expansion.terms.front().size());
  for (const Eigen::VectorXcd& f : expansion.terms) {
    acc += f;
  }
  SeriesSum out;
  out.prenormNorm = acc.norm();
  if (out.prenormNorm <= 0.0) {
    throw NumericError("series_sum: states cancelled to the zero vector");
  }
  out.state = acc / out.prenormNorm;
  return out;
}

}  // namespace qasvd
