#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qasvd/anneal.hpp"

namespace qasvd {

// Largest T * Hbound for which the power series is evaluated: beyond this
// the intermediate terms overflow double precision long before they decay.
inline constexpr double kSeriesRangeLimit = 30.0;

// psi(t) = sum_n (t/T)^n f_n with time-independent terms f_n.
struct SeriesExpansion {
  std::vector<Eigen::VectorXcd> terms;  // f_0 ... f_N
  double T = 0.0;
  Eigen::Index truncationOrder = 0;     // N, the index of the last term
  double tailNorm = 0.0;                // ||f_N||
};

struct SeriesSum {
  Eigen::VectorXcd state;   // normalized sum
  double prenormNorm = 0.0; // norm of the raw sum before renormalization
};

// Builds the terms by the recurrence
//   f_0 = phi_0,   f_1 = (T/i) H0 f_0,
//   f_n = (T/(i n)) [ H0 f_{n-1} - (G + H0) f_{n-2} ]   (n >= 2),
// stopping at the first n with ||f_n|| <= tailTol * max_k<n ||f_k||.
// Throws SeriesRange when T * Hbound > 30 and TruncationNotReached when
// maxOrder is hit with the tail still above threshold.
SeriesExpansion series_terms(const GramOperator& g,
                             const InitialHamiltonian& h0, double T,
                             Eigen::Index maxOrder, double tailTol = 1e-14);

// sum_n f_n, renormalized; the raw norm is reported alongside.
SeriesSum series_sum(const SeriesExpansion& expansion);

}  // namespace qasvd
