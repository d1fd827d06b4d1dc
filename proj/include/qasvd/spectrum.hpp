#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "qasvd/anneal.hpp"
#include "qasvd/matrix.hpp"

namespace qasvd {

// Fixed seed for the last-resort random-rotation restart, so identical runs
// are byte-identical.
inline constexpr unsigned long long kRestartSeed = 20240817ULL;

struct SpectrumResult {
  std::vector<PrincipalComponent> components;      // lambda descending
  std::vector<double> perComponentFidelity;        // empty when not computed
  Eigen::Index restarts = 0;
  std::string method = "annealing";
};

// ||G v - lambda v|| on the unscaled operator.
double residual(const GramOperator& g, const PrincipalComponent& c);

// Default per-component anneal time 50 / ghat^2, where ghat is the model
// minimum gap at K = 1, alpha = 1/sqrt(n): the a-priori schedule when the
// actual overlap is unknown.
double default_anneal_time(Eigen::Index n);

// Anneals the scaled Gram operator of A and reads the dominant triplet:
// lambda by Rayleigh quotient on the unscaled G, v as the gauge-fixed final
// state, u = A v / sqrt(lambda). A component is accepted only when
// residual <= tol * max(lambda, 1). On failure the initial state is retried
// with the ground index cycling 0, 1, ..., n-1, then once more in a
// deterministically rotated basis; after n+1 failed attempts throws
// NotConverged. schedule.h0 provides Lambda0/Lambda and the starting ground
// index; restartsOut (optional) accumulates the failed-attempt count.
// gramScale <= 0 selects the default row-sum scaling; any positive value is
// used verbatim (1 = no scaling). The returned triplet is scale-invariant.
// priorComponents (optional) lists already-accepted directions: a candidate
// whose projection off their span (essentially) vanishes is treated as a
// failed attempt, so degenerate spectra cycle to the next ground index
// instead of returning a duplicate of an accepted vector.
PrincipalComponent top_component(
    const DataMatrix& a, const AnnealSchedule& schedule, double tol,
    Eigen::Index* restartsOut = nullptr, double gramScale = 0.0,
    const std::vector<PrincipalComponent>* priorComponents = nullptr);

// Iterates top_component and deflation k times. Each accepted right vector
// is re-orthogonalized against its predecessors (modified Gram-Schmidt),
// then lambda, u and the residual are re-measured on the ORIGINAL matrix so
// the reported triplets describe A itself, not the deflated remnants.
SpectrumResult top_k(const DataMatrix& a, Eigen::Index k,
                     const AnnealSchedule& schedule, double tol,
                     double gramScale = 0.0);

// Fills result.perComponentFidelity against a full diagonalization of
// A^T A. Near-degenerate oracle eigenvalues (within 1e-8 relative) are
// grouped and compared through the subspace projector.
void attach_oracle_fidelity(SpectrumResult& result, const DataMatrix& a);

// The JSON result document shared by the decompose/oracle/image commands.
std::string result_to_json(const SpectrumResult& result);

}  // namespace qasvd
