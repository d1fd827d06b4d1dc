#include "qasvd/spectrum.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "json.hpp"
#include "qasvd/errors.hpp"
#include "qasvd/io.hpp"
#include "qasvd/oracle.hpp"
#include "qasvd/two_level.hpp"

namespace qasvd {

double residual(const GramOperator& g, const PrincipalComponent& c) {
  if (c.v.size() != g.dim()) {
    throw DimensionMismatch("residual: component dimension mismatch");
  }
  return (g.apply_unscaled(c.v) - c.lambda * c.v).norm();
}

double default_anneal_time(Eigen::Index n) {
  if (n <= 1) {
    return 50.0;
  }
  TwoLevelParams p;
  p.K = 1.0;
  p.alpha = 1.0 / std::sqrt(static_cast<double>(n));
  p.lambda0H = 1.0;
  const double gap = min_gap(p);
  return 50.0 / (gap * gap);
}

namespace {

Eigen::VectorXd random_unit_reflector(Eigen::Index n) {
  Lcg64 rng{kRestartSeed};
  Eigen::VectorXd w(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    w(i) = rng.gauss();
  }
  return w / w.norm();
}

// Measures the triplet of candidate direction v on the unscaled operator.
PrincipalComponent measure(const DataMatrix& a, const GramOperator& g,
                           Eigen::VectorXd v) {
  PrincipalComponent c;
  const Eigen::VectorXd gv = g.apply_unscaled(v);
  c.lambda = v.dot(gv);
  c.sigma = std::sqrt(std::max(c.lambda, 0.0));
  c.residual = (gv - c.lambda * v).norm();
  c.v = std::move(v);
  if (c.lambda > 1e-14) {
    c.u = left_vector(a, c.v, c.lambda);
  } else {
    c.u = Eigen::VectorXd::Zero(a.rows());
  }
  return c;
}

// True when v has (numerically) no component outside the span of the
// accepted directions, i.e. Gram-Schmidt against them would annihilate it.
bool collapses_onto(const Eigen::VectorXd& v,
                    const std::vector<PrincipalComponent>& accepted) {
  Eigen::VectorXd w = v;
  for (const PrincipalComponent& prev : accepted) {
    w -= prev.v.dot(w) * prev.v;
  }
  return w.norm() <= 1e-8;
}

}  // namespace

PrincipalComponent top_component(
    const DataMatrix& a, const AnnealSchedule& schedule, double tol,
    Eigen::Index* restartsOut, double gramScale,
    const std::vector<PrincipalComponent>* priorComponents) {
  const Eigen::Index n = a.cols();
  if (a.a.cwiseAbs().maxCoeff() <= 0.0) {
    throw InputError("top_component: zero matrix has no principal component");
  }
  if (!(tol > 0.0)) {
    throw ConfigError("top_component: tol must be positive");
  }
  const GramOperator base =
      gram(a, n <= kDenseGramLimit ? GramMode::Explicit : GramMode::Implicit);
  const GramOperator scaled =
      gramScale > 0.0 ? base.with_scale(gramScale) : base.with_anneal_scale();

  AnnealSchedule attempt = schedule;
  if (!(attempt.T > 0.0)) {
    attempt.T = default_anneal_time(n);
  }
  attempt.traceStride = 0;

  double bestResidual = std::numeric_limits<double>::infinity();
  Eigen::Index failures = 0;

  // Ground-index cycle, then one rotated-basis retry: some basis vector has
  // overlap at least 1/sqrt(n) with the target, and the rotation covers the
  // adversarial case where every basis overlap is tiny but nonzero.
  for (Eigen::Index j = 0; j <= n; ++j) {
    const bool rotated = (j == n);
    InitialHamiltonian h0 = schedule.h0;
    h0.groundIndex = (schedule.h0.groundIndex + j) % n;
    GramOperator op = scaled;
    Eigen::VectorXd w;
    if (rotated) {
      h0.groundIndex = schedule.h0.groundIndex % n;
      w = random_unit_reflector(n);
      op = scaled.householder_conjugated(w);
    }
    const EvolveResult ev = evolve(op, h0, attempt);
    Eigen::VectorXd v = gauge_fix_real(ev.psi);
    if (rotated) {
      v = (v - 2.0 * w.dot(v) * w).eval();  // map back: v_G = Q v_QGQ
      Eigen::Index imax = 0;
      v.cwiseAbs().maxCoeff(&imax);
      if (v(imax) < 0.0) v = -v;
    }
    PrincipalComponent c = measure(a, base, std::move(v));
    if (c.residual <= tol * std::max(c.lambda, 1.0)) {
      if (priorComponents && collapses_onto(c.v, *priorComponents)) {
        ++failures;  // degenerate start state; cycle to the next basis vector
        continue;
      }
      if (restartsOut) *restartsOut += failures;
      return c;
    }
    bestResidual = std::min(bestResidual, c.residual);
    ++failures;
  }
  if (restartsOut) *restartsOut += failures;
  throw NotConverged(bestResidual, 0,
                     "top_component: best residual " +
                         std::to_string(bestResidual) + " above tolerance " +
                         std::to_string(tol) + " after " +
                         std::to_string(n + 1) + " attempts; increase T");
}

SpectrumResult top_k(const DataMatrix& a, Eigen::Index k,
                     const AnnealSchedule& schedule, double tol,
                     double gramScale) {
  const Eigen::Index rankCap = std::min(a.rows(), a.cols());
  if (k < 1 || k > rankCap) {
    throw IndexOutOfRange("top_k: k must lie in [1, " +
                          std::to_string(rankCap) + "], got " +
                          std::to_string(k));
  }
  const GramOperator orig =
      gram(a, a.cols() <= kDenseGramLimit ? GramMode::Explicit
                                          : GramMode::Implicit);
  SpectrumResult result;
  DataMatrix current = a;
  for (Eigen::Index j = 0; j < k; ++j) {
    PrincipalComponent c;
    try {
      c = top_component(current, schedule, tol, &result.restarts, gramScale,
                        &result.components);
    } catch (const NotConverged& e) {
      throw NotConverged(e.best_residual(), static_cast<long>(j),
                         "top_k: component " + std::to_string(j) +
                             " did not converge (best residual " +
                             std::to_string(e.best_residual()) + ")");
    }
    // Re-orthogonalize against accepted directions (modified Gram-Schmidt);
    // deflation is exact only in exact arithmetic.
    Eigen::VectorXd v = c.v;
    for (const PrincipalComponent& prev : result.components) {
      v -= prev.v.dot(v) * prev.v;
    }
    const double norm = v.norm();
    if (norm <= 1e-8) {
      throw NotConverged(c.residual, static_cast<long>(j),
                         "top_k: component " + std::to_string(j) +
                             " collapsed onto the accepted subspace");
    }
    v /= norm;
    // Re-measure on the original matrix so the reported triplet describes A,
    // then deflate with the same triplet.
    PrincipalComponent fixed = measure(a, orig, std::move(v));
    if (fixed.residual > tol * std::max(fixed.lambda, 1.0)) {
      throw NotConverged(fixed.residual, static_cast<long>(j),
                         "top_k: component " + std::to_string(j) +
                             " failed re-measurement on the original matrix");
    }
    current = deflate(current, fixed);
    result.components.push_back(std::move(fixed));
  }
  return result;
}

void attach_oracle_fidelity(SpectrumResult& result, const DataMatrix& a) {
  if (result.components.empty()) {
    result.perComponentFidelity.clear();
    return;
  }
  const EigenDecomposition oracle = full_diagonalize(gram(a));
  const Eigen::VectorXd& ev = oracle.eigenvalues;
  const double scale = std::max(std::abs(ev(0)), 1.0);
  result.perComponentFidelity.clear();
  for (std::size_t j = 0; j < result.components.size(); ++j) {
    const Eigen::Index jj = static_cast<Eigen::Index>(j);
    if (jj >= ev.size()) break;
    // Project onto the (possibly degenerate) oracle eigenspace around
    // eigenvalue j: degeneracy makes individual vectors non-comparable.
    double acc = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      if (std::abs(ev(i) - ev(jj)) <= kDegeneracyTol * scale) {
        const double dot = oracle.eigenvectors.col(i).dot(
            result.components[j].v);
        acc += dot * dot;
      }
    }
    result.perComponentFidelity.push_back(std::sqrt(acc));
  }
}

std::string result_to_json(const SpectrumResult& result) {
  nlohmann::ordered_json doc;
  doc["method"] = result.method;
  auto lambdas = nlohmann::ordered_json::array();
  auto sigmas = nlohmann::ordered_json::array();
  auto vs = nlohmann::ordered_json::array();
  auto us = nlohmann::ordered_json::array();
  auto residuals = nlohmann::ordered_json::array();
  for (const PrincipalComponent& c : result.components) {
    lambdas.push_back(c.lambda);
    sigmas.push_back(c.sigma);
    vs.push_back(std::vector<double>(c.v.data(), c.v.data() + c.v.size()));
    us.push_back(std::vector<double>(c.u.data(), c.u.data() + c.u.size()));
    residuals.push_back(c.residual);
  }
  doc["lambda"] = std::move(lambdas);
  doc["singular_values"] = std::move(sigmas);
  doc["v"] = std::move(vs);
  doc["u"] = std::move(us);
  doc["residuals"] = std::move(residuals);
  doc["restarts"] = result.restarts;
  if (result.perComponentFidelity.empty()) {
    doc["fidelity_vs_oracle"] = nullptr;
  } else {
    doc["fidelity_vs_oracle"] = result.perComponentFidelity;
  }
  return doc.dump(2) + "\n";
}

}  // namespace qasvd
