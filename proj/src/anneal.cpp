#include "qasvd/anneal.hpp"

#include <cmath>
#include <complex>

#include "qasvd/errors.hpp"

namespace qasvd {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
}

void InitialHamiltonian::validate(Eigen::Index n) const {
  if (!(lambda0 > 0.0) || !(lambdaExc > 0.0)) {
    throw ConfigError("initial Hamiltonian levels must be positive");
  }
  if (groundIndex < 0 || groundIndex >= n) {
    throw IndexOutOfRange("groundIndex " + std::to_string(groundIndex) +
                          " outside [0, " + std::to_string(n) + ")");
  }
}

Eigen::VectorXd InitialHamiltonian::diagonal(Eigen::Index n) const {
  validate(n);
  Eigen::VectorXd d = Eigen::VectorXd::Constant(n, lambdaExc);
  d(groundIndex) = -lambda0;
  return d;
}

double hamiltonian_bound(const GramOperator& g, const InitialHamiltonian& h0) {
  return std::max({h0.lambda0, h0.lambdaExc, g.row_sum_bound() / g.scale()});
}

Eigen::Index auto_step_count(double T, double hbound) {
  if (!(T > 0.0)) {
    throw ConfigError("anneal time T must be positive");
  }
  const double n = std::ceil(10.0 * T * hbound);
  if (n > 5e9) {
    throw ConfigError("automatic step count " + std::to_string(n) +
                      " is unreasonably large; rescale the operator");
  }
  return std::max<Eigen::Index>(1, static_cast<Eigen::Index>(n));
}

Eigen::VectorXcd initial_state(const InitialHamiltonian& h0, Eigen::Index n) {
  h0.validate(n);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(n);
  psi(h0.groundIndex) = 1.0;
  return psi;
}

Eigen::VectorXcd hamiltonian_apply(const GramOperator& g,
                                   const InitialHamiltonian& h0, double x,
                                   const Eigen::VectorXcd& psi) {
  if (psi.size() != g.dim()) {
    throw DimensionMismatch("hamiltonian_apply: state length " +
                            std::to_string(psi.size()) + " != dimension " +
                            std::to_string(g.dim()));
  }
  if (x < 0.0 || x > 1.0) {
    throw ConfigError("hamiltonian_apply: x must lie in [0, 1]");
  }
  const Eigen::VectorXd d = h0.diagonal(g.dim());
  Eigen::VectorXcd out =
      ((1.0 - x) * d.array().cast<std::complex<double>>() * psi.array())
          .matrix();
  if (x != 0.0) {
    out.noalias() -= x * g.apply(psi);
  }
  return out;
}

namespace {

double scaled_rayleigh(const GramOperator& g, const InitialHamiltonian& h0,
                       double x, const Eigen::VectorXcd& psi) {
  const double n2 = psi.squaredNorm();
  if (n2 <= 0.0) return 0.0;
  return std::real(psi.dot(hamiltonian_apply(g, h0, x, psi))) / n2;
}

void record(AnnealTrace& trace, const GramOperator& g,
            const InitialHamiltonian& h0, double t, double x,
            const Eigen::VectorXcd& psi, const Eigen::VectorXcd* ref) {
  trace.t.push_back(t);
  trace.x.push_back(x);
  trace.rayleigh.push_back(scaled_rayleigh(g, h0, x, psi));
  trace.norm.push_back(psi.norm());
  if (ref) {
    trace.overlap.push_back(fidelity(psi, *ref));
  }
}

// Solves (I + i dt/2 H(x)) y = rhs by fixed-point iteration
// y <- rhs - i dt/2 H y; contraction requires dt ||H|| / 2 < 1.
Eigen::VectorXcd solve_midpoint(const GramOperator& g,
                                const InitialHamiltonian& h0, double x,
                                double dt, const Eigen::VectorXcd& rhs) {
  Eigen::VectorXcd y = rhs;
  const double floor = 1e-15 * std::max(rhs.norm(), 1e-300);
  for (int iter = 0; iter < 200; ++iter) {
    Eigen::VectorXcd next =
        rhs - kI * (0.5 * dt) * hamiltonian_apply(g, h0, x, y);
    const double delta = (next - y).norm();
    y.swap(next);
    if (delta <= floor) {
      return y;
    }
  }
  throw MaxIterExceeded(
      "midpoint solve did not contract; decrease dt (increase stepCount)");
}

}  // namespace

EvolveResult evolve(const GramOperator& g, const InitialHamiltonian& h0,
                    const AnnealSchedule& schedule,
                    const Eigen::VectorXcd* overlapRef) {
  const Eigen::Index n = g.dim();
  h0.validate(n);
  if (!(schedule.T > 0.0)) {
    throw ConfigError("anneal time T must be positive");
  }
  Eigen::Index steps = schedule.stepCount;
  if (steps == 0) {
    steps = auto_step_count(schedule.T, hamiltonian_bound(g, h0));
  }
  if (steps < 1) {
    throw ConfigError("stepCount must be positive");
  }
  const double dt = schedule.T / static_cast<double>(steps);
  const double invSteps = 1.0 / static_cast<double>(steps);

  EvolveResult result;
  result.steps = steps;
  Eigen::VectorXcd psi = initial_state(h0, n);
  const Eigen::Index stride = schedule.traceStride;
  if (stride > 0) {
    record(result.trace, g, h0, 0.0, 0.0, psi, overlapRef);
  }

  for (Eigen::Index k = 0; k < steps; ++k) {
    switch (schedule.integrator) {
      case Integrator::Euler:
      case Integrator::EulerRenorm: {
        const double x = static_cast<double>(k) * invSteps;
        psi -= kI * dt * hamiltonian_apply(g, h0, x, psi);
        if (schedule.integrator == Integrator::EulerRenorm) {
          psi /= psi.norm();
        } else {
          const double norm = psi.norm();
          if (norm < 0.5 || norm > 2.0) {
            throw NormBlowup("euler norm " + std::to_string(norm) +
                             " left [0.5, 2] at step " + std::to_string(k + 1) +
                             "; decrease dt or use euler-renorm/midpoint");
          }
        }
        break;
      }
      case Integrator::Midpoint: {
        const double xMid = (static_cast<double>(k) + 0.5) * invSteps;
        const Eigen::VectorXcd rhs =
            psi - kI * (0.5 * dt) * hamiltonian_apply(g, h0, xMid, psi);
        psi = solve_midpoint(g, h0, xMid, dt, rhs);
        break;
      }
    }
    if (stride > 0 && ((k + 1) % stride == 0 || k + 1 == steps)) {
      const double x = static_cast<double>(k + 1) * invSteps;
      record(result.trace, g, h0, dt * static_cast<double>(k + 1), x, psi,
             overlapRef);
    }
  }

  result.psi = std::move(psi);
  return result;
}

double rayleigh_quotient(const GramOperator& g, const Eigen::VectorXcd& psi) {
  const double n2 = psi.squaredNorm();
  if (n2 <= 0.0) {
    throw InputError("rayleigh_quotient: zero state");
  }
  return std::real(psi.dot(g.apply_unscaled(psi))) / n2;
}

double fidelity(const Eigen::VectorXcd& psi, const Eigen::VectorXcd& ref) {
  const double denom = psi.norm() * ref.norm();
  if (denom <= 0.0) {
    throw InputError("fidelity: zero-norm argument");
  }
  return std::abs(ref.dot(psi)) / denom;
}

Eigen::VectorXcd gauge_fix(Eigen::VectorXcd psi) {
  Eigen::Index imax = 0;
  psi.cwiseAbs().maxCoeff(&imax);
  const std::complex<double> amp = psi(imax);
  const double mag = std::abs(amp);
  if (mag > 0.0) {
    psi *= std::conj(amp) / mag;
  }
  return psi;
}

Eigen::VectorXd gauge_fix_real(const Eigen::VectorXcd& psi) {
  Eigen::VectorXd re = gauge_fix(psi).real();
  const double norm = re.norm();
  if (norm <= 0.0) {
    throw InputError("gauge_fix_real: zero state");
  }
  return re / norm;
}

}  // namespace qasvd
