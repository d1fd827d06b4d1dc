#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "qasvd/gram.hpp"

namespace qasvd {

// Diagonal initial Hamiltonian: -Lambda0 on the ground basis vector,
// +Lambda on every other basis vector. Units: hbar = epsilon = 1.
struct InitialHamiltonian {
  double lambda0 = 1.0;     // ground-state depth
  double lambdaExc = 1.0;   // excited-level energy
  Eigen::Index groundIndex = 0;

  void validate(Eigen::Index n) const;
  Eigen::VectorXd diagonal(Eigen::Index n) const;
};

enum class Integrator { Euler, EulerRenorm, Midpoint };

// Total time T (units hbar/epsilon), step policy and integrator choice.
// stepCount == 0 selects N = ceil(10 T Hbound) so that dt ||H|| <= 0.1.
// h0 carries the initial-Hamiltonian parameters for pipeline callers;
// evolve() itself takes the InitialHamiltonian explicitly.
struct AnnealSchedule {
  double T = 0.0;
  Eigen::Index stepCount = 0;
  Integrator integrator = Integrator::Midpoint;
  Eigen::Index traceStride = 0;  // 0 = no trace
  InitialHamiltonian h0{};
};

// Sampled diagnostics along the anneal. rayleigh is the instantaneous
// energy <psi|H(x)|psi>/<psi|psi> of the Hamiltonian as evolved (including
// any Gram scale factor). overlap is filled only when a reference vector
// was supplied to evolve().
struct AnnealTrace {
  std::vector<double> t;
  std::vector<double> x;
  std::vector<double> rayleigh;
  std::vector<double> norm;
  std::vector<double> overlap;
};

struct EvolveResult {
  Eigen::VectorXcd psi;
  AnnealTrace trace;
  Eigen::Index steps = 0;
};

// max(Lambda0, Lambda, rowSumBound(G)/s): cheap bound on ||H(x)|| over [0,1].
double hamiltonian_bound(const GramOperator& g, const InitialHamiltonian& h0);

Eigen::Index auto_step_count(double T, double hbound);

// Basis vector e_groundIndex with zero imaginary parts.
Eigen::VectorXcd initial_state(const InitialHamiltonian& h0, Eigen::Index n);

// H(x) psi = -x (G psi) + (1-x) (H0 psi), using the operator's scale.
Eigen::VectorXcd hamiltonian_apply(const GramOperator& g,
                                   const InitialHamiltonian& h0, double x,
                                   const Eigen::VectorXcd& psi);

// Integrates the Schrodinger equation from initial_state at t = 0 to t = T.
//   Euler:       psi <- psi - i dt H(x_k) psi        (x_k = k/N)
//   EulerRenorm: Euler plus per-step renormalization
//   Midpoint:    (I + i dt/2 H(x_mid)) psi' = (I - i dt/2 H(x_mid)) psi,
//                solved by fixed-point iteration (norm-preserving)
// Throws NormBlowup when plain Euler leaves the norm window [0.5, 2].
EvolveResult evolve(const GramOperator& g, const InitialHamiltonian& h0,
                    const AnnealSchedule& schedule,
                    const Eigen::VectorXcd* overlapRef = nullptr);

// Re<psi|G|psi>/<psi|psi> on the UNSCALED operator.
double rayleigh_quotient(const GramOperator& g, const Eigen::VectorXcd& psi);

// |<ref|psi>| / (||ref|| ||psi||): phase-invariant overlap in [0, 1].
double fidelity(const Eigen::VectorXcd& psi, const Eigen::VectorXcd& ref);

// Rotates the global phase so the largest-magnitude amplitude is real
// positive.
Eigen::VectorXcd gauge_fix(Eigen::VectorXcd psi);

// gauge_fix, drop the (small) imaginary residue, renormalize.
Eigen::VectorXd gauge_fix_real(const Eigen::VectorXcd& psi);

}  // namespace qasvd
