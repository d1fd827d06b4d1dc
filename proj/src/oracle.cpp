#include "qasvd/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "qasvd/errors.hpp"
#include "qasvd/io.hpp"
#include "qasvd/matrix.hpp"

namespace qasvd {

namespace {

// Flips the sign of v so its largest-magnitude entry is positive, matching
// the gauge convention of the annealed vectors.
void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  if (v(imax) < 0.0) v = -v;
}

}  // namespace

EigenDecomposition full_diagonalize(const GramOperator& g) {
  if (!g.is_explicit()) {
    throw InputError("full_diagonalize: needs an explicit operator");
  }
  Eigen::MatrixXd a = g.matrix();
  const Eigen::Index n = a.rows();
  const double magnitude = std::max(a.cwiseAbs().maxCoeff(), 1e-300);
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-10 * magnitude) {
    throw NotSymmetric("full_diagonalize: input is not symmetric");
  }
  a = 0.5 * (a + a.transpose());

  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  EigenDecomposition out;

  auto offNorm = [&a, n]() {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        s += 2.0 * a(i, j) * a(i, j);
      }
    }
    return std::sqrt(s);
  };

  const double stop = 1e-13 * std::max(a.norm(), 1e-300);
  constexpr int kMaxSweeps = 100;
  int sweep = 0;
  for (; sweep < kMaxSweeps && offNorm() > stop; ++sweep) {
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        const Eigen::VectorXd colP = a.col(p);
        const Eigen::VectorXd colQ = a.col(q);
        a.col(p) = c * colP - s * colQ;
        a.col(q) = s * colP + c * colQ;
        const Eigen::RowVectorXd rowP = a.row(p);
        const Eigen::RowVectorXd rowQ = a.row(q);
        a.row(p) = c * rowP - s * rowQ;
        a.row(q) = s * rowP + c * rowQ;
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        const Eigen::VectorXd vp = v.col(p);
        const Eigen::VectorXd vq = v.col(q);
        v.col(p) = c * vp - s * vq;
        v.col(q) = s * vp + c * vq;
        ++out.iterations;
      }
    }
  }
  if (sweep == kMaxSweeps) {
    throw MaxIterExceeded("full_diagonalize: Jacobi sweeps did not converge");
  }
  out.offDiagonalNorm = offNorm();

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&a](Eigen::Index i, Eigen::Index j) {
                     return a(i, i) > a(j, j);
                   });
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = a(order[static_cast<std::size_t>(k)],
                           order[static_cast<std::size_t>(k)]);
    out.eigenvectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
    fix_sign(out.eigenvectors.col(k));
  }
  return out;
}

PrincipalComponent power_iteration(const GramOperator& g, double tol,
                                   Eigen::Index maxIter) {
  if (!(tol > 0.0)) {
    throw ConfigError("power_iteration: tol must be positive");
  }
  const Eigen::Index n = g.dim();
  Lcg64 rng{20240817ULL};
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v(i) = rng.gauss();
  }
  v /= v.norm();

  double lambda = 0.0;
  double res = 0.0;
  bool converged = false;
  for (Eigen::Index iter = 0; iter < maxIter; ++iter) {
    Eigen::VectorXd w = g.apply_unscaled(v);
    lambda = v.dot(w);
    res = (w - lambda * v).norm();
    if (res <= tol * std::max(std::abs(lambda), 1.0)) {
      converged = true;
      break;
    }
    const double wn = w.norm();
    if (wn <= 1e-300) {
      // G v vanished: v lies in the kernel, an exact eigenvector.
      lambda = 0.0;
      res = 0.0;
      converged = true;
      break;
    }
    v = w / wn;
  }
  if (!converged) {
    throw MaxIterExceeded("power_iteration: residual " + std::to_string(res) +
                          " above tolerance after " + std::to_string(maxIter) +
                          " iterations");
  }
  fix_sign(v);

  PrincipalComponent c;
  c.lambda = lambda;
  c.sigma = std::sqrt(std::max(lambda, 0.0));
  c.v = v;
  c.residual = res;
  if (const auto& src = g.source(); src && c.lambda > 1e-14) {
    c.u = left_vector(*src, v, c.lambda);
  }
  return c;
}

}  // namespace qasvd
