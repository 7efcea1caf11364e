#include "pecok/sdp_solver.hpp"

#include "pecok/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace pecok {

void AdmmSettings::validate() const {
  if (penalty && !(*penalty > 0.0)) throw ParameterError("ADMM penalty must be positive");
  if (max_iters < 1) throw ParameterError("ADMM max_iters must be at least 1");
  if (!(eps_abs > 0.0) || !(eps_rel > 0.0)) throw ParameterError("ADMM tolerances must be positive");
}

double FeasibilityReport::worst() const {
  return std::max({max_negative_entry, trace_deviation, max_row_sum_deviation, min_eigenvalue_violation,
                   max_asymmetry});
}

SymMatrix project_psd(const SymMatrix& m) {
  Eigen::SelfAdjointEigenSolver<SymMatrix> eig(m);
  if (eig.info() != Eigen::Success) {
    throw NumericalError("symmetric eigendecomposition failed for " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + " matrix");
  }
  const Eigen::VectorXd clipped = eig.eigenvalues().cwiseMax(0.0);
  const auto& v = eig.eigenvectors();
  SymMatrix out = v * clipped.asDiagonal() * v.transpose();
  return 0.5 * (out + out.transpose());
}

SymMatrix project_affine(const SymMatrix& m, std::optional<double> trace) {
  const Eigen::Index n = m.rows();
  const double nd = static_cast<double>(n);
  // Stationarity: B = M + alpha 1^T + 1 alpha^T + beta I. With s = 1^T alpha
  // and S = 1^T M 1, the row-sum constraints give
  //   n alpha + (s + beta) 1 = 1 - M 1,
  // summing: 2 n s = n - S - n beta; the trace constraint adds
  //   tr M + 2 s + n beta = K.
  const Eigen::VectorXd row = m.rowwise().sum();
  const double total = row.sum();
  double s = 0.0;
  double beta = 0.0;
  if (trace) {
    if (n < 2) throw NumericalError("affine projection with a trace constraint needs n >= 2");
    s = (nd - total - *trace + m.trace()) / (2.0 * (nd - 1.0));
    beta = (*trace - m.trace() - 2.0 * s) / nd;
  } else {
    s = (nd - total) / (2.0 * nd);
  }
  const Eigen::VectorXd alpha = (Eigen::VectorXd::Ones(n) - row - (s + beta) * Eigen::VectorXd::Ones(n)) / nd;
  SymMatrix out = m;
  out.colwise() += alpha;
  out.rowwise() += alpha.transpose();
  out.diagonal().array() += beta;
  return out;
}

FeasibilityReport feasibility_report(const SymMatrix& b, std::optional<int> k) {
  FeasibilityReport r;
  r.max_negative_entry = std::max(0.0, -b.minCoeff());
  if (k) r.trace_deviation = std::abs(b.trace() - static_cast<double>(*k));
  r.max_row_sum_deviation = (b.rowwise().sum().array() - 1.0).abs().maxCoeff();
  r.max_asymmetry = (b - b.transpose()).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<SymMatrix> eig(0.5 * (b + b.transpose()), Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw NumericalError("eigenvalue computation failed in feasibility check");
  r.min_eigenvalue_violation = std::max(0.0, -eig.eigenvalues().minCoeff());
  return r;
}

namespace {

// Penalty changes are spaced out and stop after a while; rebalancing every
// iteration keeps the iterates oscillating.
constexpr int kAdaptInterval = 50;
constexpr int kAdaptUntil = 1000;

SymMatrix checked_symmetric(const SymMatrix& a) {
  if (a.rows() != a.cols() || a.rows() < 1) throw InputError("objective matrix must be square and nonempty");
  if (!a.allFinite()) throw InputError("objective matrix contains non-finite entries");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-8 * scale) {
    throw InputError("objective matrix is not symmetric");
  }
  return 0.5 * (a + a.transpose());
}

SymMatrix barycenter_start(Eigen::Index n, double k) {
  if (n == 1) return SymMatrix::Ones(1, 1);
  const double nd = static_cast<double>(n);
  const double off = (nd - k) / (nd * (nd - 1.0));
  SymMatrix b = SymMatrix::Constant(n, n, off);
  b.diagonal().setConstant(k / nd);
  return b;
}

// Consensus ADMM for  min -<A, B>  s.t.  B in PSD ∩ nonneg ∩ affine(trace).
// Blocks Y_i are projections onto each set, B is the consensus variable
// and U_i are the scaled duals of Y_i = B.
AdmmResult run_consensus_admm(const SymMatrix& a, std::optional<double> trace, SymMatrix b,
                              const AdmmSettings& settings) {
  settings.validate();
  const Eigen::Index n = a.rows();
  const double nd = static_cast<double>(n);
  // Default penalty balances the objective against the size of a feasible
  // point, so it is invariant under rescaling A.
  double rho = settings.penalty.value_or(std::max(1e-8, a.norm() / b.norm()));

  std::array<SymMatrix, 3> y{b, b, b};
  std::array<SymMatrix, 3> u{SymMatrix::Zero(n, n), SymMatrix::Zero(n, n), SymMatrix::Zero(n, n)};

  AdmmResult res;
  for (int it = 1; it <= settings.max_iters; ++it) {
    y[0] = project_psd(b - u[0]);
    y[1] = (b - u[1]).cwiseMax(0.0);
    y[2] = project_affine(b - u[2], trace);

    const SymMatrix b_prev = b;
    b = (y[0] + u[0] + y[1] + u[1] + y[2] + u[2]) / 3.0 + a / (3.0 * rho);
    b = 0.5 * (b + b.transpose());

    double primal = 0.0;
    double y_norm = 0.0;
    double u_norm = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      const SymMatrix gap = y[i] - b;
      u[i] += gap;
      primal = std::max(primal, gap.norm());
      y_norm = std::max(y_norm, y[i].norm());
      u_norm = std::max(u_norm, u[i].norm());
    }
    const double dual = rho * std::sqrt(3.0) * (b - b_prev).norm();

    res.iterations = it;
    res.primal_residual = primal;
    res.dual_residual = dual;

    const double eps_primal = nd * settings.eps_abs + settings.eps_rel * std::max(b.norm(), y_norm);
    const double eps_dual = nd * settings.eps_abs + settings.eps_rel * rho * u_norm;
    if (primal <= eps_primal && dual <= eps_dual) {
      res.converged = true;
      break;
    }

    if (settings.adapt_penalty && it % kAdaptInterval == 0 && it <= kAdaptUntil) {
      if (primal > 10.0 * dual) {
        rho *= 2.0;
        for (auto& ui : u) ui /= 2.0;
      } else if (dual > 10.0 * primal) {
        rho /= 2.0;
        for (auto& ui : u) ui *= 2.0;
      }
    }
  }
  res.final_penalty = rho;
  res.solution = project_affine(b, trace);
  return res;
}

}  // namespace

AdmmResult solve_fixed_k(const SymMatrix& a, int k, const AdmmSettings& settings) {
  const SymMatrix sym = checked_symmetric(a);
  const Eigen::Index n = sym.rows();
  if (k < 1 || k > n) {
    throw ParameterError("number of groups K=" + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
  }
  AdmmResult res = run_consensus_admm(sym, static_cast<double>(k), barycenter_start(n, k), settings);
  res.objective = (sym.array() * res.solution.array()).sum();
  res.feasibility = feasibility_report(res.solution, k);
  return res;
}

AdmmResult solve_adaptive(const SymMatrix& a, double kappa, const AdmmSettings& settings) {
  const SymMatrix sym = checked_symmetric(a);
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw ParameterError("kappa must be finite and nonnegative");
  const Eigen::Index n = sym.rows();
  SymMatrix shifted = sym;
  shifted.diagonal().array() -= kappa;
  AdmmResult res = run_consensus_admm(shifted, std::nullopt, barycenter_start(n, 1.0), settings);
  res.objective = (shifted.array() * res.solution.array()).sum();
  res.feasibility = feasibility_report(res.solution, std::nullopt);
  return res;
}

}  // namespace pecok
