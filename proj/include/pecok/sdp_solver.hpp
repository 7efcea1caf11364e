#ifndef PECOK_SDP_SOLVER_HPP
#define PECOK_SDP_SOLVER_HPP

#include "pecok/core_model.hpp"

#include <optional>

namespace pecok {

struct AdmmSettings {
  /// Augmented-Lagrangian parameter; unset means max(1e-8, |A|_F / |B0|_F)
  /// with B0 the feasible starting point.
  std::optional<double> penalty;
  int max_iters = 3000;
  double eps_abs = 1e-6;
  double eps_rel = 1e-5;
  /// Residual balancing: double or halve the penalty when one residual
  /// exceeds the other tenfold.
  bool adapt_penalty = true;

  /// Throws ParameterError on nonpositive penalty, iterations or tolerances.
  void validate() const;
};

/// Constraint violations of a candidate solution.
struct FeasibilityReport {
  double max_negative_entry = 0.0;   // max(0, -min_ab B_ab)
  double trace_deviation = 0.0;      // |tr B - K|; 0 when K is free
  double max_row_sum_deviation = 0.0;
  double min_eigenvalue_violation = 0.0;  // max(0, -lambda_min(B))
  double max_asymmetry = 0.0;

  double worst() const;
};

struct AdmmResult {
  SymMatrix solution;
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  /// <A, B> for fixed K, <A, B> - kappa tr(B) for the adaptive problem.
  double objective = 0.0;
  bool converged = false;
  double final_penalty = 0.0;
  FeasibilityReport feasibility;
};

/// Frobenius-nearest PSD matrix: eigenvalues clipped at zero.
SymMatrix project_psd(const SymMatrix& m);

/// Frobenius projection onto {B symmetric, B 1 = 1} and, when `trace` is
/// given, {tr B = trace}. Closed-form solution of the KKT system in the
/// row-sum multipliers and the trace multiplier.
SymMatrix project_affine(const SymMatrix& m, std::optional<double> trace);

/// Violations of B against {B >= 0, B = B^T, B 1 = 1, B PSD} and, when
/// given, tr B = K.
FeasibilityReport feasibility_report(const SymMatrix& b, std::optional<int> k);

/// Approximate argmax of <A, B> over {B >= 0, B = B^T, tr B = K, B 1 = 1,
/// B PSD} by three-block consensus ADMM (PSD cone, nonnegative orthant,
/// affine set). Throws ParameterError unless 1 <= K <= n (K = 1 admits
/// only (1/n) 11^T), InputError if A is asymmetric beyond 1e-8 relative.
AdmmResult solve_fixed_k(const SymMatrix& a, int k, const AdmmSettings& settings = {});

/// Approximate argmax of <A, B> - kappa tr(B) over the trace-free set
/// {B >= 0, B = B^T, B 1 = 1, B PSD}.
AdmmResult solve_adaptive(const SymMatrix& a, double kappa, const AdmmSettings& settings = {});

}  // namespace pecok

#endif  // PECOK_SDP_SOLVER_HPP
