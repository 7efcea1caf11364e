#ifndef PECOK_ESTIMATORS_HPP
#define PECOK_ESTIMATORS_HPP

#include "pecok/core_model.hpp"

#include <cstddef>
#include <vector>

namespace pecok {

/// Throws InputError unless X has at least one row and column and all
/// entries are finite.
void validate_data(const DataMatrix& x);

/// Observed Gram matrix: entry (a, b) = <X_a, X_b>.
SymMatrix gram_matrix(const DataMatrix& x);

struct GammaCorrOptions {
  /// gamma_corr refuses inputs with more rows than this.
  std::size_t max_points = 500;
};

/// Neighbour choice behind each diagonal entry of the correction.
struct GammaCorrDetail {
  Eigen::VectorXd diagonal;
  std::vector<std::size_t> first;   // b1 for each a
  std::vector<std::size_t> second;  // b2 for each a
};

/// Diagonal de-biasing estimate of the noise second moments tr Var(E_a).
///
/// For each point a, V(a, b) is the largest absolute projection of
/// X_a - X_b onto a unit direction (X_c - X_d)/|X_c - X_d| with c != d
/// outside {a, b}; coincident pairs X_c = X_d are skipped. b1 minimizes
/// V(a, .) over b != a, b2 minimizes it over b outside {a, b1}, ties to
/// the smallest index, and the estimate is <X_a - X_b1, X_a - X_b2>.
///
/// Throws ParameterError when n < 5 or n > options.max_points.
GammaCorrDetail gamma_corr_detail(const DataMatrix& x, const GammaCorrOptions& options = {});

/// Diagonal matrix built from gamma_corr_detail(x).diagonal.
SymMatrix gamma_corr(const DataMatrix& x, const GammaCorrOptions& options = {});

struct GramPair {
  SymMatrix lambda_hat;
  SymMatrix gamma_hat;  // diagonal; zero when correction is disabled

  SymMatrix corrected() const { return lambda_hat - gamma_hat; }
};

GramPair estimate_gram_pair(const DataMatrix& x, bool correct, const GammaCorrOptions& options = {});

}  // namespace pecok

#endif  // PECOK_ESTIMATORS_HPP
