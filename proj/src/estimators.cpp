#include "pecok/estimators.hpp"

#include "pecok/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace pecok {

void validate_data(const DataMatrix& x) {
  if (x.rows() < 1 || x.cols() < 1) throw InputError("data matrix must have at least one row and column");
  if (!x.allFinite()) throw InputError("data matrix contains non-finite entries");
}

SymMatrix gram_matrix(const DataMatrix& x) {
  validate_data(x);
  const Eigen::Index n = x.rows();
  SymMatrix g(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a; b < n; ++b) {
      double s = 0.0;
      for (Eigen::Index j = 0; j < x.cols(); ++j) s += x(a, j) * x(b, j);
      g(a, b) = s;
      g(b, a) = s;
    }
  }
  return g;
}

GammaCorrDetail gamma_corr_detail(const DataMatrix& x, const GammaCorrOptions& options) {
  validate_data(x);
  const auto n = static_cast<std::size_t>(x.rows());
  if (n < 5) throw ParameterError("insufficient points for correction (need n >= 5, got " + std::to_string(n) + ")");
  if (n > options.max_points) {
    throw ParameterError("gamma_corr limited to " + std::to_string(options.max_points) + " points, got " +
                         std::to_string(n));
  }

  // Unit directions for every unordered pair c < d.
  const std::size_t pairs = n * (n - 1) / 2;
  std::vector<std::size_t> pair_c(pairs), pair_d(pairs);
  std::vector<bool> degenerate(pairs, false);
  Eigen::MatrixXd dirs(static_cast<Eigen::Index>(pairs), x.cols());
  {
    std::size_t j = 0;
    for (std::size_t c = 0; c < n; ++c) {
      for (std::size_t d = c + 1; d < n; ++d, ++j) {
        pair_c[j] = c;
        pair_d[j] = d;
        Eigen::RowVectorXd diff = x.row(static_cast<Eigen::Index>(c)) - x.row(static_cast<Eigen::Index>(d));
        const double norm = diff.norm();
        if (norm > 0.0) {
          dirs.row(static_cast<Eigen::Index>(j)) = diff / norm;
        } else {
          dirs.row(static_cast<Eigen::Index>(j)).setZero();
          degenerate[j] = true;
        }
      }
    }
  }
  // proj(a, j) = <X_a, u_j>, so <X_a - X_b, u_j> = proj(a, j) - proj(b, j).
  const Eigen::MatrixXd proj = x * dirs.transpose();

  auto v = [&](std::size_t a, std::size_t b) {
    double best = 0.0;
    for (std::size_t j = 0; j < pairs; ++j) {
      if (degenerate[j]) continue;
      const std::size_t c = pair_c[j], d = pair_d[j];
      if (c == a || c == b || d == a || d == b) continue;
      const double t = std::abs(proj(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(j)) -
                                proj(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(j)));
      if (t > best) best = t;
    }
    return best;
  };

  GammaCorrDetail out;
  out.diagonal.resize(static_cast<Eigen::Index>(n));
  out.first.resize(n);
  out.second.resize(n);
  std::vector<double> va(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) va[b] = b == a ? 0.0 : v(a, b);
    std::size_t b1 = n, b2 = n;
    for (std::size_t b = 0; b < n; ++b) {
      if (b == a) continue;
      if (b1 == n || va[b] < va[b1]) b1 = b;
    }
    for (std::size_t b = 0; b < n; ++b) {
      if (b == a || b == b1) continue;
      if (b2 == n || va[b] < va[b2]) b2 = b;
    }
    const auto ia = static_cast<Eigen::Index>(a);
    const Eigen::RowVectorXd d1 = x.row(ia) - x.row(static_cast<Eigen::Index>(b1));
    const Eigen::RowVectorXd d2 = x.row(ia) - x.row(static_cast<Eigen::Index>(b2));
    out.diagonal(ia) = d1.dot(d2);
    out.first[a] = b1;
    out.second[a] = b2;
  }
  return out;
}

SymMatrix gamma_corr(const DataMatrix& x, const GammaCorrOptions& options) {
  return gamma_corr_detail(x, options).diagonal.asDiagonal();
}

GramPair estimate_gram_pair(const DataMatrix& x, bool correct, const GammaCorrOptions& options) {
  GramPair g;
  g.lambda_hat = gram_matrix(x);
  g.gamma_hat = correct ? gamma_corr(x, options) : SymMatrix::Zero(x.rows(), x.rows());
  return g;
}

}  // namespace pecok
