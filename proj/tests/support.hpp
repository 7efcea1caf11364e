// Test-only reference implementations. Each one follows its definition
// literally and shares no code path with the library routine it checks.
#ifndef PECOK_TESTS_SUPPORT_HPP
#define PECOK_TESTS_SUPPORT_HPP

#include "pecok/core_model.hpp"
#include "pecok/random.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <vector>

namespace pecok::testing {

inline SymMatrix random_symmetric(Eigen::Index n, std::uint64_t seed) {
  Rng rng(seed);
  SymMatrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double v = rng.normal();
      a(i, j) = v;
      a(j, i) = v;
    }
  }
  return a;
}

inline DataMatrix random_data(Eigen::Index n, Eigen::Index p, std::uint64_t seed) {
  Rng rng(seed);
  DataMatrix x(n, p);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) x(i, j) = rng.normal();
  }
  return x;
}

/// Uniformly random labels in [0, k), then compacted so every group is used.
inline LabelPartition random_partition(std::size_t n, int k, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<int> labels(n);
  for (auto& l : labels) l = static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
  return LabelPartition::canonical(labels);
}

inline Eigen::MatrixXd random_permutation(Eigen::Index n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) p(i, perm[static_cast<std::size_t>(i)]) = 1.0;
  return p;
}

/// Triple-loop X X^T.
inline SymMatrix naive_gram(const DataMatrix& x) {
  SymMatrix g(x.rows(), x.rows());
  for (Eigen::Index a = 0; a < x.rows(); ++a) {
    for (Eigen::Index b = 0; b < x.rows(); ++b) {
      double s = 0.0;
      for (Eigen::Index j = 0; j < x.cols(); ++j) s += x(a, j) * x(b, j);
      g(a, b) = s;
    }
  }
  return g;
}

struct ReferenceGamma {
  std::vector<double> diagonal;
  std::vector<std::size_t> first, second;
};

/// V(a, b) = max over ordered (c, d), c != d, c, d not in {a, b}, of
/// |<X_a - X_b, (X_c - X_d) / |X_c - X_d|>|, with 0/0 := 0.
inline double reference_v(const DataMatrix& x, std::size_t a, std::size_t b) {
  const auto n = static_cast<std::size_t>(x.rows());
  double best = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t d = 0; d < n; ++d) {
      if (c == d || c == a || c == b || d == a || d == b) continue;
      double dot = 0.0, norm2 = 0.0;
      for (Eigen::Index j = 0; j < x.cols(); ++j) {
        const double u = x(static_cast<Eigen::Index>(c), j) - x(static_cast<Eigen::Index>(d), j);
        dot += (x(static_cast<Eigen::Index>(a), j) - x(static_cast<Eigen::Index>(b), j)) * u;
        norm2 += u * u;
      }
      if (norm2 == 0.0) continue;
      best = std::max(best, std::abs(dot) / std::sqrt(norm2));
    }
  }
  return best;
}

inline ReferenceGamma reference_gamma_corr(const DataMatrix& x) {
  const auto n = static_cast<std::size_t>(x.rows());
  ReferenceGamma out;
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<double> v(n, std::numeric_limits<double>::infinity());
    for (std::size_t b = 0; b < n; ++b) {
      if (b != a) v[b] = reference_v(x, a, b);
    }
    std::size_t b1 = a == 0 ? 1 : 0;
    for (std::size_t b = 0; b < n; ++b) {
      if (b != a && v[b] < v[b1]) b1 = b;
    }
    std::size_t b2 = n;
    for (std::size_t b = 0; b < n; ++b) {
      if (b == a || b == b1) continue;
      if (b2 == n || v[b] < v[b2]) b2 = b;
    }
    double g = 0.0;
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      const double xa = x(static_cast<Eigen::Index>(a), j);
      g += (xa - x(static_cast<Eigen::Index>(b1), j)) * (xa - x(static_cast<Eigen::Index>(b2), j));
    }
    out.diagonal.push_back(g);
    out.first.push_back(b1);
    out.second.push_back(b2);
  }
  return out;
}

/// Sum of squared distances to group centroids.
inline double inertia_of(const DataMatrix& x, const LabelPartition& g) {
  double total = 0.0;
  for (const auto& members : g.groups()) {
    Eigen::RowVectorXd c = Eigen::RowVectorXd::Zero(x.cols());
    for (auto a : members) c += x.row(static_cast<Eigen::Index>(a));
    c /= static_cast<double>(members.size());
    for (auto a : members) total += (x.row(static_cast<Eigen::Index>(a)) - c).squaredNorm();
  }
  return total;
}

/// S(n, k) by the recurrence S(n, k) = k S(n-1, k) + S(n-1, k-1).
inline std::vector<std::vector<unsigned long long>> stirling_table(int max_n) {
  std::vector<std::vector<unsigned long long>> s(static_cast<std::size_t>(max_n + 1),
                                                 std::vector<unsigned long long>(static_cast<std::size_t>(max_n + 1), 0));
  s[0][0] = 1;
  for (int n = 1; n <= max_n; ++n) {
    for (int k = 1; k <= n; ++k) {
      s[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)] =
          static_cast<unsigned long long>(k) * s[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(k)] +
          s[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(k - 1)];
    }
  }
  return s;
}

}  // namespace pecok::testing

#endif  // PECOK_TESTS_SUPPORT_HPP
