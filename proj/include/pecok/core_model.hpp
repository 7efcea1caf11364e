#ifndef PECOK_CORE_MODEL_HPP
#define PECOK_CORE_MODEL_HPP

#include <Eigen/Dense>

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace pecok {

/// Dense symmetric n x n matrix (Gram matrices, characteristic matrices,
/// solver iterates). Symmetry is a contract checked where it matters.
using SymMatrix = Eigen::MatrixXd;

/// n x p observations, one row per point.
using DataMatrix = Eigen::MatrixXd;

/// Assignment of n points to K nonempty groups labelled 0..K-1.
class LabelPartition {
 public:
  LabelPartition() = default;
  /// Throws ParameterError if some value in [0, 1 + max label) is unused
  /// or a label is negative.
  explicit LabelPartition(std::vector<int> labels);

  /// Renumbers groups in order of first appearance, so that any two
  /// partitions with the same blocks compare equal after canonicalizing.
  static LabelPartition canonical(std::span<const int> labels);

  std::size_t n() const { return labels_.size(); }
  int k() const { return k_; }
  int label(std::size_t a) const { return labels_[a]; }
  const std::vector<int>& labels() const { return labels_; }

  std::vector<std::size_t> group_sizes() const;
  std::size_t min_group_size() const;
  std::vector<std::vector<std::size_t>> groups() const;

  bool operator==(const LabelPartition&) const = default;

 private:
  std::vector<int> labels_;
  int k_ = 0;
};

/// Per-point noise covariance, restricted to diagonal forms.
class Covariance {
 public:
  /// variance * I_p
  static Covariance isotropic(double variance);
  static Covariance diagonal(Eigen::VectorXd entries);

  bool is_isotropic() const { return !diag_.has_value(); }
  /// Length of the stored diagonal; 0 for isotropic covariances.
  std::size_t dimension() const { return diag_ ? static_cast<std::size_t>(diag_->size()) : 0; }
  /// Diagonal entry j of the covariance in dimension p.
  double entry(std::size_t j) const;
  double operator_norm(std::size_t p) const;
  double frobenius_norm(std::size_t p) const;
  double nuclear_norm(std::size_t p) const;

 private:
  double scale_ = 0.0;
  std::optional<Eigen::VectorXd> diag_;
};

/// Simulation truth for a (G, mu, delta)-clustered sample.
struct ClusterGroundTruth {
  LabelPartition partition;
  std::vector<Eigen::VectorXd> means;
  double delta = 0.0;
  std::vector<Covariance> covariances;  // one per point
  std::size_t p = 0;
  /// Optional per-point offsets nu_a - mu_{k(a)}, each of norm <= delta.
  std::vector<Eigen::VectorXd> offsets;

  /// Throws ParameterError when sizes or signs are inconsistent.
  void validate() const;
  /// Population mean nu_a of point a.
  Eigen::VectorXd point_mean(std::size_t a) const;
};

struct SpreadSummary {
  double sigma2 = 0.0;  // max operator norm
  double v2 = 0.0;      // max Frobenius norm
  double gamma2 = 0.0;  // max nuclear norm
  double r_star = 0.0;  // effective rank gamma2 / sigma2
};

/// Discriminating capacity returned when delta = 0 and the separation is
/// positive.
inline constexpr double kInfiniteCapacity = std::numeric_limits<double>::infinity();

/// B*_ab = 1/|G_k| when a, b share group G_k, else 0.
SymMatrix characteristic_matrix(const LabelPartition& partition);

/// Minimum pairwise distance between cluster means. Requires K >= 2.
double separation(const ClusterGroundTruth& truth);

/// separation / delta, with 0/0 := 0 and x/0 := kInfiniteCapacity.
double discriminating_capacity(const ClusterGroundTruth& truth);

SpreadSummary spread_summary(const ClusterGroundTruth& truth);

}  // namespace pecok

#endif  // PECOK_CORE_MODEL_HPP
