#include "pecok/core_model.hpp"

#include "pecok/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pecok {

LabelPartition::LabelPartition(std::vector<int> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) {
    k_ = 0;
    return;
  }
  const int max_label = *std::max_element(labels_.begin(), labels_.end());
  const int min_label = *std::min_element(labels_.begin(), labels_.end());
  if (min_label < 0) throw ParameterError("partition labels must be nonnegative");
  k_ = max_label + 1;
  std::vector<bool> seen(static_cast<std::size_t>(k_), false);
  for (int l : labels_) seen[static_cast<std::size_t>(l)] = true;
  for (int k = 0; k < k_; ++k) {
    if (!seen[static_cast<std::size_t>(k)]) {
      throw ParameterError("partition group " + std::to_string(k) + " is empty");
    }
  }
}

LabelPartition LabelPartition::canonical(std::span<const int> labels) {
  std::vector<int> remap;
  std::vector<int> out;
  out.reserve(labels.size());
  for (int l : labels) {
    if (l < 0) throw ParameterError("partition labels must be nonnegative");
    if (static_cast<std::size_t>(l) >= remap.size()) remap.resize(static_cast<std::size_t>(l) + 1, -1);
    int& r = remap[static_cast<std::size_t>(l)];
    if (r < 0) r = static_cast<int>(std::count_if(remap.begin(), remap.end(), [](int v) { return v >= 0; }));
    out.push_back(r);
  }
  return LabelPartition(std::move(out));
}

std::vector<std::size_t> LabelPartition::group_sizes() const {
  std::vector<std::size_t> sizes(static_cast<std::size_t>(k_), 0);
  for (int l : labels_) ++sizes[static_cast<std::size_t>(l)];
  return sizes;
}

std::size_t LabelPartition::min_group_size() const {
  const auto sizes = group_sizes();
  return sizes.empty() ? 0 : *std::min_element(sizes.begin(), sizes.end());
}

std::vector<std::vector<std::size_t>> LabelPartition::groups() const {
  std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(k_));
  for (std::size_t a = 0; a < labels_.size(); ++a) out[static_cast<std::size_t>(labels_[a])].push_back(a);
  return out;
}

Covariance Covariance::isotropic(double variance) {
  if (!(variance >= 0.0)) throw ParameterError("covariance entries must be nonnegative");
  Covariance c;
  c.scale_ = variance;
  return c;
}

Covariance Covariance::diagonal(Eigen::VectorXd entries) {
  if (entries.size() > 0 && !(entries.minCoeff() >= 0.0)) {
    throw ParameterError("covariance entries must be nonnegative");
  }
  Covariance c;
  c.diag_ = std::move(entries);
  return c;
}

double Covariance::entry(std::size_t j) const {
  return diag_ ? (*diag_)(static_cast<Eigen::Index>(j)) : scale_;
}

double Covariance::operator_norm(std::size_t p) const {
  if (!diag_) return p > 0 ? scale_ : 0.0;
  return diag_->size() > 0 ? diag_->maxCoeff() : 0.0;
}

double Covariance::frobenius_norm(std::size_t p) const {
  if (!diag_) return scale_ * std::sqrt(static_cast<double>(p));
  return diag_->norm();
}

double Covariance::nuclear_norm(std::size_t p) const {
  if (!diag_) return scale_ * static_cast<double>(p);
  return diag_->sum();
}

void ClusterGroundTruth::validate() const {
  const auto k = static_cast<std::size_t>(partition.k());
  if (means.size() != k) throw ParameterError("expected one mean per group");
  for (const auto& mu : means) {
    if (static_cast<std::size_t>(mu.size()) != p) throw ParameterError("mean dimension does not match p");
  }
  if (!(delta >= 0.0)) throw ParameterError("delta must be nonnegative");
  if (covariances.size() != partition.n()) throw ParameterError("expected one covariance per point");
  for (const auto& c : covariances) {
    if (!c.is_isotropic() && c.dimension() != p) throw ParameterError("covariance dimension does not match p");
  }
  if (!offsets.empty()) {
    if (offsets.size() != partition.n()) throw ParameterError("expected one offset per point");
    for (const auto& o : offsets) {
      if (static_cast<std::size_t>(o.size()) != p) throw ParameterError("offset dimension does not match p");
      if (o.norm() > delta * (1.0 + 1e-12)) throw ParameterError("offset exceeds delta");
    }
  }
}

Eigen::VectorXd ClusterGroundTruth::point_mean(std::size_t a) const {
  Eigen::VectorXd nu = means[static_cast<std::size_t>(partition.label(a))];
  if (!offsets.empty()) nu += offsets[a];
  return nu;
}

SymMatrix characteristic_matrix(const LabelPartition& partition) {
  const auto n = static_cast<Eigen::Index>(partition.n());
  const auto sizes = partition.group_sizes();
  SymMatrix b = SymMatrix::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    const int la = partition.label(static_cast<std::size_t>(a));
    const double w = 1.0 / static_cast<double>(sizes[static_cast<std::size_t>(la)]);
    for (Eigen::Index c = 0; c < n; ++c) {
      if (partition.label(static_cast<std::size_t>(c)) == la) b(a, c) = w;
    }
  }
  return b;
}

double separation(const ClusterGroundTruth& truth) {
  if (truth.means.size() < 2) throw ParameterError("separation undefined for one group");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < truth.means.size(); ++k) {
    for (std::size_t l = k + 1; l < truth.means.size(); ++l) {
      best = std::min(best, (truth.means[k] - truth.means[l]).norm());
    }
  }
  return best;
}

double discriminating_capacity(const ClusterGroundTruth& truth) {
  const double sep = separation(truth);
  if (truth.delta == 0.0) return sep == 0.0 ? 0.0 : kInfiniteCapacity;
  return sep / truth.delta;
}

SpreadSummary spread_summary(const ClusterGroundTruth& truth) {
  SpreadSummary s;
  for (const auto& c : truth.covariances) {
    s.sigma2 = std::max(s.sigma2, c.operator_norm(truth.p));
    s.v2 = std::max(s.v2, c.frobenius_norm(truth.p));
    s.gamma2 = std::max(s.gamma2, c.nuclear_norm(truth.p));
  }
  s.r_star = s.sigma2 > 0.0 ? s.gamma2 / s.sigma2 : 0.0;
  return s;
}

}  // namespace pecok
