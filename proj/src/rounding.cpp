#include "pecok/rounding.hpp"

#include "pecok/baselines.hpp"
#include "pecok/errors.hpp"
#include "pecok/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace pecok {
namespace {

constexpr std::uint64_t kRoundingSeed = 0x726f756e64696e67ULL;
constexpr int kRoundingRestarts = 10;

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t a) {
  while (parent[a] != a) {
    parent[a] = parent[parent[a]];
    a = parent[a];
  }
  return a;
}

RoundingReport make_report(const SymMatrix& b, LabelPartition partition, RoundingMethod method) {
  RoundingReport r;
  r.integrality_gap = (b - characteristic_matrix(partition)).cwiseAbs().maxCoeff();
  r.k_hat = partition.k();
  r.partition = std::move(partition);
  r.method_used = method;
  return r;
}

}  // namespace

const char* to_string(RoundingMethod m) {
  switch (m) {
    case RoundingMethod::kThresholdComponents:
      return "threshold_components";
    case RoundingMethod::kSpectralKmeans:
      return "spectral_kmeans";
  }
  return "unknown";
}

LabelPartition threshold_components(const SymMatrix& b) {
  const auto n = static_cast<std::size_t>(b.rows());
  const double tau = 1.0 / (2.0 * static_cast<double>(n));
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t c = a + 1; c < n; ++c) {
      const double w = 0.5 * (b(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(c)) +
                              b(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(a)));
      if (w > tau) {
        const std::size_t ra = find_root(parent, a), rc = find_root(parent, c);
        if (ra != rc) parent[std::max(ra, rc)] = std::min(ra, rc);
      }
    }
  }
  std::vector<int> raw(n);
  for (std::size_t a = 0; a < n; ++a) raw[a] = static_cast<int>(find_root(parent, a));
  return LabelPartition::canonical(raw);
}

namespace {

RoundingReport round_to(const SymMatrix& b, int k) {
  LabelPartition comps = threshold_components(b);
  if (comps.k() == k) return make_report(b, std::move(comps), RoundingMethod::kThresholdComponents);

  const Eigen::MatrixXd rows = spectral_embedding(b, k, Embedding::kPlain);
  const std::uint64_t seed = derive_seed(kRoundingSeed, {static_cast<std::uint64_t>(b.rows()),
                                                         static_cast<std::uint64_t>(k)});
  LabelPartition fallback = kmeans(rows, k, kRoundingRestarts, seed).partition;
  return make_report(b, LabelPartition::canonical(fallback.labels()), RoundingMethod::kSpectralKmeans);
}

}  // namespace

RoundingReport round_fixed_k(const SymMatrix& b, int k) {
  if (b.rows() != b.cols()) throw InputError("rounding input must be square");
  if (k < 1 || k > b.rows()) {
    throw ParameterError("number of groups K=" + std::to_string(k) + " outside [1, " + std::to_string(b.rows()) + "]");
  }
  return round_to(b, k);
}

int trace_group_count(const SymMatrix& b) {
  const auto k = static_cast<long>(std::lround(b.trace()));
  return static_cast<int>(std::clamp<long>(k, 1, static_cast<long>(b.rows())));
}

RoundingReport round_adaptive(const SymMatrix& b) {
  if (b.rows() != b.cols()) throw InputError("rounding input must be square");
  if (b.rows() == 0) throw InputError("rounding input is empty");
  return round_to(b, trace_group_count(b));
}

}  // namespace pecok
