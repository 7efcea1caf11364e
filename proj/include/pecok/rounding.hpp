#ifndef PECOK_ROUNDING_HPP
#define PECOK_ROUNDING_HPP

#include "pecok/core_model.hpp"

namespace pecok {

enum class RoundingMethod { kThresholdComponents, kSpectralKmeans };

const char* to_string(RoundingMethod m);

struct RoundingReport {
  LabelPartition partition;
  RoundingMethod method_used = RoundingMethod::kThresholdComponents;
  /// max_ab |B_ab - B*(partition)_ab|
  double integrality_gap = 0.0;
  int k_hat = 0;
};

/// Connected components of the graph {(a, b) : B_ab > 1/(2n)}, labelled by
/// first appearance.
LabelPartition threshold_components(const SymMatrix& b);

/// Threshold components when they number exactly K; otherwise K-means on
/// the leading-K eigenvector rows of B with a fixed seed.
RoundingReport round_fixed_k(const SymMatrix& b, int k);

/// Group count implied by a characteristic-like matrix: round(tr B),
/// clamped to [1, n].
int trace_group_count(const SymMatrix& b);

/// Rounds to trace_group_count(B) groups with the same two-stage rule as
/// round_fixed_k.
RoundingReport round_adaptive(const SymMatrix& b);

}  // namespace pecok

#endif  // PECOK_ROUNDING_HPP
