#ifndef PECOK_METRICS_HPP
#define PECOK_METRICS_HPP

#include "pecok/core_model.hpp"

namespace pecok {

/// van Dongen split-join distance:
///   2n - sum_k max_l |P_k ∩ Q_l| - sum_l max_k |P_k ∩ Q_l|.
/// Zero iff the partitions coincide. Throws ParameterError on size mismatch.
long split_join(const LabelPartition& p, const LabelPartition& q);

/// True iff p and q have the same blocks (labels may differ).
bool exact_recovery(const LabelPartition& p, const LabelPartition& q);

}  // namespace pecok

#endif  // PECOK_METRICS_HPP
