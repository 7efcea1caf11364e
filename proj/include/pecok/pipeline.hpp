#ifndef PECOK_PIPELINE_HPP
#define PECOK_PIPELINE_HPP

#include "pecok/estimators.hpp"
#include "pecok/rounding.hpp"
#include "pecok/sdp_solver.hpp"

#include <variant>

namespace pecok {

struct KnownK {
  int k;
};
struct Penalized {
  double kappa;
};
using GroupCount = std::variant<KnownK, Penalized>;

struct PipelineOptions {
  /// Subtract the diagonal correction from the Gram matrix.
  bool correct = true;
  AdmmSettings admm;
  GammaCorrOptions gamma;
};

struct PipelineResult {
  GramPair gram;
  AdmmResult solve;
  RoundingReport rounding;
};

/// Gram matrix, optional correction, SDP over the fixed-K or trace-penalized
/// set, then rounding to a partition.
PipelineResult cluster_sdp(const DataMatrix& x, const GroupCount& groups, const PipelineOptions& options = {});

}  // namespace pecok

#endif  // PECOK_PIPELINE_HPP
