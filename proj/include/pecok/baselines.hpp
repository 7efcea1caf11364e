#ifndef PECOK_BASELINES_HPP
#define PECOK_BASELINES_HPP

#include "pecok/core_model.hpp"

#include <cstdint>
#include <vector>

namespace pecok {

struct KmeansResult {
  LabelPartition partition;
  Eigen::MatrixXd centers;  // K x p
  double inertia = 0.0;
  int iterations = 0;
  /// Inertia after each assignment step of the winning restart.
  std::vector<double> inertia_trace;
  std::size_t restart = 0;
};

/// Lloyd's algorithm from K-means++ seedings, best inertia over `restarts`
/// runs (ties to the lowest restart index). Restart r draws from the stream
/// derive_seed(seed, {r}); every run stops at an assignment fixpoint or
/// after 300 iterations. Empty clusters are re-seeded at the point farthest
/// from its center, so exactly K groups come back.
KmeansResult kmeans(const DataMatrix& x, int k, int restarts, std::uint64_t seed);

struct WardResult {
  LabelPartition partition;
  /// Merge costs in merge order (non-decreasing for Ward linkage).
  std::vector<double> heights;
};

/// Agglomerative clustering with Ward's minimum-variance criterion
/// (Lance-Williams recurrence on squared Euclidean distances), stopped at
/// K clusters. Ties go to the lexicographically smallest cluster pair.
WardResult ward_linkage(const DataMatrix& x, int k);
LabelPartition ward(const DataMatrix& x, int k);

enum class Embedding {
  kScaled,  // eigenvectors times sqrt|eigenvalue| (rank-K factor)
  kPlain,   // eigenvectors only
};

/// Spectral clustering of a Gram matrix: rows of the best rank-K
/// approximation's factor, then K-means (10 restarts).
LabelPartition lowrank_cluster(const SymMatrix& gram, int k, std::uint64_t seed,
                               Embedding embedding = Embedding::kScaled);

/// Rows of the leading-K eigenvectors (by |eigenvalue|) of a symmetric
/// matrix, optionally scaled by sqrt|eigenvalue|.
Eigen::MatrixXd spectral_embedding(const SymMatrix& m, int k, Embedding embedding);

}  // namespace pecok

#endif  // PECOK_BASELINES_HPP
