#ifndef PECOK_ORACLE_HPP
#define PECOK_ORACLE_HPP

#include "pecok/core_model.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <utility>

namespace pecok {

/// Largest n accepted by exact_kmeans_gram.
inline constexpr std::size_t kOracleMaxPoints = 14;

/// Calls `visit` with the restricted-growth string of every partition of
/// [n] into exactly K nonempty blocks, in lexicographic order. Returns the
/// number of partitions visited (the Stirling number S(n, K)).
std::size_t for_each_partition(std::size_t n, int k, const std::function<void(std::span<const int>)>& visit);

struct OracleSolution {
  LabelPartition partition;
  double objective = 0.0;  // <A, B*(partition)>
};

/// Exhaustive argmax of <A, B*(G)> over partitions G of [n] into exactly K
/// blocks; ties keep the lexicographically first restricted-growth string.
/// Throws ParameterError when n > kOracleMaxPoints or K outside [1, n].
OracleSolution exact_kmeans_gram(const SymMatrix& a, int k);

struct PopulationMatrices {
  SymMatrix signal;  // Lambda_ab = <nu_a, nu_b>
  SymMatrix bias;    // Gamma = diag(tr Sigma_a)
};

PopulationMatrices population_matrices(const ClusterGroundTruth& truth);

/// Three equal groups of size m with means (Delta/sqrt 2) e_k, delta = 0,
/// and noise traces gamma_plus on the first group, gamma_minus elsewhere.
/// `merge_split` splits the first group in two halves and merges the other
/// two groups.
struct HeteroscedasticInstance {
  ClusterGroundTruth truth;
  PopulationMatrices population;
  SymMatrix b_star;
  SymMatrix merge_split;
  LabelPartition merge_split_partition;
};

/// Throws ParameterError unless m >= 2, delta2 > 0 and gamma_plus >= gamma_minus >= 0.
HeteroscedasticInstance heteroscedastic_instance(std::size_t m, double delta2, double gamma_plus,
                                                 double gamma_minus);

}  // namespace pecok

#endif  // PECOK_ORACLE_HPP
