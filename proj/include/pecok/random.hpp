#ifndef PECOK_RANDOM_HPP
#define PECOK_RANDOM_HPP

#include <cstdint>
#include <initializer_list>

namespace pecok {

/// Mixes a base seed with a list of stream keys (restart index, sweep point,
/// replication, ...) into a new 64-bit seed. Distinct key tuples give
/// unrelated streams.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> keys);

/// Counter-based generator: output i is splitmix64(key + i * golden).
/// Uniform and normal variates are produced with explicit transforms so
/// streams are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t key) : key_(key) {}

  std::uint64_t next_u64();
  /// Uniform on [0, 1).
  double uniform();
  /// Uniform integer on [0, bound).
  std::uint64_t below(std::uint64_t bound);
  /// Standard normal (Box-Muller, one cached spare).
  double normal();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace pecok

#endif  // PECOK_RANDOM_HPP
