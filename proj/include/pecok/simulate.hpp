#ifndef PECOK_SIMULATE_HPP
#define PECOK_SIMULATE_HPP

#include "pecok/core_model.hpp"
#include "pecok/sdp_solver.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace pecok {

enum class Scenario {
  kS1,      // sweep SNR at fixed p
  kS2,      // sweep p at fixed SNR
  kCustom,  // product of snr_grid and p_grid
};

const char* to_string(Scenario s);
/// Accepts "s1", "s2", "custom" (case-insensitive). Throws ParameterError.
Scenario parse_scenario(const std::string& s);

enum class Method {
  kPecok,          // corrected SDP, known K
  kPecokAdaptive,  // corrected SDP, unknown K, kappa = kappa_reference
  kSdp,            // uncorrected SDP, known K
  kKmeans,
  kWard,
  kLowrank,
};

const char* to_string(Method m);
/// Accepts the names returned by to_string(Method). Throws ParameterError.
Method parse_method(const std::string& s);

/// Sigma ratios spaced geometrically between 0.1 and 1.0.
std::vector<double> geometric_sigma_ratios(int k);

struct ScenarioConfig {
  Scenario scenario = Scenario::kS1;
  int n = 30;
  int p = 2000;
  int k = 3;
  std::vector<double> snr_grid;
  std::vector<long> p_grid;
  double snr_fixed = 8.0;
  /// Grid values of p above this are dropped.
  long p_cap = 20000;
  std::vector<double> sigma_ratios;
  int replications = 100;
  std::uint64_t seed = 0;
  AdmmSettings admm;
  /// Worker threads for the sweep; results do not depend on it.
  int jobs = 1;
  /// When false, runtime_ms is recorded as 0 so that sweeps replay
  /// byte-for-byte.
  bool record_timing = true;

  /// Defaults for each scenario: S1 sweeps SNR 1..20 at p = 2000; S2 sweeps
  /// p from 100 upward at SNR 8.
  static ScenarioConfig defaults(Scenario scenario);

  /// Throws ParameterError on empty or nonpositive grids, K not dividing n,
  /// or sigma ratios of the wrong length.
  void validate() const;

  struct Point {
    double snr;
    long p;
  };
  /// Sweep points in order (p_cap applied).
  std::vector<Point> points() const;
};

struct TrialRecord {
  Scenario scenario = Scenario::kS1;
  std::size_t point_index = 0;
  double snr = 0.0;
  long p = 0;
  int rep = 0;
  Method method = Method::kPecok;
  long split_join = 0;
  bool exact = false;
  double runtime_ms = 0.0;
  int iterations = 0;     // ADMM iterations, 0 for non-SDP methods
  bool converged = true;  // ADMM convergence, true for non-SDP methods
  int k_hat = 0;
  bool failed = false;
  std::string error;

  /// The swept coordinate: snr for S1, p for S2, snr for custom.
  double point_value() const;
};

/// Equal groups of size n / K with shuffled membership, means
/// sqrt(snr / 2) e_k (pairwise distance sqrt(snr) with the largest cluster
/// std normalized to 1), cluster std sigma_ratio_k / max ratio, delta = 0.
/// Throws ParameterError when K does not divide n, p < K or snr <= 0.
ClusterGroundTruth make_truth(int n, int p, int k, double snr, const std::vector<double>& sigma_ratios,
                              std::uint64_t seed);

/// X_a = nu_a + Sigma_a^{1/2} z_a with z_a standard normal.
DataMatrix sample(const ClusterGroundTruth& truth, std::uint64_t seed);

/// m * separation^2 / 2 with m the smallest group size. Requires K >= 2.
double kappa_reference(const ClusterGroundTruth& truth);

/// Seed of trial (point, rep).
std::uint64_t trial_seed(std::uint64_t seed, std::size_t point_index, int rep);

/// Runs every (point, replication, method) combination. Per-trial failures
/// are captured in the record. Records come back sorted by point,
/// replication and method order.
std::vector<TrialRecord> run_scenario(const ScenarioConfig& config, const std::vector<Method>& methods);

struct SummaryRow {
  std::size_t point_index = 0;
  double point_value = 0.0;
  Method method = Method::kPecok;
  std::size_t trials = 0;
  std::size_t failures = 0;
  double median = 0.0;
  double q25 = 0.0;
  double q75 = 0.0;
  double exact_rate = 0.0;
};

/// Linear-interpolation quantile of unsorted values, q in [0, 1].
double quantile(std::vector<double> values, double q);

/// Per (point, method) split-join median and quartiles over successful trials.
std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records);

}  // namespace pecok

#endif  // PECOK_SIMULATE_HPP
