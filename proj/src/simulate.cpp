#include "pecok/simulate.hpp"

#include "pecok/baselines.hpp"
#include "pecok/errors.hpp"
#include "pecok/metrics.hpp"
#include "pecok/pipeline.hpp"
#include "pecok/random.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cctype>
#include <cmath>
#include <map>
#include <thread>
#include <tuple>

namespace pecok {
namespace {

constexpr int kBaselineRestarts = 10;

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

constexpr Method kAllMethods[] = {Method::kPecok, Method::kPecokAdaptive, Method::kSdp,
                                  Method::kKmeans, Method::kWard, Method::kLowrank};

}  // namespace

const char* to_string(Scenario s) {
  switch (s) {
    case Scenario::kS1:
      return "s1";
    case Scenario::kS2:
      return "s2";
    case Scenario::kCustom:
      return "custom";
  }
  return "unknown";
}

Scenario parse_scenario(const std::string& s) {
  const std::string l = lower(s);
  if (l == "s1") return Scenario::kS1;
  if (l == "s2") return Scenario::kS2;
  if (l == "custom") return Scenario::kCustom;
  throw ParameterError("unknown scenario '" + s + "'");
}

const char* to_string(Method m) {
  switch (m) {
    case Method::kPecok:
      return "pecok";
    case Method::kPecokAdaptive:
      return "pecok_adaptive";
    case Method::kSdp:
      return "sdp";
    case Method::kKmeans:
      return "kmeans";
    case Method::kWard:
      return "ward";
    case Method::kLowrank:
      return "lowrank";
  }
  return "unknown";
}

Method parse_method(const std::string& s) {
  const std::string l = lower(s);
  for (Method m : kAllMethods) {
    if (l == to_string(m)) return m;
  }
  throw ParameterError("unknown method '" + s + "'");
}

std::vector<double> geometric_sigma_ratios(int k) {
  if (k < 1) throw ParameterError("need at least one group");
  if (k == 1) return {1.0};
  std::vector<double> out(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) out[static_cast<std::size_t>(i)] = std::pow(10.0, -1.0 + static_cast<double>(i) / (k - 1));
  out.back() = 1.0;
  return out;
}

ScenarioConfig ScenarioConfig::defaults(Scenario scenario) {
  ScenarioConfig c;
  c.scenario = scenario;
  c.sigma_ratios = geometric_sigma_ratios(c.k);
  switch (scenario) {
    case Scenario::kS1:
      for (int s = 1; s <= 20; ++s) c.snr_grid.push_back(s);
      c.p_grid = {c.p};
      break;
    case Scenario::kS2:
      c.snr_grid = {c.snr_fixed};
      c.p_grid = {100, 300, 1000, 3000, 10000, 20000, 40000, 100000, 400000};
      break;
    case Scenario::kCustom:
      c.snr_grid = {c.snr_fixed};
      c.p_grid = {c.p};
      break;
  }
  return c;
}

void ScenarioConfig::validate() const {
  if (n < 1 || k < 1 || k > n) throw ParameterError("need 1 <= K <= n");
  if (n % k != 0) throw ParameterError("K must divide n for equal group sizes");
  if (replications < 1) throw ParameterError("replications must be positive");
  if (jobs < 1) throw ParameterError("jobs must be positive");
  if (static_cast<int>(sigma_ratios.size()) != k) throw ParameterError("need one sigma ratio per group");
  for (double r : sigma_ratios) {
    if (!(r >= 0.0)) throw ParameterError("sigma ratios must be nonnegative");
  }
  if (*std::max_element(sigma_ratios.begin(), sigma_ratios.end()) <= 0.0) {
    throw ParameterError("at least one sigma ratio must be positive");
  }
  admm.validate();
  if (points().empty()) throw ParameterError("scenario has no sweep points");
  for (const auto& pt : points()) {
    if (!(pt.snr > 0.0)) throw ParameterError("SNR values must be positive");
    if (pt.p < k) throw ParameterError("dimension p must be at least K");
  }
}

std::vector<ScenarioConfig::Point> ScenarioConfig::points() const {
  std::vector<Point> out;
  switch (scenario) {
    case Scenario::kS1:
      for (double s : snr_grid) out.push_back({s, p});
      break;
    case Scenario::kS2:
      for (long q : p_grid) {
        if (q <= p_cap) out.push_back({snr_fixed, q});
      }
      break;
    case Scenario::kCustom:
      for (double s : snr_grid) {
        for (long q : p_grid) {
          if (q <= p_cap) out.push_back({s, q});
        }
      }
      break;
  }
  return out;
}

double TrialRecord::point_value() const { return scenario == Scenario::kS2 ? static_cast<double>(p) : snr; }

ClusterGroundTruth make_truth(int n, int p, int k, double snr, const std::vector<double>& sigma_ratios,
                              std::uint64_t seed) {
  if (k < 1 || n < k || n % k != 0) throw ParameterError("K must divide n for equal group sizes");
  if (p < k) throw ParameterError("dimension p must be at least K");
  if (!(snr > 0.0)) throw ParameterError("SNR must be positive");
  if (static_cast<int>(sigma_ratios.size()) != k) throw ParameterError("need one sigma ratio per group");
  const double max_ratio = *std::max_element(sigma_ratios.begin(), sigma_ratios.end());
  if (!(max_ratio > 0.0)) throw ParameterError("at least one sigma ratio must be positive");

  std::vector<int> labels(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) labels[static_cast<std::size_t>(a)] = a % k;
  Rng rng(derive_seed(seed, {0x6c6162656c73ULL}));
  for (std::size_t i = labels.size(); i > 1; --i) {
    std::swap(labels[i - 1], labels[rng.below(i)]);
  }

  ClusterGroundTruth truth;
  truth.partition = LabelPartition(labels);
  truth.p = static_cast<std::size_t>(p);
  truth.delta = 0.0;
  const double side = std::sqrt(snr / 2.0);
  for (int c = 0; c < k; ++c) {
    Eigen::VectorXd mu = Eigen::VectorXd::Zero(p);
    if (k > 1) mu(c) = side;
    truth.means.push_back(std::move(mu));
  }
  for (int a = 0; a < n; ++a) {
    const double sd = sigma_ratios[static_cast<std::size_t>(labels[static_cast<std::size_t>(a)])] / max_ratio;
    truth.covariances.push_back(Covariance::isotropic(sd * sd));
  }
  return truth;
}

DataMatrix sample(const ClusterGroundTruth& truth, std::uint64_t seed) {
  truth.validate();
  const auto n = static_cast<Eigen::Index>(truth.partition.n());
  const auto p = static_cast<Eigen::Index>(truth.p);
  DataMatrix x(n, p);
  for (Eigen::Index a = 0; a < n; ++a) {
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(a)}));
    const Eigen::VectorXd nu = truth.point_mean(static_cast<std::size_t>(a));
    const Covariance& cov = truth.covariances[static_cast<std::size_t>(a)];
    for (Eigen::Index j = 0; j < p; ++j) {
      const double sd = std::sqrt(cov.entry(static_cast<std::size_t>(j)));
      const double z = rng.normal();
      x(a, j) = nu(j) + sd * z;
    }
  }
  return x;
}

double kappa_reference(const ClusterGroundTruth& truth) {
  const double sep = separation(truth);
  return static_cast<double>(truth.partition.min_group_size()) * sep * sep / 2.0;
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t point_index, int rep) {
  return derive_seed(seed, {static_cast<std::uint64_t>(point_index), static_cast<std::uint64_t>(rep)});
}

namespace {

struct TrialJob {
  std::size_t point_index;
  ScenarioConfig::Point point;
  int rep;
};

void run_method(const ScenarioConfig& config, const ClusterGroundTruth& truth, const DataMatrix& x,
                std::uint64_t seed, TrialRecord& rec) {
  const int k = config.k;
  LabelPartition estimate;
  PipelineOptions options;
  options.admm = config.admm;
  switch (rec.method) {
    case Method::kPecok:
    case Method::kSdp: {
      options.correct = rec.method == Method::kPecok;
      const auto r = cluster_sdp(x, KnownK{k}, options);
      estimate = r.rounding.partition;
      rec.iterations = r.solve.iterations;
      rec.converged = r.solve.converged;
      break;
    }
    case Method::kPecokAdaptive: {
      const auto r = cluster_sdp(x, Penalized{kappa_reference(truth)}, options);
      estimate = r.rounding.partition;
      rec.iterations = r.solve.iterations;
      rec.converged = r.solve.converged;
      break;
    }
    case Method::kKmeans:
      estimate = kmeans(x, k, kBaselineRestarts, derive_seed(seed, {1})).partition;
      break;
    case Method::kWard:
      estimate = ward(x, k);
      break;
    case Method::kLowrank:
      estimate = lowrank_cluster(gram_matrix(x), k, derive_seed(seed, {2}));
      break;
  }
  rec.k_hat = estimate.k();
  rec.split_join = split_join(truth.partition, estimate);
  rec.exact = rec.split_join == 0;
}

}  // namespace

std::vector<TrialRecord> run_scenario(const ScenarioConfig& config, const std::vector<Method>& methods) {
  config.validate();
  if (methods.empty()) throw ParameterError("no methods selected");
  const auto points = config.points();
  std::vector<TrialJob> jobs;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (int r = 0; r < config.replications; ++r) jobs.push_back({i, points[i], r});
  }
  std::vector<TrialRecord> records(jobs.size() * methods.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      const std::size_t j = next.fetch_add(1);
      if (j >= jobs.size()) return;
      const TrialJob& job = jobs[j];
      const std::uint64_t seed = trial_seed(config.seed, job.point_index, job.rep);
      ClusterGroundTruth truth;
      DataMatrix x;
      std::string setup_error;
      try {
        truth = make_truth(config.n, static_cast<int>(job.point.p), config.k, job.point.snr, config.sigma_ratios,
                           seed);
        x = sample(truth, derive_seed(seed, {0}));
      } catch (const std::exception& e) {
        setup_error = e.what();
      }
      for (std::size_t mi = 0; mi < methods.size(); ++mi) {
        TrialRecord& rec = records[j * methods.size() + mi];
        rec.scenario = config.scenario;
        rec.point_index = job.point_index;
        rec.snr = job.point.snr;
        rec.p = job.point.p;
        rec.rep = job.rep;
        rec.method = methods[mi];
        if (!setup_error.empty()) {
          rec.failed = true;
          rec.error = setup_error;
          continue;
        }
        const auto start = std::chrono::steady_clock::now();
        try {
          run_method(config, truth, x, derive_seed(seed, {100 + static_cast<std::uint64_t>(methods[mi])}), rec);
        } catch (const std::exception& e) {
          rec.failed = true;
          rec.error = e.what();
        }
        if (config.record_timing) {
          rec.runtime_ms =
              std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        }
      }
    }
  };
  const int threads = std::max(1, std::min<int>(config.jobs, static_cast<int>(jobs.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return records;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) return std::nan("");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records) {
  // Keyed by (point, method order of first appearance).
  std::map<std::pair<std::size_t, int>, std::vector<const TrialRecord*>> groups;
  std::map<Method, int> method_order;
  for (const auto& r : records) {
    method_order.try_emplace(r.method, static_cast<int>(method_order.size()));
  }
  for (const auto& r : records) groups[{r.point_index, method_order[r.method]}].push_back(&r);

  std::vector<SummaryRow> out;
  for (const auto& [key, recs] : groups) {
    SummaryRow row;
    row.point_index = key.first;
    row.point_value = recs.front()->point_value();
    row.method = recs.front()->method;
    row.trials = recs.size();
    std::vector<double> sj;
    std::size_t exact = 0;
    for (const auto* r : recs) {
      if (r->failed) {
        ++row.failures;
        continue;
      }
      sj.push_back(static_cast<double>(r->split_join));
      if (r->exact) ++exact;
    }
    row.median = quantile(sj, 0.5);
    row.q25 = quantile(sj, 0.25);
    row.q75 = quantile(sj, 0.75);
    row.exact_rate = sj.empty() ? 0.0 : static_cast<double>(exact) / static_cast<double>(sj.size());
    out.push_back(row);
  }
  return out;
}

}  // namespace pecok
