#include "pecok/cli.hpp"

#include "pecok/csv.hpp"
#include "pecok/errors.hpp"
#include "pecok/pipeline.hpp"
#include "pecok/plot.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace pecok {
namespace {

constexpr double kRecoveryTolerance = 1e-3;

struct AdmmFlags {
  int max_iters = 3000;
  double eps_abs = 1e-6;
  double eps_rel = 1e-5;
  double penalty = 0.0;  // 0 = automatic
  bool no_adapt = false;

  void attach(CLI::App& app) {
    app.add_option("--admm-max-iters", max_iters, "ADMM iteration cap")->capture_default_str();
    app.add_option("--admm-eps-abs", eps_abs, "ADMM absolute tolerance")->capture_default_str();
    app.add_option("--admm-eps-rel", eps_rel, "ADMM relative tolerance")->capture_default_str();
    app.add_option("--admm-penalty", penalty, "ADMM penalty (0 = |A|_F / |B0|_F)")->capture_default_str();
    app.add_flag("--admm-no-adapt", no_adapt, "Disable residual balancing of the penalty");
  }

  AdmmSettings settings() const {
    AdmmSettings s;
    s.max_iters = max_iters;
    s.eps_abs = eps_abs;
    s.eps_rel = eps_rel;
    if (penalty != 0.0) s.penalty = penalty;
    s.adapt_penalty = !no_adapt;
    s.validate();
    return s;
  }
};

// key=value lines; '#' starts a comment.
std::vector<std::string> config_arguments(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file " + path.string());
  std::vector<std::string> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InputError("config line " + std::to_string(line_no) + ": expected key=value");
    }
    auto strip = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));
    if (key.empty()) throw InputError("config line " + std::to_string(line_no) + ": empty key");
    out.push_back("--" + key + "=" + value);
  }
  return out;
}

// Config-file entries go before the explicit flags so that, with
// take-last semantics, flags win over the file.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  if (args.empty()) return args;
  for (std::size_t i = 1; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      continue;
    }
    std::vector<std::string> out{args[0]};
    for (auto& a : config_arguments(path)) out.push_back(std::move(a));
    out.insert(out.end(), args.begin() + 1, args.end());
    return out;
  }
  return args;
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    T v{};
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc{} || ptr != item.data() + item.size()) {
      throw ParameterError(std::string("bad value '") + item + "' in " + what);
    }
    out.push_back(v);
  }
  if (out.empty()) throw ParameterError(std::string("empty list for ") + what);
  return out;
}

std::string csv_bool(bool b) { return b ? "1" : "0"; }

int cmd_solve(const std::string& input, std::optional<int> k, std::optional<double> kappa, bool no_correction,
              const AdmmFlags& admm, std::size_t max_points, const std::string& out_path,
              const std::string& diag_path, std::ostream& out, std::ostream& err) {
  if (k.has_value() == kappa.has_value()) throw ParameterError("exactly one of --k and --kappa is required");
  const DataMatrix x = read_data_csv(std::filesystem::path(input));
  PipelineOptions options;
  options.correct = !no_correction;
  options.admm = admm.settings();
  options.gamma.max_points = max_points;
  GroupCount groups = k ? GroupCount{KnownK{*k}} : GroupCount{Penalized{*kappa}};
  const PipelineResult r = cluster_sdp(x, groups, options);

  std::ostringstream labels;
  write_labels_csv(labels, r.rounding.partition);
  if (out_path.empty()) {
    out << labels.str();
  } else {
    std::ofstream f(out_path);
    if (!f) throw InputError("cannot write " + out_path);
    f << labels.str();
  }

  std::ostringstream diag;
  diag << "objective " << format_double(r.solve.objective) << '\n'
       << "primal_residual " << format_double(r.solve.primal_residual) << '\n'
       << "dual_residual " << format_double(r.solve.dual_residual) << '\n'
       << "iterations " << r.solve.iterations << '\n'
       << "converged " << (r.solve.converged ? "true" : "false") << '\n'
       << "max_feasibility_violation " << format_double(r.solve.feasibility.worst()) << '\n'
       << "integrality_gap " << format_double(r.rounding.integrality_gap) << '\n'
       << "rounding " << to_string(r.rounding.method_used) << '\n'
       << "k_hat " << r.rounding.k_hat << '\n'
       << "correction " << (options.correct ? "on" : "off") << '\n';
  if (diag_path.empty()) {
    err << diag.str();
  } else {
    std::ofstream f(diag_path);
    if (!f) throw InputError("cannot write " + diag_path);
    f << diag.str();
  }
  return kExitOk;
}

void write_plot(const std::filesystem::path& path, Scenario scenario, const std::vector<SummaryRow>& rows) {
  std::map<Method, PlotSeries> by_method;
  std::vector<Method> order;
  for (const auto& r : rows) {
    auto [it, inserted] = by_method.try_emplace(r.method);
    if (inserted) {
      it->second.label = to_string(r.method);
      order.push_back(r.method);
    }
    const double x = scenario == Scenario::kS2 ? std::log10(r.point_value) : r.point_value;
    it->second.x.push_back(x);
    it->second.median.push_back(r.median);
    it->second.low.push_back(r.q25);
    it->second.high.push_back(r.q75);
  }
  std::vector<PlotSeries> series;
  for (Method m : order) series.push_back(by_method[m]);
  std::ofstream f(path);
  if (!f) throw InputError("cannot write " + path.string());
  const std::string name = to_string(scenario);
  write_svg_plot(f, "scenario " + name + ": median split-join (q25-q75 bars)",
                 scenario == Scenario::kS2 ? "log10 p" : "SNR", "split-join", series);
}

struct BenchFlags {
  std::string scenario = "s1";
  std::optional<int> n, p, k, reps, jobs;
  std::optional<std::string> snr_grid, p_grid, sigma_ratios, methods;
  std::optional<double> snr_fixed;
  std::optional<long> p_cap;
  std::uint64_t seed = 0;
  std::string out_dir = "bench_out";
  bool no_timing = false;
  AdmmFlags admm;
};

int cmd_bench(const BenchFlags& f, std::ostream& out) {
  ScenarioConfig config = ScenarioConfig::defaults(parse_scenario(f.scenario));
  if (f.n) config.n = *f.n;
  if (f.p) {
    config.p = *f.p;
    if (config.scenario != Scenario::kS2 && !f.p_grid) config.p_grid = {config.p};
  }
  if (f.k) {
    config.k = *f.k;
    if (!f.sigma_ratios) config.sigma_ratios = geometric_sigma_ratios(config.k);
  }
  if (f.reps) config.replications = *f.reps;
  if (f.jobs) config.jobs = *f.jobs;
  if (f.snr_grid) config.snr_grid = parse_list<double>(*f.snr_grid, "--snr-grid");
  if (f.p_grid) config.p_grid = parse_list<long>(*f.p_grid, "--p-grid");
  if (f.sigma_ratios) config.sigma_ratios = parse_list<double>(*f.sigma_ratios, "--sigma-ratios");
  if (f.snr_fixed) config.snr_fixed = *f.snr_fixed;
  if (f.p_cap) config.p_cap = *f.p_cap;
  config.seed = f.seed;
  config.record_timing = !f.no_timing;
  config.admm = f.admm.settings();

  std::vector<Method> methods{Method::kPecok, Method::kKmeans, Method::kWard, Method::kLowrank};
  if (f.methods) {
    methods.clear();
    std::stringstream ss(*f.methods);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) methods.push_back(parse_method(item));
    }
  }
  config.validate();

  const auto records = run_scenario(config, methods);
  const auto summary = summarize(records);

  const std::filesystem::path dir(f.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InputError("cannot create output directory " + dir.string());
  {
    std::ofstream t(dir / "trials.csv");
    if (!t) throw InputError("cannot write trials.csv");
    write_trials_csv(t, records);
  }
  {
    std::ofstream s(dir / "summary.csv");
    if (!s) throw InputError("cannot write summary.csv");
    write_summary_csv(s, summary, config.scenario);
  }
  write_plot(dir / (std::string(to_string(config.scenario)) + ".svg"), config.scenario, summary);

  std::size_t failed = 0;
  for (const auto& r : records) failed += r.failed ? 1 : 0;
  out << "trials " << records.size() << " failed " << failed << " -> " << dir.string() << '\n';
  return failed == records.size() ? kExitNumericalError : kExitOk;
}

int cmd_counterexample(std::size_t m, double delta2, double gp, double gm, const AdmmFlags& admm,
                       std::ostream& out) {
  const auto r = run_counterexample(m, delta2, gp, gm, admm.settings());
  out << "instance m=" << r.m << " delta2=" << format_double(r.delta2) << " gamma_plus=" << format_double(r.gamma_plus)
      << " gamma_minus=" << format_double(r.gamma_minus) << '\n'
      << "objective_b_star " << format_double(r.objective_b_star) << " closed_form "
      << format_double(r.closed_form_b_star) << '\n'
      << "objective_merge_split " << format_double(r.objective_merge_split) << " closed_form "
      << format_double(r.closed_form_merge_split) << '\n'
      << "objective_difference " << format_double(r.objective_merge_split - r.objective_b_star) << '\n'
      << "uncorrected recovers=" << (r.uncorrected_recovers ? "true" : "false")
      << " max_abs_diff=" << format_double(r.uncorrected_distance) << " iterations=" << r.uncorrected.iterations
      << '\n'
      << "corrected recovers=" << (r.corrected_recovers ? "true" : "false")
      << " max_abs_diff=" << format_double(r.corrected_distance) << " iterations=" << r.corrected.iterations << '\n';
  return kExitOk;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

CounterexampleReport run_counterexample(std::size_t m, double delta2, double gamma_plus, double gamma_minus,
                                        const AdmmSettings& settings) {
  const auto inst = heteroscedastic_instance(m, delta2, gamma_plus, gamma_minus);
  const SymMatrix biased = inst.population.signal + inst.population.bias;
  CounterexampleReport r;
  r.m = m;
  r.delta2 = delta2;
  r.gamma_plus = gamma_plus;
  r.gamma_minus = gamma_minus;
  const double md = static_cast<double>(m) * delta2;
  r.objective_b_star = (biased.array() * inst.b_star.array()).sum();
  r.objective_merge_split = (biased.array() * inst.merge_split.array()).sum();
  r.closed_form_b_star = 1.5 * md + gamma_plus + 2.0 * gamma_minus;
  r.closed_form_merge_split = md + 2.0 * gamma_plus + gamma_minus;
  r.uncorrected = solve_fixed_k(biased, 3, settings);
  // Correcting with the exact bias leaves Lambda.
  r.corrected = solve_fixed_k(biased - inst.population.bias, 3, settings);
  r.uncorrected_distance = (r.uncorrected.solution - inst.b_star).cwiseAbs().maxCoeff();
  r.corrected_distance = (r.corrected.solution - inst.b_star).cwiseAbs().maxCoeff();
  r.uncorrected_recovers = r.uncorrected_distance <= kRecoveryTolerance;
  r.corrected_recovers = r.corrected_distance <= kRecoveryTolerance;
  return r;
}

void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << "scenario,point,rep,method,split_join,exact,runtime_ms,iterations,converged,error\n";
  for (const auto& r : records) {
    std::string error = r.error;
    for (auto& c : error) {
      if (c == ',' || c == '\n' || c == '"') c = ' ';
    }
    out << to_string(r.scenario) << ',' << format_double(r.point_value()) << ',' << r.rep << ',' << to_string(r.method)
        << ',' << (r.failed ? "" : std::to_string(r.split_join)) << ',' << (r.failed ? "" : csv_bool(r.exact)) << ','
        << format_double(r.runtime_ms) << ',' << r.iterations << ',' << csv_bool(r.converged) << ',' << error
        << '\n';
  }
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows, Scenario scenario) {
  out << "scenario,point,method,trials,failures,median,q25,q75,exact_rate\n";
  for (const auto& r : rows) {
    out << to_string(scenario) << ',' << format_double(r.point_value) << ',' << to_string(r.method) << ','
        << r.trials << ',' << r.failures << ',' << format_double(r.median) << ',' << format_double(r.q25) << ','
        << format_double(r.q75) << ',' << format_double(r.exact_rate) << '\n';
  }
}

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Corrected semidefinite K-means: solver, benchmarks and diagnostics", "pecok"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "Cluster the rows of a CSV file");
  std::string input, out_path, diag_path;
  std::optional<int> k;
  std::optional<double> kappa;
  bool no_correction = false;
  std::size_t max_points = 500;
  AdmmFlags solve_admm;
  solve->add_option("input", input, "CSV file, one observation per row")->required();
  auto* k_opt = solve->add_option("--k", k, "Number of groups (fixed-K program)");
  solve->add_option("--kappa", kappa, "Trace penalty (adaptive program, K unknown)")->excludes(k_opt);
  solve->add_flag("--no-correction", no_correction, "Skip the diagonal Gram correction");
  solve->add_option("--out", out_path, "Labels CSV path (default: stdout)");
  solve->add_option("--diagnostics", diag_path, "Diagnostics path (default: stderr)");
  solve->add_option("--max-points", max_points, "Refuse inputs with more rows")->capture_default_str();
  solve->add_option("--config", "key=value file; flags override it");
  solve_admm.attach(*solve);

  // bench
  auto* bench = app.add_subcommand("bench", "Run a simulation sweep and write trials, summary and plot");
  BenchFlags bf;
  bench->add_option("--scenario", bf.scenario, "s1 (SNR sweep), s2 (dimension sweep) or custom")
      ->capture_default_str();
  bench->add_option("--n", bf.n, "Points per sample (default 30)");
  bench->add_option("--p", bf.p, "Dimension for s1/custom (default 2000)");
  bench->add_option("--k", bf.k, "Number of groups (default 3)");
  bench->add_option("--snr-grid", bf.snr_grid, "Comma-separated SNR values");
  bench->add_option("--p-grid", bf.p_grid, "Comma-separated dimensions");
  bench->add_option("--snr-fixed", bf.snr_fixed, "SNR for s2 (default 8)");
  bench->add_option("--p-cap", bf.p_cap, "Drop grid dimensions above this (default 20000)");
  bench->add_option("--sigma-ratios", bf.sigma_ratios, "Comma-separated per-group std ratios");
  bench->add_option("--reps", bf.reps, "Replications per point (default 100)");
  bench->add_option("--methods", bf.methods, "Comma-separated: pecok,pecok_adaptive,sdp,kmeans,ward,lowrank");
  bench->add_option("--seed", bf.seed, "Base seed")->envname("PECOK_SEED")->capture_default_str();
  bench->add_option("--jobs", bf.jobs, "Worker threads (default 1)");
  bench->add_option("--out", bf.out_dir, "Output directory")->capture_default_str();
  bench->add_flag("--no-timing", bf.no_timing, "Write runtime_ms as 0 for byte-identical replays");
  bench->add_option("--config", "key=value file; flags override it");
  bf.admm.attach(*bench);

  // counterexample
  auto* cex = app.add_subcommand("counterexample", "Heteroscedastic instance where uncorrected K-means fails");
  std::size_t m = 5;
  double delta2 = 1.0, gp = 10.0, gm = 1.0;
  AdmmFlags cex_admm;
  cex->add_option("--m", m, "Group size")->capture_default_str();
  cex->add_option("--delta2", delta2, "Squared separation")->capture_default_str();
  cex->add_option("--gamma-plus", gp, "Noise trace of the first group")->capture_default_str();
  cex->add_option("--gamma-minus", gm, "Noise trace of the other groups")->capture_default_str();
  cex->add_option("--config", "key=value file; flags override it");
  cex_admm.attach(*cex);

  try {
    std::vector<std::string> args = expand_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParameterError;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInputError;
  }

  try {
    if (solve->parsed()) {
      return cmd_solve(input, k, kappa, no_correction, solve_admm, max_points, out_path, diag_path, out, err);
    }
    if (bench->parsed()) return cmd_bench(bf, out);
    if (cex->parsed()) return cmd_counterexample(m, delta2, gp, gm, cex_admm, out);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const ParameterError& e) {
    err << "parameter error: " << e.what() << '\n';
    return kExitParameterError;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumericalError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace pecok
