#ifndef PECOK_CLI_HPP
#define PECOK_CLI_HPP

#include "pecok/oracle.hpp"
#include "pecok/sdp_solver.hpp"
#include "pecok/simulate.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace pecok {

/// Process exit codes of the pecok tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitInputError = 2,
  kExitParameterError = 3,
  kExitNumericalError = 4,
};

/// Entry point of the `pecok` tool. `args` excludes the program name.
/// Subcommands: solve, bench, counterexample.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct CounterexampleReport {
  std::size_t m = 0;
  double delta2 = 0.0, gamma_plus = 0.0, gamma_minus = 0.0;
  double objective_b_star = 0.0;        // <B*, Lambda + Gamma>
  double objective_merge_split = 0.0;   // <B1, Lambda + Gamma>
  double closed_form_b_star = 0.0;      // 3 m Delta^2 / 2 + gamma_plus + 2 gamma_minus
  double closed_form_merge_split = 0.0; // m Delta^2 + 2 gamma_plus + gamma_minus
  AdmmResult uncorrected;               // solve on Lambda + Gamma
  AdmmResult corrected;                 // solve on Lambda
  double uncorrected_distance = 0.0;    // max |B - B*|
  double corrected_distance = 0.0;
  bool uncorrected_recovers = false;    // distance <= 1e-3
  bool corrected_recovers = false;
};

CounterexampleReport run_counterexample(std::size_t m, double delta2, double gamma_plus, double gamma_minus,
                                        const AdmmSettings& settings = {});

void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& records);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows, Scenario scenario);

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double v);

}  // namespace pecok

#endif  // PECOK_CLI_HPP
