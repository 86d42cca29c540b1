#pragma once
// Orchestration of configured runs: build the grid and initial surface,
// integrate the flow while streaming per-record diagnostics to CSV, apply
// every verification check the configuration asks for, and emit a JSON
// summary. The exit-code contract for batch use:
//   0  converged and every registered check passed
//   1  usage, configuration, or initial-data error (thrown, caller maps)
//   2  the curvature left the positivity cone mid-run
//   3  the time limit struck first
//   4  converged, but at least one check failed

#include <optional>
#include <stdexcept>
#include <string>

#include "hypflow/config.hpp"
#include "hypflow/diagnostics.hpp"
#include "hypflow/flow.hpp"
#include "hypflow/sphgrid.hpp"

namespace hypflow {

// Initial surface rejected by the positivity / convexity screen the
// configured mode requires; the message names the worst offending node.
class InitRejected : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Grid make_grid(const RunConfig& cfg);

// Builds the configured initial radial field on the grid and validates it:
// positive and finite everywhere, mean convex (sigma_1 > 0) under
// mean_convex mode, uniformly convex (kappa_min > 0) under
// uniformly_convex mode. Throws InitRejected on violation, ConfigError
// for grid/keyword mismatches (e.g. m != 0 on an axisymmetric grid, or
// `base = rhat` without a stationary radius).
ScalarField make_initial(const RunConfig& cfg, const Grid& grid);

int exit_code_for(RunStatus status, bool checks_pass);

struct RunOutputs {
  FlowResult result;
  Trajectory trajectory;
  VerificationReport report;  // empty when no check applies
  std::optional<double> r_hat_exact;
  std::optional<double> r_hat_paper;
  std::optional<double> decay_rate;
  int exit_code = 1;
  std::string json;  // the summary document (also written to json_path)
};

// Runs one configured flow end to end. CSV rows stream out while the
// integration progresses; the JSON summary is written after the checks.
// Throws ConfigError / InitRejected / std::runtime_error on setup or I/O
// failure (exit code 1 territory); dynamic cone exits and time limits are
// statuses, not exceptions.
RunOutputs execute_run(const RunConfig& cfg);

// Runs the (alpha, beta) grid of cfg.sweep sequentially and writes the
// summary table (alpha, beta, status, final_radius, decay_rate) to
// cfg.output.csv_path. Cells write no per-run files. Returns 0.
int sweep_command(const RunConfig& cfg);

}  // namespace hypflow
