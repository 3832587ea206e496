#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "poro/adaptive.hpp"
#include "poro/config.hpp"
#include "poro/report.hpp"
#include "poro/taylor_hood.hpp"

namespace poro {

/// Assembled benchmark ready for FOM or MORe DWR runs.
struct Problem {
  ProblemSpec spec;
  TaylorHoodSpace space;
  std::shared_ptr<const BlockOperators> ops;

  StepSystem step_system() const { return StepSystem(ops, spec.grid.k(), spec.solver); }
  RunKey key() const;
};

Problem build_problem(const ProblemSpec& spec);

/// Exit status of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitSolver = 3, kExitNotConverged = 4 };
int exit_code(RunStatus status);

struct FomOutcome {
  FomSummary summary;
  std::vector<double> goal_integrand;
};

/// Full-order sweep. Writes goal_trajectory.csv and fom_summary.csv when
/// `out` is set.
FomOutcome cmd_fom(const ProblemSpec& spec, const std::optional<std::filesystem::path>& out);

struct MoreDwrOutcome {
  SummaryRow summary;
  RunRecord record;
};

/// Adaptive run. A reference directory written by cmd_fom supplies J_fom,
/// the FOM goal trajectory and the FOM wall time; it must match the spec.
/// Writes goal_trajectory.csv, iterations.csv and summary.csv when `out` is
/// set, also for non-converged runs.
MoreDwrOutcome cmd_moredwr(const ProblemSpec& spec, const std::optional<std::filesystem::path>& out,
                           const std::optional<std::filesystem::path>& reference);

/// Gathers summary.csv of each bundle directory, sorted by tolerance.
/// Refuses bundles of different problems, meshes or time grids. Writes
/// compare.csv when `out` is set and returns the text table.
std::string cmd_compare(const std::vector<std::filesystem::path>& bundles,
                        const std::optional<std::filesystem::path>& out);

SummaryRow make_summary(const Problem& problem, const RunRecord& record, std::optional<double> fom_wall_seconds);

/// Applies the PORO_NUM_THREADS environment variable, if set.
void apply_thread_environment();

}  // namespace poro
