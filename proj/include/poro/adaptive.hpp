#pragma once

#include <optional>
#include <string>
#include <vector>

#include "poro/estimator.hpp"
#include "poro/fom.hpp"
#include "poro/pod.hpp"
#include "poro/rom.hpp"

namespace poro {

struct MoreDwrConfig {
  double tol_rel = 0.01;
  double energy_primal_u = 1.0 - 1e-7;
  double energy_primal_p = 1.0 - 1e-11;
  double energy_dual_u = 1.0 - 1e-9;
  double energy_dual_p = 1.0 - 1e-9;
  /// Number of leading iterations that also feed the last dual steps.
  int extra_dual_iterations = 5;
  /// Dual FOM steps per extra enrichment, ending at t_0.
  int extra_dual_steps = 5;
  /// Unset means the number of temporal elements.
  std::optional<int> max_iterations;
  int min_iterations = 0;
  /// Skip the stopping test while the extra dual enrichment is still active.
  /// The estimate of the first iterations rests on a one-snapshot dual basis
  /// and can be orders of magnitude too small.
  bool hold_stop_during_extra_dual = true;

  /// First iteration at which the stopping test is applied.
  int first_stop_iteration() const;
  void validate() const;
};

struct IterationLog {
  int iteration = 0;
  double eta_rel = 0.0;
  std::optional<double> true_rel;
  Eigen::Index primal_u = 0, primal_p = 0, dual_u = 0, dual_p = 0;
  int fom_solves = 0;  // cumulative
  double wall_seconds = 0.0;  // cumulative since the start of the run
  /// Element enriched after this estimate, 0 when the loop stopped.
  int enriched_element = 0;
};

enum class RunStatus { Converged, Trivial, MaxIterations };
std::string to_string(RunStatus status);

struct RunRecord {
  RunStatus status = RunStatus::Converged;
  std::vector<IterationLog> iterations;
  EstimateReport report;  // estimate of the returned trajectory

  int initialization_solves = 0;
  int enrichment_solves = 0;
  int extra_dual_solves = 0;
  int fom_solves() const { return initialization_solves + enrichment_solves + extra_dual_solves; }

  /// Includes the step-system setup so it compares with a FOM sweep on the
  /// same system.
  double wall_seconds = 0.0;
  std::vector<double> goal_integrand;  // g^T p_m of the ROM, m = 1..M
  Eigen::Index primal_u = 0, primal_p = 0, dual_u = 0, dual_p = 0;
};

struct MoreDwrResult {
  RunRecord record;
  BasisPair primal_bases;
  BasisPair dual_bases;
  ReducedOperators reduced;
  ReducedTrajectory primal;
  ReducedTrajectory dual;
};

struct InitialBases {
  BasisPair primal;
  BasisPair dual;
  int fom_solves = 0;
};

/// One primal FOM step from the zero initial state and one dual FOM step
/// from the zero terminal state, each feeding its two bases.
InitialBases initialize_bases(const StepSystem& system, const TimeGrid& grid, const MoreDwrConfig& config);

/// Local FOM solves on I_{m_max}: the primal step starts from the lifted ROM
/// state at index m_max-1, the dual step from the lifted ROM dual at index
/// m_max. Returns the number of FOM solves (always 2).
int enrich_at(const StepSystem& system, BasisPair& primal_bases, BasisPair& dual_bases,
              const ReducedTrajectory& primal, const ReducedTrajectory& dual, int m_max);

/// Dual FOM steps from `start` (the lifted ROM dual at index l) down to index
/// 0, fed to the dual bases as one bunch. Returns the number of FOM solves;
/// 0 when `iteration` exceeds the configured count.
int extra_dual_enrichment(const StepSystem& system, BasisPair& dual_bases, const StateVector& start,
                          int iteration, const MoreDwrConfig& config);

/// Index l the extra dual enrichment starts from on a grid of `num_elements`.
int extra_dual_start(const MoreDwrConfig& config, int num_elements);

/// The adaptive loop. When `reference_goal` is given the true relative error
/// is logged per iteration and the final report carries the indices.
MoreDwrResult run_moredwr(const StepSystem& system, const TimeGrid& grid, const MoreDwrConfig& config,
                          std::optional<double> reference_goal = std::nullopt);

}  // namespace poro
