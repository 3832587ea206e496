#include "poro/adaptive.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace poro {

namespace {

bool valid_energy(double e) { return e > 0.0 && e <= 1.0; }

void feed(PodBasis& basis, const VectorXd& snapshot) { ipod_update(basis, snapshot); }

}  // namespace

void MoreDwrConfig::validate() const {
  if (!(tol_rel > 0.0)) throw std::invalid_argument("moredwr: tolerance must be positive");
  if (!valid_energy(energy_primal_u) || !valid_energy(energy_primal_p) || !valid_energy(energy_dual_u) ||
      !valid_energy(energy_dual_p))
    throw std::invalid_argument("moredwr: energy thresholds must lie in (0, 1]");
  if (extra_dual_iterations < 0) throw std::invalid_argument("moredwr: extra dual iterations must be >= 0");
  if (extra_dual_steps < 0) throw std::invalid_argument("moredwr: extra dual steps must be >= 0");
  if (max_iterations && *max_iterations < 1) throw std::invalid_argument("moredwr: max iterations must be >= 1");
  if (min_iterations < 0) throw std::invalid_argument("moredwr: min iterations must be >= 0");
}

int MoreDwrConfig::first_stop_iteration() const {
  const int hold = hold_stop_during_extra_dual ? extra_dual_iterations + 1 : 1;
  return std::max({1, min_iterations, hold});
}

std::string to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Converged: return "converged";
    case RunStatus::Trivial: return "trivial";
    case RunStatus::MaxIterations: return "max_iterations";
  }
  return "unknown";
}

InitialBases initialize_bases(const StepSystem& system, const TimeGrid& grid, const MoreDwrConfig& config) {
  InitialBases init;
  init.primal.u = PodBasis::empty(system.n_u(), config.energy_primal_u);
  init.primal.p = PodBasis::empty(system.n_p(), config.energy_primal_p);
  init.dual.u = PodBasis::empty(system.n_u(), config.energy_dual_u);
  init.dual.p = PodBasis::empty(system.n_p(), config.energy_dual_p);
  if (grid.num_elements == 0) return init;

  const auto u1 = system.primal_step(StateVector::zero(system.n_u(), system.n_p(), 0));
  feed(init.primal.u, u1.u);
  feed(init.primal.p, u1.p);
  const int big_m = grid.num_elements;
  const auto z = system.dual_step(StateVector::zero(system.n_u(), system.n_p(), big_m));
  feed(init.dual.u, z.u);
  feed(init.dual.p, z.p);
  init.fom_solves = 2;
  return init;
}

int enrich_at(const StepSystem& system, BasisPair& primal_bases, BasisPair& dual_bases,
              const ReducedTrajectory& primal, const ReducedTrajectory& dual, int m_max) {
  const int big_m = static_cast<int>(primal.coeffs.size()) - 1;
  if (m_max < 1 || m_max > big_m) throw std::out_of_range("enrich_at: element index out of range");

  const auto start = lift_state(primal, m_max - 1, primal_bases);
  const auto u = system.primal_step(start);
  const auto dual_start = lift_state(dual, m_max, dual_bases);
  const auto z = system.dual_step(dual_start);

  feed(primal_bases.u, u.u);
  feed(primal_bases.p, u.p);
  feed(dual_bases.u, z.u);
  feed(dual_bases.p, z.p);
  return 2;
}

int extra_dual_start(const MoreDwrConfig& config, int num_elements) {
  return std::clamp(config.extra_dual_steps, 0, num_elements);
}

int extra_dual_enrichment(const StepSystem& system, BasisPair& dual_bases, const StateVector& start,
                          int iteration, const MoreDwrConfig& config) {
  if (iteration > config.extra_dual_iterations) return 0;
  const int first = start.time_index;
  if (first <= 0) return 0;

  MatrixXd snaps_u(system.n_u(), first);
  MatrixXd snaps_p(system.n_p(), first);
  auto state = start;
  for (int j = 0; j < first; ++j) {
    state = system.dual_step(state);
    snaps_u.col(j) = state.u;
    snaps_p.col(j) = state.p;
  }
  ipod_update(dual_bases.u, snaps_u);
  ipod_update(dual_bases.p, snaps_p);
  return first;
}

MoreDwrResult run_moredwr(const StepSystem& system, const TimeGrid& grid, const MoreDwrConfig& config,
                          std::optional<double> reference_goal) {
  config.validate();
  grid.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() + system.setup_seconds();
  };
  const auto& ops = system.operators();
  const int max_iterations = config.max_iterations.value_or(std::max(grid.num_elements, 1));

  MoreDwrResult res;
  auto& rec = res.record;
  auto init = initialize_bases(system, grid, config);
  res.primal_bases = std::move(init.primal);
  res.dual_bases = std::move(init.dual);
  rec.initialization_solves = init.fom_solves;

  const auto finish = [&] {
    rec.primal_u = res.primal_bases.u.rank();
    rec.primal_p = res.primal_bases.p.rank();
    rec.dual_u = res.dual_bases.u.rank();
    rec.dual_p = res.dual_bases.p.rank();
    rec.goal_integrand = reduced_goal_integrand(res.reduced, res.primal);
    rec.wall_seconds = elapsed();
  };

  const bool trivial = grid.num_elements == 0 ||
                       (res.primal_bases.u.is_empty() && res.primal_bases.p.is_empty()) ||
                       (res.dual_bases.u.is_empty() && res.dual_bases.p.is_empty());
  if (trivial) {
    res.reduced = project_operators(ops, grid.num_elements > 0 ? grid.k() : 1.0, res.primal_bases, res.dual_bases);
    res.primal = solve_primal_rom(res.reduced, grid);
    res.dual = solve_dual_rom(res.reduced, grid);
    const double j_rom = reduced_goal(res.reduced, res.primal, grid);
    rec.report.eta_m.assign(static_cast<std::size_t>(grid.num_elements), 0.0);
    rec.report.eta_m_rel = rec.report.eta_m;
    rec.report.j_rom = j_rom;
    rec.report.j_fom = reference_goal;
    rec.status = RunStatus::Trivial;
    finish();
    rec.iterations.push_back({1, 0.0, std::nullopt, rec.primal_u, rec.primal_p, rec.dual_u, rec.dual_p,
                              rec.fom_solves(), rec.wall_seconds, 0});
    return res;
  }

  const int first_stop = config.first_stop_iteration();
  for (int it = 1;; ++it) {
    res.reduced = project_operators(ops, grid.k(), res.primal_bases, res.dual_bases);
    res.primal = solve_primal_rom(res.reduced, grid);
    res.dual = solve_dual_rom(res.reduced, grid);
    const double j_rom = reduced_goal(res.reduced, res.primal, grid);
    rec.report = make_report(estimate_elementwise(res.reduced, res.primal, res.dual), j_rom, reference_goal);

    IterationLog log;
    log.iteration = it;
    log.eta_rel = rec.report.eta_rel;
    if (reference_goal && *reference_goal != 0.0) log.true_rel = (*reference_goal - j_rom) / *reference_goal;
    log.primal_u = res.primal_bases.u.rank();
    log.primal_p = res.primal_bases.p.rank();
    log.dual_u = res.dual_bases.u.rank();
    log.dual_p = res.dual_bases.p.rank();
    log.fom_solves = rec.fom_solves();

    const bool converged = std::abs(rec.report.eta_rel) < config.tol_rel && it >= first_stop;
    if (converged || it >= max_iterations) {
      rec.status = converged ? RunStatus::Converged : RunStatus::MaxIterations;
      log.wall_seconds = elapsed();
      rec.iterations.push_back(log);
      break;
    }

    log.enriched_element = rec.report.argmax_element;
    const bool extra = it <= config.extra_dual_iterations;
    const auto extra_start = extra ? lift_state(res.dual, extra_dual_start(config, grid.num_elements), res.dual_bases)
                                   : StateVector{};
    rec.enrichment_solves +=
        enrich_at(system, res.primal_bases, res.dual_bases, res.primal, res.dual, log.enriched_element);
    if (extra) rec.extra_dual_solves += extra_dual_enrichment(system, res.dual_bases, extra_start, it, config);
    log.wall_seconds = elapsed();
    rec.iterations.push_back(log);
  }
  finish();
  return res;
}

}  // namespace poro
