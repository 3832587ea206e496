#include "poro/commands.hpp"

#include <algorithm>
#include <cstdlib>

#include <omp.h>

namespace poro {

namespace fs = std::filesystem;

RunKey Problem::key() const {
  return {std::string(to_string(spec.kind)), format_cells(spec.cells), spec.grid.num_elements, spec.grid.t_end};
}

Problem build_problem(const ProblemSpec& spec) {
  spec.validate();
  auto mesh = tag_boundaries(StructuredMesh::build(spec.origin, spec.extent, spec.cells), spec.kind);
  TaylorHoodSpace space(std::move(mesh));
  auto ops = std::make_shared<const BlockOperators>(assemble_problem(space, spec.material, spec.kind));
  return Problem{spec, std::move(space), std::move(ops)};
}

int exit_code(RunStatus status) { return status == RunStatus::MaxIterations ? kExitNotConverged : kExitOk; }

FomOutcome cmd_fom(const ProblemSpec& spec, const std::optional<fs::path>& out) {
  const auto problem = build_problem(spec);
  const auto system = problem.step_system();
  const auto traj = run_primal_fom(system, spec.grid, StateVector::zero(system.n_u(), system.n_p()));

  FomOutcome res;
  res.goal_integrand = goal_integrand(traj, problem.ops->g_goal);
  auto& s = res.summary;
  s.key = problem.key();
  s.solver = spec.solver.method == SolverMethod::Direct ? "direct" : "gmres";
  s.n_u = system.n_u();
  s.n_p = system.n_p();
  s.j_fom = evaluate_goal(traj, spec.grid, problem.ops->g_goal);
  s.wall_seconds = system.setup_seconds() + traj.wall_seconds;
  s.linear_solves = traj.linear_solves;
  if (out) {
    write_goal_trajectory(*out / "goal_trajectory.csv", spec.grid, nullptr, &res.goal_integrand);
    write_fom_summary(*out / "fom_summary.csv", s);
  }
  return res;
}

SummaryRow make_summary(const Problem& problem, const RunRecord& record, std::optional<double> fom_wall_seconds) {
  SummaryRow r;
  r.key = problem.key();
  r.tol_rel = problem.spec.moredwr.tol_rel;
  r.status = to_string(record.status);
  r.iterations = static_cast<int>(record.iterations.size());
  r.eta_rel = record.report.eta_rel;
  r.fom_solves = record.fom_solves();
  r.primal_u = record.primal_u;
  r.primal_p = record.primal_p;
  r.dual_u = record.dual_u;
  r.dual_p = record.dual_p;
  r.j_rom = record.report.j_rom;
  r.j_fom = record.report.j_fom;
  r.wall_seconds = record.wall_seconds;
  if (r.j_fom) {
    if (*r.j_fom != 0.0) r.e_rel = std::abs(*r.j_fom - r.j_rom) / std::abs(*r.j_fom);
    r.i_eff = record.report.effectivity;
    r.i_ind = record.report.indicator;
  }
  if (fom_wall_seconds && record.wall_seconds > 0.0) r.speedup = *fom_wall_seconds / record.wall_seconds;
  return r;
}

MoreDwrOutcome cmd_moredwr(const ProblemSpec& spec, const std::optional<fs::path>& out,
                           const std::optional<fs::path>& reference) {
  const auto problem = build_problem(spec);

  std::optional<FomSummary> ref;
  std::vector<double> ref_goal;
  if (reference) {
    ref = read_fom_summary(*reference / "fom_summary.csv");
    if (!(ref->key == problem.key()))
      throw ConfigError("reference " + reference->string() + " was computed for " + ref->key.problem + " " +
                        ref->key.cells + " with " + std::to_string(ref->key.steps) +
                        " steps, which does not match the requested run");
    ref_goal = read_fom_goal_trajectory(*reference / "goal_trajectory.csv");
  }

  const auto system = problem.step_system();
  auto run = run_moredwr(system, spec.grid, spec.moredwr,
                         ref ? std::optional<double>(ref->j_fom) : std::nullopt);

  MoreDwrOutcome res;
  res.summary = make_summary(problem, run.record, ref ? std::optional<double>(ref->wall_seconds) : std::nullopt);
  res.record = std::move(run.record);
  if (out) {
    write_goal_trajectory(*out / "goal_trajectory.csv", spec.grid, &res.record.goal_integrand,
                          ref ? &ref_goal : nullptr);
    write_iterations(*out / "iterations.csv", res.record);
    write_summary(*out / "summary.csv", {res.summary});
  }
  return res;
}

std::string cmd_compare(const std::vector<fs::path>& bundles, const std::optional<fs::path>& out) {
  if (bundles.empty()) throw ConfigError("compare: at least one bundle is required");
  std::vector<SummaryRow> rows;
  for (const auto& b : bundles) {
    const auto path = fs::is_directory(b) ? b / "summary.csv" : b;
    for (auto& r : read_summary(path)) {
      if (!rows.empty() && !(r.key == rows.front().key))
        throw ConfigError("compare: " + path.string() + " belongs to " + r.key.problem + " " + r.key.cells + " with " +
                          std::to_string(r.key.steps) + " steps, unlike " + rows.front().key.problem + " " +
                          rows.front().key.cells + " with " + std::to_string(rows.front().key.steps) + " steps");
      rows.push_back(std::move(r));
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.tol_rel < b.tol_rel; });
  if (out) write_summary(*out / "compare.csv", rows);
  return format_table(rows);
}

void apply_thread_environment() {
  const char* env = std::getenv("PORO_NUM_THREADS");
  if (!env || !*env) return;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1) throw ConfigError("PORO_NUM_THREADS must be a positive integer");
  omp_set_num_threads(static_cast<int>(n));
  Eigen::setNbThreads(static_cast<int>(n));
}

}  // namespace poro
