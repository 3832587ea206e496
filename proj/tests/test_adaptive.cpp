#include <doctest.h>

#include <cmath>

#include "test_util.hpp"

using namespace poro;

namespace {

struct Setup {
  StepSystem system;
  TimeGrid grid;
  double j_fom;

  Setup(int nx, int ny, int steps, const MaterialParams& mat = {})
      : system(testing::mandel_ops(nx, ny, mat), 1000.0), grid{0.0, 1000.0 * steps, steps} {
    j_fom = evaluate_goal(run_primal_fom(system, grid, StateVector::zero(system.n_u(), system.n_p())), grid,
                          system.operators().g_goal);
  }
};

void check_accounting(const RunRecord& rec, const MoreDwrConfig& cfg) {
  int enriched = 0;
  for (const auto& it : rec.iterations) enriched += it.enriched_element > 0;
  CHECK(rec.initialization_solves == 2);
  CHECK(rec.enrichment_solves == 2 * enriched);
  CHECK(rec.fom_solves() == rec.initialization_solves + rec.enrichment_solves + rec.extra_dual_solves);
  const int extra_rounds = std::min(cfg.extra_dual_iterations, enriched);
  CHECK(rec.extra_dual_solves <= extra_rounds * cfg.extra_dual_steps);
  for (std::size_t i = 1; i < rec.iterations.size(); ++i) {
    const auto& a = rec.iterations[i - 1];
    const auto& b = rec.iterations[i];
    CHECK(b.iteration == a.iteration + 1);
    CHECK(b.fom_solves > a.fom_solves);
    CHECK(b.primal_u >= a.primal_u);
    CHECK(b.primal_p >= a.primal_p);
    CHECK(b.dual_u >= a.dual_u);
    CHECK(b.dual_p >= a.dual_p);
  }
}

}  // namespace

TEST_CASE("config validation and stop hold") {
  MoreDwrConfig c;
  CHECK_NOTHROW(c.validate());
  CHECK(c.first_stop_iteration() == 6);
  c.extra_dual_iterations = 0;
  CHECK(c.first_stop_iteration() == 1);
  c.min_iterations = 20;
  CHECK(c.first_stop_iteration() == 20);
  c = {};
  c.hold_stop_during_extra_dual = false;
  CHECK(c.first_stop_iteration() == 1);
  c = {};
  c.tol_rel = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.energy_dual_p = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.energy_primal_u = 1.01;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.max_iterations = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  CHECK(to_string(RunStatus::MaxIterations) == "max_iterations");
}

TEST_CASE("extra dual start index") {
  MoreDwrConfig c;
  CHECK(extra_dual_start(c, 5000) == 5);
  CHECK(extra_dual_start(c, 3) == 3);
  c.extra_dual_steps = 0;
  CHECK(extra_dual_start(c, 10) == 0);
}

TEST_CASE("initialization feeds one snapshot per basis") {
  const Setup s(4, 2, 20);
  const auto init = initialize_bases(s.system, s.grid, MoreDwrConfig{});
  CHECK(init.fom_solves == 2);
  CHECK(init.primal.u.rank() == 1);
  CHECK(init.primal.p.rank() == 1);
  CHECK(init.dual.u.rank() == 1);
  CHECK(init.dual.p.rank() == 1);
  CHECK(init.primal.u.energy_threshold == MoreDwrConfig{}.energy_primal_u);
}

TEST_CASE("zero traction is trivial") {
  MaterialParams mat;
  mat.traction = 0.0;
  const Setup s(4, 2, 10, mat);
  const auto res = run_moredwr(s.system, s.grid, MoreDwrConfig{});
  CHECK(res.record.status == RunStatus::Trivial);
  CHECK(res.primal_bases.u.is_empty());
  CHECK(res.record.fom_solves() == 2);
}

TEST_CASE("absurdly loose tolerance stops after the first estimate") {
  const Setup s(4, 2, 20);
  MoreDwrConfig cfg;
  cfg.tol_rel = 1e6;
  cfg.extra_dual_iterations = 0;
  const auto res = run_moredwr(s.system, s.grid, cfg);
  CHECK(res.record.status == RunStatus::Converged);
  REQUIRE(res.record.iterations.size() == 1);
  CHECK(res.record.iterations[0].enriched_element == 0);
  CHECK(res.record.fom_solves() == 2);
  CHECK(res.record.primal_u == 1);
}

TEST_CASE("small Mandel run converges against the FOM reference") {
  const Setup s(4, 2, 20);
  MoreDwrConfig cfg;
  const auto res = run_moredwr(s.system, s.grid, cfg, s.j_fom);
  const auto& rec = res.record;
  CHECK(rec.status == RunStatus::Converged);
  CHECK(std::abs(rec.report.eta_rel) < 0.01);
  const double true_rel = std::abs(s.j_fom - rec.report.j_rom) / std::abs(s.j_fom);
  CHECK(true_rel < 0.015);
  REQUIRE(rec.report.effectivity.has_value());
  REQUIRE(rec.iterations.back().true_rel.has_value());
  CHECK(std::abs(*rec.iterations.back().true_rel) == doctest::Approx(true_rel).epsilon(1e-12));
  CHECK(rec.iterations.back().eta_rel == rec.report.eta_rel);
  CHECK(rec.goal_integrand.size() == 20);
  check_accounting(rec, cfg);

  // The returned trajectory is the one the final estimate was computed on.
  const auto eta = estimate_elementwise(res.reduced, res.primal, res.dual);
  CHECK(eta == rec.report.eta_m);
}

TEST_CASE("runs are reproducible") {
  const Setup s(3, 2, 15);
  MoreDwrConfig cfg;
  cfg.tol_rel = 1e-3;
  const auto a = run_moredwr(s.system, s.grid, cfg, s.j_fom).record;
  const auto b = run_moredwr(s.system, s.grid, cfg, s.j_fom).record;
  REQUIRE(a.iterations.size() == b.iterations.size());
  for (std::size_t i = 0; i < a.iterations.size(); ++i) {
    CHECK(a.iterations[i].eta_rel == b.iterations[i].eta_rel);
    CHECK(a.iterations[i].enriched_element == b.iterations[i].enriched_element);
    CHECK(a.iterations[i].dual_p == b.iterations[i].dual_p);
  }
  CHECK(a.report.eta_m == b.report.eta_m);
  CHECK(a.fom_solves() == b.fom_solves());
  check_accounting(a, cfg);
}

TEST_CASE("iteration cap reports non-convergence") {
  const Setup s(4, 2, 20);
  MoreDwrConfig cfg;
  cfg.tol_rel = 1e-14;
  cfg.max_iterations = 3;
  cfg.extra_dual_iterations = 1;
  const auto res = run_moredwr(s.system, s.grid, cfg, s.j_fom);
  CHECK(res.record.status == RunStatus::MaxIterations);
  CHECK(res.record.iterations.size() == 3);
  CHECK(res.record.iterations.back().enriched_element == 0);
  check_accounting(res.record, cfg);
}

TEST_CASE("minimum iteration floor") {
  const Setup s(4, 2, 20);
  MoreDwrConfig cfg;
  cfg.tol_rel = 1e6;
  cfg.extra_dual_iterations = 0;
  cfg.min_iterations = 4;
  const auto res = run_moredwr(s.system, s.grid, cfg);
  CHECK(res.record.iterations.size() == 4);
  CHECK(res.record.status == RunStatus::Converged);
}

TEST_CASE("enrichment with snapshots already in the span") {
  const Setup s(2, 1, 6);
  const auto& ops = s.system.operators();
  auto primal = testing::full_bases(ops.n_u(), ops.n_p());
  auto dual = testing::full_bases(ops.n_u(), ops.n_p());
  const auto red = project_operators(ops, s.grid.k(), primal, dual);
  const auto rp = solve_primal_rom(red, s.grid);
  const auto rd = solve_dual_rom(red, s.grid);
  CHECK(enrich_at(s.system, primal, dual, rp, rd, 3) == 2);
  CHECK(primal.u.rank() == ops.n_u());
  CHECK(dual.p.rank() == ops.n_p());
}

TEST_CASE("extra dual enrichment") {
  const Setup s(4, 2, 20);
  MoreDwrConfig cfg;
  auto init = initialize_bases(s.system, s.grid, cfg);
  const auto start = StateVector::zero(s.system.n_u(), s.system.n_p(), extra_dual_start(cfg, 20));
  CHECK(extra_dual_enrichment(s.system, init.dual, start, 1, cfg) == 5);
  CHECK(init.dual.p.rank() >= 1);
  CHECK(extra_dual_enrichment(s.system, init.dual, start, 6, cfg) == 0);
  cfg.extra_dual_iterations = 0;
  CHECK(extra_dual_enrichment(s.system, init.dual, start, 1, cfg) == 0);
}
