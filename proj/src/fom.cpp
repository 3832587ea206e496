#include "poro/fom.hpp"

#include <chrono>
#include <stdexcept>

namespace poro {

void TimeGrid::validate() const {
  if (num_elements < 0) throw std::invalid_argument("time grid: number of temporal elements must be >= 0");
  if (num_elements > 0 && !(t_end > t_start))
    throw std::invalid_argument("time grid: end time must exceed start time");
}

StateVector StateVector::zero(Index n_u, Index n_p, int time_index) {
  return {VectorXd::Zero(n_u), VectorXd::Zero(n_p), time_index};
}

namespace {

SparseMatrix build_step_matrix(const BlockOperators& ops, double k) {
  using Triplet = Eigen::Triplet<double>;
  const Index nu = ops.n_u();
  std::vector<Triplet> trip;
  trip.reserve(static_cast<std::size_t>(ops.A_uu.nonZeros() + ops.C_up.nonZeros() + ops.D_pu.nonZeros() +
                                        ops.M_pp.nonZeros() + ops.K_pp.nonZeros()));
  auto add = [&](const SparseMatrix& m, Index r0, Index c0, double s) {
    for (int j = 0; j < m.outerSize(); ++j)
      for (SparseMatrix::InnerIterator it(m, j); it; ++it)
        trip.emplace_back(static_cast<int>(r0 + it.row()), static_cast<int>(c0 + it.col()), s * it.value());
  };
  add(ops.A_uu, 0, 0, 1.0);
  add(ops.C_up, 0, nu, 1.0);
  add(ops.D_pu, nu, 0, 1.0);
  add(ops.M_pp, nu, nu, 1.0);
  add(ops.K_pp, nu, nu, k);
  const auto n = static_cast<Eigen::Index>(nu + ops.n_p());
  SparseMatrix s(n, n);
  s.setFromTriplets(trip.begin(), trip.end());
  return s;
}

}  // namespace

StepSystem::StepSystem(BlockOperators ops, double k, LinearSolverConfig config)
    : StepSystem(std::make_shared<const BlockOperators>(std::move(ops)), k, config) {}

StepSystem::StepSystem(std::shared_ptr<const BlockOperators> ops, double k, LinearSolverConfig config)
    : ops_(std::move(ops)), k_(k), config_(config) {
  if (!ops_) throw std::invalid_argument("step system: null operators");
  if (!(k > 0.0)) throw std::invalid_argument("step system: timestep must be positive");
  config_.validate();
  const auto start = std::chrono::steady_clock::now();
  matrix_ = build_step_matrix(*ops_, k_);
  dual_matrix_ = SparseMatrix(matrix_.transpose());
  if (config_.method == SolverMethod::Direct) lu_.emplace(matrix_);
  setup_seconds_ = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

VectorXd StepSystem::stack(const StateVector& s) const {
  VectorXd x(n_u() + n_p());
  x << s.u, s.p;
  return x;
}

StateVector StepSystem::split(const VectorXd& x, int time_index) const {
  return {x.head(n_u()), x.tail(n_p()), time_index};
}

VectorXd StepSystem::solve(const VectorXd& rhs, bool transposed, const VectorXd* guess) const {
  if (lu_) {
    last_iterations_ = 0;
    return transposed ? lu_->solve_transposed(rhs) : lu_->solve(rhs);
  }
  auto r = gmres_solve(transposed ? dual_matrix_ : matrix_, rhs, config_, guess);
  last_iterations_ = r.iterations;
  return std::move(r.x);
}

StateVector StepSystem::primal_step(const StateVector& prev) const {
  const auto& ops = *ops_;
  VectorXd rhs(n_u() + n_p());
  rhs << ops.f_traction, ops.D_pu * prev.u + ops.M_pp * prev.p;
  const VectorXd guess = stack(prev);
  return split(solve(rhs, false, &guess), prev.time_index + 1);
}

StateVector StepSystem::dual_step(const StateVector& next_dual) const {
  const auto& ops = *ops_;
  VectorXd rhs(n_u() + n_p());
  rhs << ops.D_pu.transpose() * next_dual.p, ops.M_pp.transpose() * next_dual.p + k_ * ops.g_goal;
  const VectorXd guess = stack(next_dual);
  return split(solve(rhs, true, &guess), next_dual.time_index - 1);
}

Trajectory run_primal_fom(const StepSystem& system, const TimeGrid& grid, const StateVector& initial) {
  grid.validate();
  const auto start = std::chrono::steady_clock::now();
  Trajectory traj;
  traj.states.reserve(static_cast<std::size_t>(grid.num_elements) + 1);
  traj.states.push_back(initial);
  traj.states.back().time_index = 0;
  for (int m = 1; m <= grid.num_elements; ++m) {
    traj.states.push_back(system.primal_step(traj.states.back()));
    ++traj.linear_solves;
  }
  traj.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return traj;
}

Trajectory run_dual_fom(const StepSystem& system, const TimeGrid& grid) {
  grid.validate();
  const auto start = std::chrono::steady_clock::now();
  const int big_m = grid.num_elements;
  Trajectory traj;
  traj.states.resize(static_cast<std::size_t>(big_m) + 1);
  traj.states[big_m] = StateVector::zero(system.n_u(), system.n_p(), big_m);
  for (int m = big_m - 1; m >= 0; --m) {
    traj.states[m] = system.dual_step(traj.states[m + 1]);
    ++traj.linear_solves;
  }
  traj.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return traj;
}

std::vector<double> goal_integrand(const Trajectory& primal, const VectorXd& g_goal) {
  std::vector<double> out;
  for (std::size_t m = 1; m < primal.states.size(); ++m) out.push_back(g_goal.dot(primal.states[m].p));
  return out;
}

double evaluate_goal(const Trajectory& primal, const TimeGrid& grid, const VectorXd& g_goal) {
  double j = 0.0;
  for (double v : goal_integrand(primal, g_goal)) j += grid.k() * v;
  return j;
}

}  // namespace poro
