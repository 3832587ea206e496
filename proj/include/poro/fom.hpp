#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "poro/assembly.hpp"
#include "poro/linsolve.hpp"

namespace poro {

/// Uniform partition of [t_start, t_end] into temporal elements
/// I_m = (t_{m-1}, t_m), m = 1..num_elements.
struct TimeGrid {
  double t_start = 0.0;
  double t_end = 5e6;
  int num_elements = 5000;

  double k() const { return (t_end - t_start) / num_elements; }
  double time(int m) const { return t_start + k() * m; }
  void validate() const;
};

/// Coefficients of (u, p) at one time index. For the adjoint, index m holds
/// the dual state living on element I_{m+1}.
struct StateVector {
  VectorXd u;
  VectorXd p;
  int time_index = 0;

  static StateVector zero(Index n_u, Index n_p, int time_index = 0);
};

struct Trajectory {
  std::vector<StateVector> states;
  double wall_seconds = 0.0;
  int linear_solves = 0;
};

/// Backward-Euler step system in the formulation where the mechanics
/// equation is not scaled by the timestep:
///
///   [ A_uu        C_up      ] [u_m]   [ f                            ]
///   [ D_pu   M_pp + k K_pp  ] [p_m] = [ D_pu u_{m-1} + M_pp p_{m-1}  ]
///
/// Unknowns are ordered (u, p). The adjoint step uses the exact transpose.
class StepSystem {
 public:
  StepSystem(std::shared_ptr<const BlockOperators> ops, double k, LinearSolverConfig config = {});
  StepSystem(BlockOperators ops, double k, LinearSolverConfig config = {});

  const BlockOperators& operators() const { return *ops_; }
  double k() const { return k_; }
  Index n_u() const { return ops_->n_u(); }
  Index n_p() const { return ops_->n_p(); }
  const LinearSolverConfig& config() const { return config_; }

  /// Monolithic primal step matrix.
  const SparseMatrix& matrix() const { return matrix_; }
  /// Monolithic dual step matrix (the explicit transpose of matrix()).
  const SparseMatrix& dual_matrix() const { return dual_matrix_; }

  StateVector primal_step(const StateVector& prev) const;
  /// Adjoint step from the state on I_{m+2} (index m+1) to index m. The goal
  /// functional enters as k * g in the pressure test block.
  StateVector dual_step(const StateVector& next_dual) const;

  /// Wall time spent building the step matrices and factorizing them.
  double setup_seconds() const { return setup_seconds_; }

  /// Solver iterations of the last GMRES call (0 for direct).
  int last_iterations() const { return last_iterations_; }

  VectorXd stack(const StateVector& s) const;
  StateVector split(const VectorXd& x, int time_index) const;

 private:
  VectorXd solve(const VectorXd& rhs, bool transposed, const VectorXd* guess) const;

  std::shared_ptr<const BlockOperators> ops_;
  double k_;
  LinearSolverConfig config_;
  double setup_seconds_ = 0.0;
  SparseMatrix matrix_;
  SparseMatrix dual_matrix_;
  std::optional<DirectFactorization> lu_;
  mutable int last_iterations_ = 0;
};

Trajectory run_primal_fom(const StepSystem& system, const TimeGrid& grid, const StateVector& initial);

/// Runs the adjoint backward from Z(T) = 0. Entry m (0..M) of the result is
/// the dual state on I_{m+1}; entry M is the terminal condition.
Trajectory run_dual_fom(const StepSystem& system, const TimeGrid& grid);

/// J = sum_{m=1}^{M} k g^T p_m.
double evaluate_goal(const Trajectory& primal, const TimeGrid& grid, const VectorXd& g_goal);

/// g^T p_m for m = 1..M.
std::vector<double> goal_integrand(const Trajectory& primal, const VectorXd& g_goal);

}  // namespace poro
