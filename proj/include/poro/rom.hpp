#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "poro/assembly.hpp"
#include "poro/fom.hpp"
#include "poro/pod.hpp"

namespace poro {

/// Separate displacement and pressure bases of one problem (primal or dual).
struct BasisPair {
  PodBasis u;
  PodBasis p;
};

/// Two-sided projections test^T * block * trial of the five FOM blocks.
struct ProjectedBlocks {
  MatrixXd A;  // test_u^T A_uu trial_u
  MatrixXd C;  // test_u^T C_up trial_p
  MatrixXd D;  // test_p^T D_pu trial_u
  MatrixXd M;  // test_p^T M_pp trial_p
  MatrixXd K;  // test_p^T K_pp trial_p

  /// [A C; D M + k K]
  MatrixXd step(double k) const;
  /// [0 0; D M], the part of the previous state entering the flow row.
  MatrixXd transfer() const;
};

ProjectedBlocks project_blocks(const BlockOperators& ops, const MatrixXd& test_u, const MatrixXd& test_p,
                               const MatrixXd& trial_u, const MatrixXd& trial_p);

using BasisVersions = std::array<std::uint64_t, 4>;

/// Reduced primal and dual systems plus the dual-test x primal-trial cross
/// blocks that evaluate the residual estimator without lifting.
struct ReducedOperators {
  double k = 0.0;
  Eigen::Index primal_u = 0, primal_p = 0, dual_u = 0, dual_p = 0;
  BasisVersions versions{};

  ProjectedBlocks primal;
  ProjectedBlocks dual;
  ProjectedBlocks cross;

  VectorXd primal_load;  // Psi_u^T f
  VectorXd primal_goal;  // Psi_p^T g
  VectorXd dual_goal;    // Phi_p^T g
  VectorXd cross_load;   // Phi_u^T f

  MatrixXd primal_step, primal_transfer;
  MatrixXd dual_step, dual_transfer;  // projections of the primal step with dual bases
  MatrixXd cross_step, cross_transfer;

  Eigen::Index primal_size() const { return primal_u + primal_p; }
  Eigen::Index dual_size() const { return dual_u + dual_p; }
  bool is_current(const BasisPair& primal_bases, const BasisPair& dual_bases) const;
};

ReducedOperators project_operators(const BlockOperators& ops, double k, const BasisPair& primal_bases,
                                   const BasisPair& dual_bases);

/// Per time index coefficient vectors [u; p] of length n_u + n_p.
struct ReducedTrajectory {
  std::vector<VectorXd> coeffs;
  Eigen::Index n_u = 0;
  Eigen::Index n_p = 0;
  BasisVersions versions{};

  VectorXd u(int m) const { return coeffs.at(static_cast<std::size_t>(m)).head(n_u); }
  VectorXd p(int m) const { return coeffs.at(static_cast<std::size_t>(m)).tail(n_p); }
};

/// Raised when a reduced step matrix is numerically singular.
class DegenerateBasis : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reduced backward-Euler sweep from the zero initial state; entry m holds
/// the coefficients of U_m, m = 0..M.
ReducedTrajectory solve_primal_rom(const ReducedOperators& red, const TimeGrid& grid);

/// Reduced adjoint sweep backward from Z(T) = 0; entry m holds the dual
/// coefficients on I_{m+1}, entry M the terminal zero.
ReducedTrajectory solve_dual_rom(const ReducedOperators& red, const TimeGrid& grid);

/// basis * coeffs
VectorXd lift(const VectorXd& coeffs, const PodBasis& basis);
StateVector lift_state(const ReducedTrajectory& traj, int m, const BasisPair& bases);

/// J_rom = sum_m k (Psi_p^T g)^T p_m.
double reduced_goal(const ReducedOperators& red, const ReducedTrajectory& primal, const TimeGrid& grid);
std::vector<double> reduced_goal_integrand(const ReducedOperators& red, const ReducedTrajectory& primal);

}  // namespace poro
