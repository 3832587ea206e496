#include "poro/rom.hpp"

#include <cmath>

#include <Eigen/LU>

namespace poro {

using Eigen::Index;

MatrixXd ProjectedBlocks::step(double k) const {
  const Index nu = A.rows(), np = M.rows();
  const Index mu = A.cols(), mp = M.cols();
  MatrixXd s(nu + np, mu + mp);
  s << A, C, D, M + k * K;
  return s;
}

MatrixXd ProjectedBlocks::transfer() const {
  const Index nu = A.rows(), np = M.rows();
  const Index mu = A.cols(), mp = M.cols();
  MatrixXd t = MatrixXd::Zero(nu + np, mu + mp);
  t.bottomLeftCorner(np, mu) = D;
  t.bottomRightCorner(np, mp) = M;
  return t;
}

ProjectedBlocks project_blocks(const BlockOperators& ops, const MatrixXd& test_u, const MatrixXd& test_p,
                               const MatrixXd& trial_u, const MatrixXd& trial_p) {
  if (test_u.rows() != ops.n_u() || trial_u.rows() != ops.n_u() || test_p.rows() != ops.n_p() ||
      trial_p.rows() != ops.n_p())
    throw std::invalid_argument("project_blocks: basis row count does not match the FOM space");
  ProjectedBlocks b;
  b.A = test_u.transpose() * (ops.A_uu * trial_u);
  b.C = test_u.transpose() * (ops.C_up * trial_p);
  b.D = test_p.transpose() * (ops.D_pu * trial_u);
  b.M = test_p.transpose() * (ops.M_pp * trial_p);
  b.K = test_p.transpose() * (ops.K_pp * trial_p);
  return b;
}

bool ReducedOperators::is_current(const BasisPair& primal_bases, const BasisPair& dual_bases) const {
  return versions == BasisVersions{primal_bases.u.version, primal_bases.p.version, dual_bases.u.version,
                                   dual_bases.p.version};
}

ReducedOperators project_operators(const BlockOperators& ops, double k, const BasisPair& primal_bases,
                                   const BasisPair& dual_bases) {
  const auto& psi_u = primal_bases.u.modes;
  const auto& psi_p = primal_bases.p.modes;
  const auto& phi_u = dual_bases.u.modes;
  const auto& phi_p = dual_bases.p.modes;

  ReducedOperators red;
  red.k = k;
  red.primal_u = psi_u.cols();
  red.primal_p = psi_p.cols();
  red.dual_u = phi_u.cols();
  red.dual_p = phi_p.cols();
  red.versions = {primal_bases.u.version, primal_bases.p.version, dual_bases.u.version, dual_bases.p.version};

  red.primal = project_blocks(ops, psi_u, psi_p, psi_u, psi_p);
  red.dual = project_blocks(ops, phi_u, phi_p, phi_u, phi_p);
  red.cross = project_blocks(ops, phi_u, phi_p, psi_u, psi_p);

  red.primal_load = psi_u.transpose() * ops.f_traction;
  red.primal_goal = psi_p.transpose() * ops.g_goal;
  red.dual_goal = phi_p.transpose() * ops.g_goal;
  red.cross_load = phi_u.transpose() * ops.f_traction;

  red.primal_step = red.primal.step(k);
  red.primal_transfer = red.primal.transfer();
  red.dual_step = red.dual.step(k);
  red.dual_transfer = red.dual.transfer();
  red.cross_step = red.cross.step(k);
  red.cross_transfer = red.cross.transfer();
  return red;
}

namespace {

// LU of a symmetrically equilibrated reduced step matrix.
class ScaledLu {
 public:
  explicit ScaledLu(const MatrixXd& s) {
    scale_ = VectorXd::Ones(s.rows());
    for (Index i = 0; i < s.rows(); ++i) {
      const double d = std::abs(s(i, i));
      if (d > 0.0) scale_[i] = 1.0 / std::sqrt(d);
    }
    const MatrixXd scaled = scale_.asDiagonal() * s * scale_.asDiagonal();
    lu_.compute(scaled);
    if (s.rows() > 0) {
      const double rcond = lu_.rcond();
      if (!(rcond > 1e-14))
        throw DegenerateBasis("reduced step matrix is numerically singular (rcond " + std::to_string(rcond) + ")");
    }
  }

  VectorXd solve(const VectorXd& rhs) const {
    return scale_.cwiseProduct(lu_.solve(scale_.cwiseProduct(rhs)));
  }

 private:
  VectorXd scale_;
  Eigen::PartialPivLU<MatrixXd> lu_;
};

}  // namespace

ReducedTrajectory solve_primal_rom(const ReducedOperators& red, const TimeGrid& grid) {
  const Index n = red.primal_size();
  ReducedTrajectory traj;
  traj.n_u = red.primal_u;
  traj.n_p = red.primal_p;
  traj.versions = red.versions;
  traj.coeffs.reserve(static_cast<std::size_t>(grid.num_elements) + 1);
  traj.coeffs.push_back(VectorXd::Zero(n));
  if (grid.num_elements == 0) return traj;

  const ScaledLu lu(red.primal_step);
  VectorXd load = VectorXd::Zero(n);
  load.head(red.primal_u) = red.primal_load;
  for (int m = 1; m <= grid.num_elements; ++m)
    traj.coeffs.push_back(n == 0 ? VectorXd(VectorXd::Zero(0))
                                 : lu.solve(red.primal_transfer * traj.coeffs.back() + load));
  return traj;
}

ReducedTrajectory solve_dual_rom(const ReducedOperators& red, const TimeGrid& grid) {
  const Index n = red.dual_size();
  const int big_m = grid.num_elements;
  ReducedTrajectory traj;
  traj.n_u = red.dual_u;
  traj.n_p = red.dual_p;
  traj.versions = red.versions;
  traj.coeffs.assign(static_cast<std::size_t>(big_m) + 1, VectorXd::Zero(n));
  if (big_m == 0 || n == 0) return traj;

  const ScaledLu lu(red.dual_step.transpose());
  VectorXd goal = VectorXd::Zero(n);
  goal.tail(red.dual_p) = grid.k() * red.dual_goal;
  const MatrixXd transfer_t = red.dual_transfer.transpose();
  for (int m = big_m - 1; m >= 0; --m)
    traj.coeffs[m] = lu.solve(transfer_t * traj.coeffs[m + 1] + goal);
  return traj;
}

VectorXd lift(const VectorXd& coeffs, const PodBasis& basis) {
  if (coeffs.size() != basis.rank()) throw std::invalid_argument("lift: coefficient length does not match basis rank");
  if (basis.rank() == 0) return VectorXd::Zero(basis.rows());
  return basis.modes * coeffs;
}

StateVector lift_state(const ReducedTrajectory& traj, int m, const BasisPair& bases) {
  return {lift(traj.u(m), bases.u), lift(traj.p(m), bases.p), m};
}

std::vector<double> reduced_goal_integrand(const ReducedOperators& red, const ReducedTrajectory& primal) {
  std::vector<double> out;
  out.reserve(primal.coeffs.size());
  for (std::size_t m = 1; m < primal.coeffs.size(); ++m)
    out.push_back(red.primal_goal.dot(primal.coeffs[m].tail(primal.n_p)));
  return out;
}

double reduced_goal(const ReducedOperators& red, const ReducedTrajectory& primal, const TimeGrid& grid) {
  double j = 0.0;
  for (double v : reduced_goal_integrand(red, primal)) j += grid.k() * v;
  return j;
}

}  // namespace poro
