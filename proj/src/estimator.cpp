#include "poro/estimator.hpp"

#include <cmath>
#include <limits>

namespace poro {

std::vector<double> estimate_elementwise(const ReducedOperators& red, const ReducedTrajectory& primal,
                                         const ReducedTrajectory& dual) {
  if (primal.versions != red.versions || dual.versions != red.versions)
    throw StaleOperators("estimate_elementwise: trajectories and cross blocks belong to different bases");
  if (primal.coeffs.size() != dual.coeffs.size())
    throw std::invalid_argument("estimate_elementwise: primal and dual trajectories differ in length");
  const int big_m = static_cast<int>(primal.coeffs.size()) - 1;
  std::vector<double> eta(static_cast<std::size_t>(std::max(big_m, 0)), 0.0);
  if (red.dual_size() == 0 || red.primal_size() == 0) {
    // Only the load term survives.
    if (red.dual_u > 0)
      for (int m = 1; m <= big_m; ++m) eta[m - 1] = dual.coeffs[m - 1].head(red.dual_u).dot(red.cross_load);
    return eta;
  }

  VectorXd load = VectorXd::Zero(red.dual_size());
  load.head(red.dual_u) = red.cross_load;

#pragma omp parallel for schedule(static)
  for (int m = 1; m <= big_m; ++m) {
    const VectorXd r = load - red.cross_step * primal.coeffs[m] + red.cross_transfer * primal.coeffs[m - 1];
    eta[m - 1] = dual.coeffs[m - 1].dot(r);
  }
  return eta;
}

std::vector<double> estimate_elementwise_fom(const StepSystem& system, const std::vector<StateVector>& primal,
                                             const std::vector<StateVector>& dual) {
  if (primal.size() != dual.size())
    throw std::invalid_argument("estimate_elementwise_fom: primal and dual trajectories differ in length");
  const auto& ops = system.operators();
  const double k = system.k();
  const int big_m = static_cast<int>(primal.size()) - 1;
  std::vector<double> eta(static_cast<std::size_t>(std::max(big_m, 0)), 0.0);

#pragma omp parallel for schedule(static)
  for (int m = 1; m <= big_m; ++m) {
    const auto& cur = primal[m];
    const auto& prev = primal[m - 1];
    const auto& z = dual[m - 1];
    const VectorXd r_u = ops.f_traction - ops.A_uu * cur.u - ops.C_up * cur.p;
    const VectorXd r_p = ops.D_pu * (prev.u - cur.u) + ops.M_pp * (prev.p - cur.p) - k * (ops.K_pp * cur.p);
    eta[m - 1] = z.u.dot(r_u) + z.p.dot(r_p);
  }
  return eta;
}

RelativeEstimate global_relative(const std::vector<double>& eta_m, double j_rom) {
  RelativeEstimate out;
  for (double e : eta_m) out.eta += e;
  const double denom = j_rom + out.eta;
  if (denom == 0.0) throw DegenerateNormalization("global_relative: J_rom + eta is zero");
  out.eta_rel = out.eta / denom;
  out.eta_m_rel.reserve(eta_m.size());
  double best = -1.0;
  for (std::size_t i = 0; i < eta_m.size(); ++i) {
    const double r = eta_m[i] / denom;
    out.eta_m_rel.push_back(r);
    if (std::abs(r) > best) {
      best = std::abs(r);
      out.argmax_element = static_cast<int>(i) + 1;
    }
  }
  return out;
}

double effectivity(double j_fom, double j_rom, double eta) {
  const double err = j_fom - j_rom;
  if (eta == 0.0) return err == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  return std::abs(err / eta);
}

double indicator(double j_fom, double j_rom, const std::vector<double>& eta_m) {
  double sum_abs = 0.0;
  for (double e : eta_m) sum_abs += std::abs(e);
  const double err = std::abs(j_fom - j_rom);
  if (sum_abs == 0.0) return err == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  return err / sum_abs;
}

EstimateReport make_report(std::vector<double> eta_m, double j_rom, std::optional<double> j_fom) {
  EstimateReport rep;
  const auto rel = global_relative(eta_m, j_rom);
  rep.eta_m = std::move(eta_m);
  rep.eta = rel.eta;
  rep.eta_rel = rel.eta_rel;
  rep.eta_m_rel = rel.eta_m_rel;
  rep.argmax_element = rel.argmax_element;
  rep.j_rom = j_rom;
  rep.j_fom = j_fom;
  if (j_fom) {
    rep.effectivity = effectivity(*j_fom, j_rom, rep.eta);
    rep.indicator = indicator(*j_fom, j_rom, rep.eta_m);
  }
  return rep;
}

}  // namespace poro
