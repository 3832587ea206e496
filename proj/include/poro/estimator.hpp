#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "poro/fom.hpp"
#include "poro/rom.hpp"

namespace poro {

/// Raised when reduced trajectories were computed on bases other than the
/// ones the reduced operators were projected with.
class StaleOperators : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised when J_rom + eta vanishes and relative quantities are undefined.
class DegenerateNormalization : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct EstimateReport {
  std::vector<double> eta_m;      // entry m-1 belongs to element I_m
  double eta = 0.0;
  double eta_rel = 0.0;
  std::vector<double> eta_m_rel;
  int argmax_element = 1;         // 1-based element index of max |eta_m_rel|
  double j_rom = 0.0;
  std::optional<double> j_fom;
  std::optional<double> effectivity;
  std::optional<double> indicator;
};

/// eta_m = z_{m-1}^T (F - S U_m + T U_{m-1}) for m = 1..M, evaluated with the
/// dual-test x primal-trial cross blocks.
std::vector<double> estimate_elementwise(const ReducedOperators& red, const ReducedTrajectory& primal,
                                         const ReducedTrajectory& dual);

/// Same residual evaluated in the FOM space. `dual[m]` lives on I_{m+1}.
std::vector<double> estimate_elementwise_fom(const StepSystem& system, const std::vector<StateVector>& primal,
                                             const std::vector<StateVector>& dual);

struct RelativeEstimate {
  double eta = 0.0;
  double eta_rel = 0.0;
  std::vector<double> eta_m_rel;
  int argmax_element = 1;
};

/// Normalizes by J_rom + sum(eta_m); ties in the argmax go to the smallest
/// element index.
RelativeEstimate global_relative(const std::vector<double>& eta_m, double j_rom);

/// |(J_fom - J_rom) / eta|; +inf when eta = 0 but the true error is not.
double effectivity(double j_fom, double j_rom, double eta);
/// |J_fom - J_rom| / sum |eta_m|; +inf when the sum vanishes but the true
/// error is not.
double indicator(double j_fom, double j_rom, const std::vector<double>& eta_m);

EstimateReport make_report(std::vector<double> eta_m, double j_rom, std::optional<double> j_fom = std::nullopt);

}  // namespace poro
