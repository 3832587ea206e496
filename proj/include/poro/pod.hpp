#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>

#include <Eigen/Dense>

namespace poro {

/// Truncated left singular system of every snapshot fed so far.
struct PodBasis {
  Eigen::MatrixXd modes;            // n x N, orthonormal columns
  Eigen::VectorXd singular_values;  // N, nonincreasing, positive
  double energy_threshold = 1.0;
  /// Sum of squared norms of every snapshot ever fed, including energy later
  /// discarded by truncation.
  double total_energy = 0.0;
  int snapshot_count = 0;
  int updates_since_qr = 0;
  /// Bumped on every update that touches the modes.
  std::uint64_t version = 0;

  static PodBasis empty(Eigen::Index rows, double energy_threshold);

  Eigen::Index rows() const { return modes.rows(); }
  Eigen::Index rank() const { return modes.cols(); }
  bool is_empty() const { return modes.cols() == 0; }
};

class UndefinedEnergy : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// (sum_{i<=n} sigma_i^2) / total_energy. Throws UndefinedEnergy when
/// total_energy is zero.
double energy_fraction(std::span<const double> singular_values, double total_energy, int n);

/// Smallest N >= 1 with energy_fraction(N) >= threshold, or the full length
/// when no N reaches it.
int truncation_rank(std::span<const double> singular_values, double total_energy, double threshold);

/// Rank-b additive update of the truncated SVD with the columns of `bunch`
/// (Brand's incremental SVD followed by energy truncation). Zero columns are
/// skipped. The rank never drops below the previous one unless the enlarged
/// frame is numerically rank deficient.
void ipod_update(PodBasis& basis, const Eigen::Ref<const Eigen::MatrixXd>& bunch);

/// Number of updates after which the enlarged frame is re-orthogonalized even
/// when the orthogonality check passes.
inline constexpr int kReorthogonalizeEvery = 50;
inline constexpr double kOrthogonalityTolerance = 1e-10;

}  // namespace poro
