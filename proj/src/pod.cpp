#include "poro/pod.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace poro {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

PodBasis PodBasis::empty(Index rows, double energy_threshold) {
  if (!(energy_threshold >= 0.0 && energy_threshold <= 1.0))
    throw std::invalid_argument("pod: energy threshold must lie in [0, 1]");
  PodBasis b;
  b.modes.resize(rows, 0);
  b.singular_values.resize(0);
  b.energy_threshold = energy_threshold;
  return b;
}

double energy_fraction(std::span<const double> singular_values, double total_energy, int n) {
  if (!(total_energy > 0.0)) throw UndefinedEnergy("energy_fraction: total energy is zero");
  if (n < 0 || static_cast<std::size_t>(n) > singular_values.size())
    throw std::out_of_range("energy_fraction: rank exceeds number of singular values");
  double kept = 0.0;
  for (int i = 0; i < n; ++i) kept += singular_values[i] * singular_values[i];
  return kept / total_energy;
}

int truncation_rank(std::span<const double> singular_values, double total_energy, double threshold) {
  const int d = static_cast<int>(singular_values.size());
  if (d == 0) return 0;
  double kept = 0.0;
  for (int n = 1; n <= d; ++n) {
    kept += singular_values[n - 1] * singular_values[n - 1];
    if (kept / total_energy >= threshold) return n;
  }
  return d;
}

namespace {

MatrixXd thin_q(const Eigen::HouseholderQR<MatrixXd>& qr, Index cols) {
  return qr.householderQ() * MatrixXd::Identity(qr.rows(), cols);
}

}  // namespace

void ipod_update(PodBasis& basis, const Eigen::Ref<const MatrixXd>& bunch) {
  if (bunch.rows() != basis.rows())
    throw std::invalid_argument("ipod_update: bunch has " + std::to_string(bunch.rows()) +
                                " rows, basis has " + std::to_string(basis.rows()));

  std::vector<Index> keep;
  for (Index j = 0; j < bunch.cols(); ++j) {
    if (bunch.col(j).squaredNorm() > 0.0)
      keep.push_back(j);
    else
      std::clog << "warning: ipod_update skipped a zero snapshot column\n";
  }
  if (keep.empty()) return;

  const Index n = basis.rows();
  const Index b = static_cast<Index>(keep.size());
  MatrixXd block(n, b);
  for (Index j = 0; j < b; ++j) block.col(j) = bunch.col(keep[j]);

  basis.total_energy += block.squaredNorm();
  basis.snapshot_count += static_cast<int>(b);

  const Index big_n = basis.rank();
  MatrixXd h = basis.modes.transpose() * block;
  MatrixXd p = block - basis.modes * h;

  Eigen::HouseholderQR<MatrixXd> qr_p(p);
  const Index nb = std::min(n, b);
  MatrixXd q_p = thin_q(qr_p, nb);
  MatrixXd r_p = qr_p.matrixQR().topRows(nb).triangularView<Eigen::Upper>();

  MatrixXd q(n, big_n + nb);
  q << basis.modes, q_p;
  MatrixXd f = MatrixXd::Zero(big_n + nb, big_n + b);
  f.topLeftCorner(big_n, big_n) = basis.singular_values.asDiagonal();
  f.topRightCorner(big_n, b) = h;
  f.bottomRightCorner(nb, b) = r_p;

  ++basis.updates_since_qr;
  const double drift = big_n > 0 ? (basis.modes.transpose() * q_p).cwiseAbs().maxCoeff() : 0.0;
  if (drift > kOrthogonalityTolerance || basis.updates_since_qr > kReorthogonalizeEvery) {
    Eigen::HouseholderQR<MatrixXd> qr_q(q);
    const Index cols = q.cols();
    MatrixXd r = qr_q.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
    q = thin_q(qr_q, cols);
    f = r * f;
    basis.updates_since_qr = 0;
  }

  Eigen::JacobiSVD<MatrixXd> svd(f, Eigen::ComputeThinU);
  const VectorXd& sigma = svd.singularValues();

  // Numerically zero directions never enter the basis.
  const double floor = sigma.size() > 0 ? sigma[0] * static_cast<double>(f.rows()) *
                                              std::numeric_limits<double>::epsilon()
                                        : 0.0;
  Index numerical_rank = 0;
  while (numerical_rank < sigma.size() && sigma[numerical_rank] > floor) ++numerical_rank;

  // Bases only grow: truncation never drops below the previous rank.
  const int rank = std::min<int>(
      std::max<int>(
          truncation_rank(std::span<const double>(sigma.data(), static_cast<std::size_t>(numerical_rank)),
                          basis.total_energy, basis.energy_threshold),
          static_cast<int>(big_n)),
      static_cast<int>(numerical_rank));

  basis.modes = q * svd.matrixU().leftCols(rank);
  basis.singular_values = sigma.head(rank);
  ++basis.version;
}

}  // namespace poro
