#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include <Eigen/SVD>

#include "test_util.hpp"

using namespace poro;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

double orthonormality_error(const PodBasis& b) {
  if (b.rank() == 0) return 0.0;
  return (b.modes.transpose() * b.modes - MatrixXd::Identity(b.rank(), b.rank())).cwiseAbs().maxCoeff();
}

// Sine of the largest principal angle between two orthonormal column spaces.
double largest_angle_sine(const MatrixXd& q1, const MatrixXd& q2) {
  const MatrixXd residual = q2 - q1 * (q1.transpose() * q2);
  return Eigen::JacobiSVD<MatrixXd>(residual).singularValues()[0];
}

}  // namespace

TEST_CASE("energy fraction") {
  const std::array<double, 2> s21{2.0, 1.0};
  CHECK(energy_fraction(s21, 5.0, 1) == doctest::Approx(0.8));
  CHECK(energy_fraction(s21, 5.0, 2) == doctest::Approx(1.0));
  const std::array<double, 3> s321{3.0, 2.0, 1.0};
  CHECK(energy_fraction(s321, 14.0, 2) == doctest::Approx(13.0 / 14.0));
  CHECK(energy_fraction(s321, 14.0, 0) == 0.0);
  CHECK_THROWS_AS(energy_fraction(s21, 0.0, 1), UndefinedEnergy);
  CHECK_THROWS_AS(energy_fraction(s21, 5.0, 3), std::out_of_range);
}

TEST_CASE("truncation rank") {
  const std::array<double, 3> s{3.0, 2.0, 1.0};
  CHECK(truncation_rank(s, 14.0, 0.9) == 2);
  CHECK(truncation_rank(s, 14.0, 0.0) == 1);
  CHECK(truncation_rank(s, 14.0, 1.0) == 3);
  // Energy discarded earlier keeps the fraction below 1: full length is returned.
  CHECK(truncation_rank(s, 20.0, 0.99) == 3);
  CHECK(truncation_rank(std::span<const double>(), 1.0, 0.5) == 0);
}

TEST_CASE("empty basis") {
  const auto b = PodBasis::empty(7, 0.999);
  CHECK(b.rows() == 7);
  CHECK(b.is_empty());
  CHECK(b.total_energy == 0.0);
  CHECK_THROWS_AS(PodBasis::empty(3, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(PodBasis::empty(3, -0.1), std::invalid_argument);
}

TEST_CASE("rank-one update of an empty basis") {
  auto b = PodBasis::empty(4, 1.0);
  const VectorXd v = (VectorXd(4) << 1, -2, 2, 4).finished();
  ipod_update(b, v);
  REQUIRE(b.rank() == 1);
  CHECK(b.singular_values[0] == doctest::Approx(5.0));
  CHECK(std::abs(std::abs(b.modes.col(0).dot(v / 5.0)) - 1.0) < 1e-14);
  CHECK(b.total_energy == doctest::Approx(25.0));
  CHECK(b.snapshot_count == 1);
  CHECK(b.version == 1);
}

TEST_CASE("snapshot inside the span keeps the rank") {
  std::mt19937_64 rng(1);
  const MatrixXd y = testing::random_matrix(20, 3, rng);
  auto b = PodBasis::empty(20, 1.0);
  ipod_update(b, y);
  REQUIRE(b.rank() == 3);
  ipod_update(b, y * VectorXd::Constant(3, 0.5));
  CHECK(b.rank() == 3);
  CHECK(orthonormality_error(b) <= 1e-10);
}

TEST_CASE("zero columns are skipped") {
  auto b = PodBasis::empty(5, 1.0);
  ipod_update(b, MatrixXd::Zero(5, 2));
  CHECK(b.is_empty());
  CHECK(b.version == 0);
  MatrixXd m = MatrixXd::Zero(5, 2);
  m(1, 1) = 3.0;
  ipod_update(b, m);
  CHECK(b.rank() == 1);
  CHECK(b.snapshot_count == 1);
  CHECK_THROWS_AS(ipod_update(b, MatrixXd::Ones(4, 1)), std::invalid_argument);
}

TEST_CASE("column-by-column updates reproduce a batch SVD") {
  std::mt19937_64 rng(2024);
  const MatrixXd y = testing::random_matrix(100, 30, rng);
  const Eigen::BDCSVD<MatrixXd> batch(y, Eigen::ComputeThinU);

  auto b = PodBasis::empty(100, 1.0);
  double energy = 0.0;
  for (Eigen::Index j = 0; j < y.cols(); ++j) {
    const double before = b.total_energy;
    ipod_update(b, y.col(j));
    energy += y.col(j).squaredNorm();
    CHECK(orthonormality_error(b) <= 1e-10);
    CHECK(b.total_energy >= before);
    CHECK(b.singular_values.squaredNorm() <= b.total_energy * (1.0 + 1e-12));
    for (Eigen::Index i = 1; i < b.rank(); ++i) CHECK(b.singular_values[i] <= b.singular_values[i - 1]);
    CHECK(b.singular_values.minCoeff() > 0.0);
  }
  CHECK(b.total_energy == doctest::Approx(energy).epsilon(1e-13));
  REQUIRE(b.rank() == 30);
  const VectorXd rel = (b.singular_values - batch.singularValues()).cwiseQuotient(batch.singularValues());
  CHECK(rel.cwiseAbs().maxCoeff() <= 1e-8);
  CHECK(std::asin(std::min(1.0, largest_angle_sine(batch.matrixU(), b.modes))) < 1e-6);
}

TEST_CASE("column order does not change the singular values") {
  std::mt19937_64 rng(7);
  const MatrixXd y = testing::random_matrix(40, 12, rng);
  std::vector<Eigen::Index> order(12);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  auto forward = PodBasis::empty(40, 1.0), shuffled = PodBasis::empty(40, 1.0);
  for (Eigen::Index j = 0; j < 12; ++j) {
    ipod_update(forward, y.col(j));
    ipod_update(shuffled, y.col(order[j]));
  }
  const VectorXd rel = (forward.singular_values - shuffled.singular_values).cwiseQuotient(forward.singular_values);
  CHECK(rel.cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("energy truncation keeps a subset of the energy") {
  std::mt19937_64 rng(9);
  // Rapidly decaying spectrum.
  MatrixXd y = testing::random_matrix(60, 20, rng);
  for (Eigen::Index j = 0; j < 20; ++j) y.col(j) *= std::pow(0.3, static_cast<double>(j));
  auto b = PodBasis::empty(60, 0.999);
  for (Eigen::Index j = 0; j < 20; ++j) {
    ipod_update(b, y.col(j));
    CHECK(orthonormality_error(b) <= 1e-10);
    CHECK(energy_fraction(std::span<const double>(b.singular_values.data(), b.rank()), b.total_energy,
                          static_cast<int>(b.rank())) <= 1.0 + 1e-12);
  }
  CHECK(b.rank() < 20);
  CHECK(b.total_energy == doctest::Approx(y.squaredNorm()).epsilon(1e-12));
}

TEST_CASE("bunch updates match single-column updates") {
  std::mt19937_64 rng(4);
  const MatrixXd y = testing::random_matrix(50, 8, rng);
  auto bunch = PodBasis::empty(50, 1.0), single = PodBasis::empty(50, 1.0);
  ipod_update(bunch, y.leftCols(3));
  ipod_update(bunch, y.rightCols(5));
  for (Eigen::Index j = 0; j < 8; ++j) ipod_update(single, y.col(j));
  CHECK((bunch.singular_values - single.singular_values).cwiseAbs().maxCoeff() <=
        1e-10 * single.singular_values[0]);
  CHECK(largest_angle_sine(single.modes, bunch.modes) < 1e-8);
}

TEST_CASE("many updates trigger periodic reorthogonalization") {
  std::mt19937_64 rng(13);
  const MatrixXd y = testing::random_matrix(30, 3, rng);
  auto b = PodBasis::empty(30, 1.0);
  std::normal_distribution<double> n(0.0, 1e-3);
  for (int i = 0; i < 3 * kReorthogonalizeEvery; ++i) {
    VectorXd v = y.col(i % 3) * (1.0 + 0.01 * i);
    for (Eigen::Index r = 0; r < v.size(); ++r) v[r] += n(rng) * 1e-6;
    ipod_update(b, v);
    CHECK(b.updates_since_qr <= kReorthogonalizeEvery);
    CHECK(orthonormality_error(b) <= 1e-10);
  }
}

TEST_CASE("rank never drops when a dominant snapshot arrives") {
  auto b = PodBasis::empty(10, 0.99);
  MatrixXd y = MatrixXd::Zero(10, 3);
  y(0, 0) = 1.0;
  y(1, 1) = 1.0;
  ipod_update(b, y.leftCols(2));
  REQUIRE(b.rank() == 2);
  VectorXd big = VectorXd::Zero(10);
  big[2] = 1e3;
  ipod_update(b, big);
  CHECK(b.rank() >= 2);
  CHECK(orthonormality_error(b) <= 1e-10);
}
