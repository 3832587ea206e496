#include "poro/linsolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace poro {

using Eigen::MatrixXd;
using Eigen::SparseMatrix;
using Eigen::VectorXd;

void LinearSolverConfig::validate() const {
  if (!(gmres_tolerance > 0.0)) throw std::invalid_argument("solver: gmres tolerance must be positive");
  if (gmres_restart < 1) throw std::invalid_argument("solver: gmres restart must be >= 1");
  if (max_iterations < 1) throw std::invalid_argument("solver: max iterations must be >= 1");
}

namespace {

double power_of_two_inverse(double magnitude) {
  if (magnitude == 0.0) return 1.0;
  return std::ldexp(1.0, -std::ilogb(magnitude));
}

}  // namespace

DirectFactorization::DirectFactorization(const SparseMatrix<double>& matrix) : n_(matrix.rows()) {
  if (matrix.rows() != matrix.cols()) throw FactorizationFailure("factorize: matrix is not square");

  VectorXd row_max = VectorXd::Zero(n_);
  for (int j = 0; j < matrix.outerSize(); ++j)
    for (SparseMatrix<double>::InnerIterator it(matrix, j); it; ++it)
      row_max[it.row()] = std::max(row_max[it.row()], std::abs(it.value()));
  row_scale_.resize(n_);
  for (Eigen::Index i = 0; i < n_; ++i) row_scale_[i] = power_of_two_inverse(row_max[i]);

  VectorXd col_max = VectorXd::Zero(n_);
  for (int j = 0; j < matrix.outerSize(); ++j)
    for (SparseMatrix<double>::InnerIterator it(matrix, j); it; ++it)
      col_max[j] = std::max(col_max[j], std::abs(row_scale_[it.row()] * it.value()));
  col_scale_.resize(n_);
  for (Eigen::Index j = 0; j < n_; ++j) col_scale_[j] = power_of_two_inverse(col_max[j]);

  SparseMatrix<double> scaled = row_scale_.asDiagonal() * matrix * col_scale_.asDiagonal();
  scaled.makeCompressed();
  lu_ = std::make_unique<Lu>();
  lu_->analyzePattern(scaled);
  lu_->factorize(scaled);
  if (lu_->info() != Eigen::Success)
    throw FactorizationFailure("factorize: sparse LU failed (" + lu_->lastErrorMessage() + ")");
}

VectorXd DirectFactorization::solve(const VectorXd& rhs) const {
  const VectorXd scaled_rhs = row_scale_.cwiseProduct(rhs);
  const VectorXd y = lu_->solve(scaled_rhs);
  return col_scale_.cwiseProduct(y);
}

VectorXd DirectFactorization::solve_transposed(const VectorXd& rhs) const {
  const VectorXd scaled_rhs = col_scale_.cwiseProduct(rhs);
  const VectorXd w = lu_->transpose().solve(scaled_rhs);
  return row_scale_.cwiseProduct(w);
}

GmresResult gmres_solve(const SparseMatrix<double>& matrix, const VectorXd& rhs,
                        const LinearSolverConfig& config, const VectorXd* initial_guess) {
  config.validate();
  const Eigen::Index n = matrix.rows();
  if (matrix.cols() != n || rhs.size() != n) throw SolverFailure("gmres: dimension mismatch");

  VectorXd inv_diag = VectorXd::Ones(n);
  if (config.preconditioner == Preconditioner::Jacobi) {
    const VectorXd diag = matrix.diagonal();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (diag[i] == 0.0) throw SolverFailure("gmres: Jacobi preconditioner needs a nonzero diagonal");
      inv_diag[i] = 1.0 / diag[i];
    }
  }

  GmresResult result;
  result.x = initial_guess ? *initial_guess : VectorXd::Zero(n);
  const double b_norm = inv_diag.cwiseProduct(rhs).norm();
  if (b_norm == 0.0) {
    result.x.setZero();
    return result;
  }

  const int m = config.gmres_restart;
  MatrixXd basis(n, m + 1);
  MatrixXd hess = MatrixXd::Zero(m + 1, m);
  VectorXd cs(m), sn(m), g(m + 1);

  const double raw_b_norm = rhs.norm();
  VectorXd raw = rhs - matrix * result.x;
  VectorXd r = inv_diag.cwiseProduct(raw);
  double beta = r.norm();
  result.residual = beta / b_norm;
  double raw_residual = raw.norm() / raw_b_norm;
  // Inner cycles stop at `target`; it is tightened whenever the preconditioned
  // test passes but the unpreconditioned residual is still above tolerance.
  double target = config.gmres_tolerance;
  int total = 0;
  while (result.residual > config.gmres_tolerance || raw_residual > config.gmres_tolerance) {
    if (result.residual <= target)
      target = std::max(result.residual * config.gmres_tolerance / raw_residual * 0.5,
                        std::numeric_limits<double>::epsilon());
    if (total >= config.max_iterations)
      throw ConvergenceFailure("gmres: no convergence within " + std::to_string(config.max_iterations) +
                                   " iterations (relative residual " + std::to_string(result.residual) + ")",
                               result.residual, total);
    basis.col(0) = r / beta;
    g.setZero();
    g[0] = beta;
    hess.setZero();
    int j = 0;
    for (; j < m && total < config.max_iterations; ++j) {
      ++total;
      VectorXd w = inv_diag.cwiseProduct(matrix * basis.col(j));
      // modified Gram-Schmidt
      for (int i = 0; i <= j; ++i) {
        hess(i, j) = basis.col(i).dot(w);
        w -= hess(i, j) * basis.col(i);
      }
      hess(j + 1, j) = w.norm();
      if (hess(j + 1, j) > 0.0) basis.col(j + 1) = w / hess(j + 1, j);
      for (int i = 0; i < j; ++i) {
        const double t = cs[i] * hess(i, j) + sn[i] * hess(i + 1, j);
        hess(i + 1, j) = -sn[i] * hess(i, j) + cs[i] * hess(i + 1, j);
        hess(i, j) = t;
      }
      const double denom = std::hypot(hess(j, j), hess(j + 1, j));
      cs[j] = denom == 0.0 ? 1.0 : hess(j, j) / denom;
      sn[j] = denom == 0.0 ? 0.0 : hess(j + 1, j) / denom;
      hess(j, j) = denom;
      hess(j + 1, j) = 0.0;
      g[j + 1] = -sn[j] * g[j];
      g[j] = cs[j] * g[j];
      result.residual = std::abs(g[j + 1]) / b_norm;
      if (result.residual <= target) {
        ++j;
        break;
      }
    }
    const VectorXd y = hess.topLeftCorner(j, j).triangularView<Eigen::Upper>().solve(g.head(j));
    result.x += basis.leftCols(j) * y;
    raw = rhs - matrix * result.x;
    r = inv_diag.cwiseProduct(raw);
    beta = r.norm();
    result.residual = beta / b_norm;
    raw_residual = raw.norm() / raw_b_norm;
  }
  result.iterations = total;
  return result;
}

}  // namespace poro
