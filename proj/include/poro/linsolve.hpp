#pragma once

#include <memory>
#include <stdexcept>
#include <string>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

namespace poro {

enum class SolverMethod { Direct, Gmres };
enum class Preconditioner { None, Jacobi };

struct LinearSolverConfig {
  SolverMethod method = SolverMethod::Direct;
  double gmres_tolerance = 5e-8;
  int gmres_restart = 100;
  int max_iterations = 5000;
  Preconditioner preconditioner = Preconditioner::Jacobi;

  void validate() const;
};

/// Raised when a linear solve cannot be carried out.
class SolverFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FactorizationFailure : public SolverFailure {
 public:
  using SolverFailure::SolverFailure;
};

class ConvergenceFailure : public SolverFailure {
 public:
  ConvergenceFailure(const std::string& what, double residual, int iterations)
      : SolverFailure(what), residual_(residual), iterations_(iterations) {}
  double residual() const { return residual_; }
  int iterations() const { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

/// Sparse LU factorization supporting repeated solves with A and A^T.
class DirectFactorization {
 public:
  explicit DirectFactorization(const Eigen::SparseMatrix<double>& matrix);

  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;
  Eigen::VectorXd solve_transposed(const Eigen::VectorXd& rhs) const;
  Eigen::Index size() const { return n_; }

 private:
  using Lu = Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>>;
  Eigen::Index n_ = 0;
  // Column equilibration keeps the LU pivoting meaningful when the
  // mechanics and flow rows differ by many orders of magnitude.
  Eigen::VectorXd row_scale_;
  Eigen::VectorXd col_scale_;
  std::unique_ptr<Lu> lu_;
};

struct GmresResult {
  Eigen::VectorXd x;
  int iterations = 0;
  /// Final relative residual of the preconditioned system.
  double residual = 0.0;
};

/// Restarted GMRES with optional left Jacobi preconditioning. Converged when
/// ||P^{-1}(b - A x)|| <= tol * ||P^{-1} b|| and ||b - A x|| <= tol * ||b||.
/// Throws ConvergenceFailure after
/// `max_iterations` inner iterations.
GmresResult gmres_solve(const Eigen::SparseMatrix<double>& matrix, const Eigen::VectorXd& rhs,
                        const LinearSolverConfig& config, const Eigen::VectorXd* initial_guess = nullptr);

}  // namespace poro
