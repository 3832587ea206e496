#include <doctest.h>

#include "test_util.hpp"

using namespace poro;
using Eigen::VectorXd;

namespace {

SparseMatrix to_sparse(const Eigen::MatrixXd& d) { return d.sparseView(); }

}  // namespace

TEST_CASE("solver config validation") {
  LinearSolverConfig c;
  CHECK_NOTHROW(c.validate());
  c.gmres_tolerance = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.gmres_restart = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("direct factorization") {
  SUBCASE("identity") {
    SparseMatrix eye(5, 5);
    eye.setIdentity();
    const DirectFactorization lu(eye);
    const VectorXd b = VectorXd::LinSpaced(5, 1.0, 5.0);
    CHECK((lu.solve(b) - b).norm() == 0.0);
  }
  SUBCASE("diagonal 2x2") {
    const DirectFactorization lu(to_sparse((Eigen::Matrix2d() << 2, 0, 0, 4).finished()));
    const VectorXd x = lu.solve(Eigen::Vector2d(2, 4));
    CHECK(x[0] == doctest::Approx(1.0));
    CHECK(x[1] == doctest::Approx(1.0));
  }
  SUBCASE("random SPD residual") {
    std::mt19937_64 rng(11);
    const Eigen::MatrixXd r = testing::random_matrix(50, 50, rng);
    const Eigen::MatrixXd a = r * r.transpose() + 50.0 * Eigen::MatrixXd::Identity(50, 50);
    const VectorXd b = testing::random_matrix(50, 1, rng);
    const DirectFactorization lu(to_sparse(a));
    CHECK((a * lu.solve(b) - b).norm() / b.norm() < 1e-12);
  }
  SUBCASE("transposed solve") {
    std::mt19937_64 rng(12);
    const Eigen::MatrixXd a = testing::random_matrix(30, 30, rng) + 10.0 * Eigen::MatrixXd::Identity(30, 30);
    const VectorXd b = testing::random_matrix(30, 1, rng);
    const DirectFactorization lu(to_sparse(a));
    CHECK((a.transpose() * lu.solve_transposed(b) - b).norm() / b.norm() < 1e-12);
  }
  SUBCASE("singular matrix") {
    CHECK_THROWS_AS(DirectFactorization(to_sparse((Eigen::Matrix2d() << 1, 2, 2, 4).finished())),
                    FactorizationFailure);
  }
}

TEST_CASE("GMRES") {
  LinearSolverConfig cfg;
  cfg.method = SolverMethod::Gmres;
  SUBCASE("diagonal with Jacobi converges in one iteration") {
    const SparseMatrix d = to_sparse(Eigen::VectorXd::LinSpaced(20, 1.0, 1e6).asDiagonal().toDenseMatrix());
    const auto r = gmres_solve(d, VectorXd::Ones(20), cfg);
    CHECK(r.iterations == 1);
    CHECK((d * r.x - VectorXd::Ones(20)).norm() < 1e-10);
  }
  SUBCASE("zero right-hand side") {
    const SparseMatrix d = to_sparse(Eigen::Matrix2d::Identity() * 3.0);
    const auto r = gmres_solve(d, VectorXd::Zero(2), cfg);
    CHECK(r.iterations == 0);
    CHECK(r.x.norm() == 0.0);
  }
  SUBCASE("non-convergence reports the residual") {
    std::mt19937_64 rng(5);
    const Eigen::MatrixXd a = testing::random_matrix(40, 40, rng) + 0.1 * Eigen::MatrixXd::Identity(40, 40);
    LinearSolverConfig tight = cfg;
    tight.max_iterations = 3;
    tight.gmres_restart = 2;
    try {
      gmres_solve(to_sparse(a), testing::random_matrix(40, 1, rng), tight);
      FAIL("expected ConvergenceFailure");
    } catch (const ConvergenceFailure& e) {
      CHECK(e.residual() > tight.gmres_tolerance);
      CHECK(e.iterations() == 3);
    }
  }
  SUBCASE("Mandel 4x2 step matrix matches the direct solve") {
    const StepSystem sys(testing::mandel_ops(4, 2), 1000.0);
    // Right-hand side of the first and of a later step.
    VectorXd b = VectorXd::Zero(sys.matrix().rows());
    b.head(sys.n_u()) = sys.operators().f_traction;
    SUBCASE("first step") {}
    SUBCASE("later step") {
      const auto s1 = sys.primal_step(StateVector::zero(sys.n_u(), sys.n_p()));
      b.tail(sys.n_p()) = sys.operators().D_pu * s1.u + sys.operators().M_pp * s1.p;
    }
    const VectorXd direct = DirectFactorization(sys.matrix()).solve(b);
    const auto r = gmres_solve(sys.matrix(), b, cfg);
    CHECK((r.x - direct).cwiseAbs().maxCoeff() <= 1e-6 * direct.cwiseAbs().maxCoeff());
    CHECK(r.residual <= cfg.gmres_tolerance);
    // Unpreconditioned residual stays within an order of magnitude of the tolerance.
    CHECK((sys.matrix() * r.x - b).norm() / b.norm() < 10.0 * cfg.gmres_tolerance);
  }
}
