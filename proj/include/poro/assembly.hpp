#pragma once

#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "poro/taylor_hood.hpp"

namespace poro {

using SparseMatrix = Eigen::SparseMatrix<double>;
using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Material data of the Biot system. Units are SI; alpha and traction are
/// given in Pa*m as in the benchmark definition.
struct MaterialParams {
  double compressibility_modulus = 1.75e7;  // M [Pa]
  double biot_alpha = 1.0;
  double permeability = 1e-13;  // K [m^2]
  double viscosity = 1e-3;      // nu [m^2/s]
  double lame_mu = 1e8;
  double lame_lambda = 2.0e8 / 3.0;
  double traction = 1e7;  // t-bar
  double density = 1.0;   // stored, enters no equation

  /// Storage coefficient c = 1/M.
  double storage() const { return 1.0 / compressibility_modulus; }
  double mobility() const { return permeability / viscosity; }

  /// Throws std::invalid_argument when a positivity requirement fails.
  void validate() const;
};

/// Full-order blocks of the Biot system.
///
///   A_uu  (sigma(u), grad phi_u)
///   K_pp  (K/nu) (grad p, grad phi_p)
///   M_pp  c (p, phi_p)
///   C_up  -alpha (p I, grad phi_u) + alpha <p n, phi_u> on the traction boundary
///   D_pu  alpha (div u, phi_p)
///
/// After apply_dirichlet, constrained rows and columns are zero except for a
/// unit diagonal in A_uu (displacement) and M_pp (pressure); K_pp carries a
/// zero there, so M_pp + k K_pp keeps the unit diagonal for every k.
struct BlockOperators {
  SparseMatrix A_uu;
  SparseMatrix K_pp;
  SparseMatrix M_pp;
  SparseMatrix C_up;
  SparseMatrix D_pu;
  VectorXd f_traction;
  VectorXd g_goal;
  std::vector<Index> dirichlet_u;
  std::vector<Index> dirichlet_p;

  Index n_u() const { return A_uu.rows(); }
  Index n_p() const { return M_pp.rows(); }
};

SparseMatrix assemble_elasticity(const TaylorHoodSpace& space, double mu, double lambda);

/// Returns (M_pp, K_pp) with K_pp already scaled by K/nu.
std::pair<SparseMatrix, SparseMatrix> assemble_pressure_blocks(const TaylorHoodSpace& space,
                                                               double storage, double permeability,
                                                               double viscosity);

struct CouplingBlocks {
  SparseMatrix C_up;
  SparseMatrix D_pu;
};

/// Throws std::invalid_argument if a tag in `neumann_tags` is absent from the mesh.
CouplingBlocks assemble_coupling(const TaylorHoodSpace& space, double alpha,
                                 std::span<const BoundaryTag> neumann_tags);

/// f[i] = int_Gamma (-traction * direction) . phi_i ds over facets with `tag`.
VectorXd assemble_traction(const TaylorHoodSpace& space, BoundaryTag tag, double traction,
                           const Point& direction);

/// g[i] = int_Gamma phi_i^p ds over facets with `tag`.
VectorXd assemble_goal_vector(const TaylorHoodSpace& space, BoundaryTag tag);

struct DirichletDofs {
  std::vector<Index> u;
  std::vector<Index> p;
};

/// Constrained dofs per benchmark. Mandel: u_x on Left, u_y on Bottom, p on
/// Right. Footing: all u components and p on Bottom.
DirichletDofs dirichlet_dofs(const TaylorHoodSpace& space, ProblemKind kind);

/// Symmetric elimination of homogeneous Dirichlet conditions.
BlockOperators apply_dirichlet(BlockOperators ops, const TaylorHoodSpace& space, ProblemKind kind);

/// Traction boundaries that carry the pressure boundary term of C_up.
std::vector<BoundaryTag> neumann_tags(ProblemKind kind);

/// Assembles every block, the load and goal vectors for a benchmark and
/// applies the Dirichlet constraints.
BlockOperators assemble_problem(const TaylorHoodSpace& space, const MaterialParams& material,
                                ProblemKind kind);

}  // namespace poro
