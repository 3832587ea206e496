#include "poro/assembly.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "reference_element.hpp"

namespace poro {

using Triplet = Eigen::Triplet<double>;
using detail::cell_quadrature;
using detail::face_quadrature;
using detail::shape_functions;

void MaterialParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("material: ") + what);
  };
  require(compressibility_modulus > 0.0, "compressibility modulus M must be positive (c = 1/M > 0)");
  require(lame_mu > 0.0, "lame mu must be positive");
  require(lame_lambda > 0.0, "lame lambda must be positive");
  require(permeability > 0.0, "permeability must be positive");
  require(viscosity > 0.0, "viscosity must be positive");
  require(biot_alpha >= 0.0 && biot_alpha <= 1.0, "biot alpha must lie in [0, 1]");
}

namespace {

// All cells of a structured mesh share one size, so element matrices are
// computed once and scattered everywhere.

MatrixXd element_elasticity(int dim, const Point& h, double mu, double lambda) {
  const int nn = dim == 2 ? 9 : 27;
  MatrixXd ke = MatrixXd::Zero(dim * nn, dim * nn);
  for (const auto& q : cell_quadrature(dim, h)) {
    const auto s = shape_functions(dim, 2, q.ref, h);
    for (int a = 0; a < nn; ++a)
      for (int b = 0; b < nn; ++b) {
        const auto& ga = s.grad[a];
        const auto& gb = s.grad[b];
        double dot = 0.0;
        for (int g = 0; g < dim; ++g) dot += ga[g] * gb[g];
        for (int i = 0; i < dim; ++i)
          for (int j = 0; j < dim; ++j) {
            double v = mu * ga[j] * gb[i] + lambda * ga[i] * gb[j];
            if (i == j) v += mu * dot;
            ke(dim * a + i, dim * b + j) += q.weight * v;
          }
      }
  }
  return ke;
}

SparseMatrix scatter(const TaylorHoodSpace& space, Index rows, Index cols, const MatrixXd& ke,
                     bool row_u, bool col_u) {
  std::vector<Triplet> trip;
  trip.reserve(static_cast<std::size_t>(space.mesh().n_cells() * ke.size()));
  for (Index cell = 0; cell < space.mesh().n_cells(); ++cell) {
    const auto r = row_u ? space.cell_u_dofs(cell) : space.cell_p_dofs(cell);
    const auto c = col_u ? space.cell_u_dofs(cell) : space.cell_p_dofs(cell);
    for (Eigen::Index i = 0; i < ke.rows(); ++i)
      for (Eigen::Index j = 0; j < ke.cols(); ++j)
        trip.emplace_back(static_cast<int>(r[i]), static_cast<int>(c[j]), ke(i, j));
  }
  SparseMatrix m(rows, cols);
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

void require_tag(const TaylorHoodSpace& space, BoundaryTag tag, const char* who) {
  if (!space.mesh().has_tag(tag))
    throw std::invalid_argument(std::string(who) + ": boundary tag '" + std::string(to_string(tag)) +
                                "' is not present on the mesh");
}

}  // namespace

SparseMatrix assemble_elasticity(const TaylorHoodSpace& space, double mu, double lambda) {
  const int dim = space.dim();
  const auto ke = element_elasticity(dim, space.mesh().cell_size(), mu, lambda);
  return scatter(space, space.n_u(), space.n_u(), ke, true, true);
}

std::pair<SparseMatrix, SparseMatrix> assemble_pressure_blocks(const TaylorHoodSpace& space,
                                                               double storage, double permeability,
                                                               double viscosity) {
  const int dim = space.dim();
  const int nn = space.p_nodes_per_cell();
  const auto h = space.mesh().cell_size();
  MatrixXd me = MatrixXd::Zero(nn, nn);
  MatrixXd ke = MatrixXd::Zero(nn, nn);
  const double mobility = permeability / viscosity;
  for (const auto& q : cell_quadrature(dim, h)) {
    const auto s = shape_functions(dim, 1, q.ref, h);
    for (int a = 0; a < nn; ++a)
      for (int b = 0; b < nn; ++b) {
        double dot = 0.0;
        for (int g = 0; g < dim; ++g) dot += s.grad[a][g] * s.grad[b][g];
        me(a, b) += q.weight * storage * s.value[a] * s.value[b];
        ke(a, b) += q.weight * mobility * dot;
      }
  }
  return {scatter(space, space.n_p(), space.n_p(), me, false, false),
          scatter(space, space.n_p(), space.n_p(), ke, false, false)};
}

CouplingBlocks assemble_coupling(const TaylorHoodSpace& space, double alpha,
                                 std::span<const BoundaryTag> neumann_tags) {
  for (auto tag : neumann_tags) require_tag(space, tag, "assemble_coupling");

  const int dim = space.dim();
  const int nu = space.u_nodes_per_cell();
  const int np = space.p_nodes_per_cell();
  const auto h = space.mesh().cell_size();

  // de(a, dim*b + j) = alpha * int N^p_a d_j N^u_b
  MatrixXd de = MatrixXd::Zero(np, dim * nu);
  for (const auto& q : cell_quadrature(dim, h)) {
    const auto su = shape_functions(dim, 2, q.ref, h);
    const auto sp = shape_functions(dim, 1, q.ref, h);
    for (int a = 0; a < np; ++a)
      for (int b = 0; b < nu; ++b)
        for (int j = 0; j < dim; ++j) de(a, dim * b + j) += q.weight * alpha * sp.value[a] * su.grad[b][j];
  }

  CouplingBlocks out;
  out.D_pu = scatter(space, space.n_p(), space.n_u(), de, false, true);

  std::vector<Triplet> trip;
  const MatrixXd ce = -de.transpose();
  for (Index cell = 0; cell < space.mesh().n_cells(); ++cell) {
    const auto r = space.cell_u_dofs(cell);
    const auto c = space.cell_p_dofs(cell);
    for (Eigen::Index i = 0; i < ce.rows(); ++i)
      for (Eigen::Index j = 0; j < ce.cols(); ++j)
        trip.emplace_back(static_cast<int>(r[i]), static_cast<int>(c[j]), ce(i, j));
  }

  // alpha <p n, phi_u> on the traction boundaries
  std::array<MatrixXd, 6> face_mats;
  for (int face = 0; face < 2 * dim; ++face) {
    MatrixXd fe = MatrixXd::Zero(dim * nu, np);
    const double sign = face % 2 == 0 ? -1.0 : 1.0;
    const int axis = face / 2;
    for (const auto& q : face_quadrature(dim, h, face)) {
      const auto su = shape_functions(dim, 2, q.ref, h);
      const auto sp = shape_functions(dim, 1, q.ref, h);
      for (int a = 0; a < nu; ++a)
        for (int b = 0; b < np; ++b)
          fe(dim * a + axis, b) += q.weight * alpha * sign * su.value[a] * sp.value[b];
    }
    face_mats[face] = std::move(fe);
  }
  for (const auto& f : space.mesh().boundary_facets()) {
    if (!f.tag || std::find(neumann_tags.begin(), neumann_tags.end(), *f.tag) == neumann_tags.end())
      continue;
    const auto& fe = face_mats[f.local_face];
    const auto r = space.cell_u_dofs(f.cell);
    const auto c = space.cell_p_dofs(f.cell);
    for (Eigen::Index i = 0; i < fe.rows(); ++i)
      for (Eigen::Index j = 0; j < fe.cols(); ++j)
        if (fe(i, j) != 0.0) trip.emplace_back(static_cast<int>(r[i]), static_cast<int>(c[j]), fe(i, j));
  }
  out.C_up.resize(space.n_u(), space.n_p());
  out.C_up.setFromTriplets(trip.begin(), trip.end());
  return out;
}

VectorXd assemble_traction(const TaylorHoodSpace& space, BoundaryTag tag, double traction,
                           const Point& direction) {
  require_tag(space, tag, "assemble_traction");
  const int dim = space.dim();
  const auto h = space.mesh().cell_size();
  VectorXd f = VectorXd::Zero(space.n_u());
  if (traction == 0.0) return f;
  for (const auto& facet : space.mesh().boundary_facets()) {
    if (facet.tag != tag) continue;
    const auto dofs = space.cell_u_dofs(facet.cell);
    for (const auto& q : face_quadrature(dim, h, facet.local_face)) {
      const auto s = shape_functions(dim, 2, q.ref, h);
      for (int a = 0; a < space.u_nodes_per_cell(); ++a)
        for (int i = 0; i < dim; ++i) f[dofs[dim * a + i]] -= q.weight * traction * direction[i] * s.value[a];
    }
  }
  return f;
}

VectorXd assemble_goal_vector(const TaylorHoodSpace& space, BoundaryTag tag) {
  require_tag(space, tag, "assemble_goal_vector");
  const int dim = space.dim();
  const auto h = space.mesh().cell_size();
  VectorXd g = VectorXd::Zero(space.n_p());
  for (const auto& facet : space.mesh().boundary_facets()) {
    if (facet.tag != tag) continue;
    const auto dofs = space.cell_p_dofs(facet.cell);
    for (const auto& q : face_quadrature(dim, h, facet.local_face)) {
      const auto s = shape_functions(dim, 1, q.ref, h);
      for (int a = 0; a < space.p_nodes_per_cell(); ++a) g[dofs[a]] += q.weight * s.value[a];
    }
  }
  return g;
}

DirichletDofs dirichlet_dofs(const TaylorHoodSpace& space, ProblemKind kind) {
  const int dim = space.dim();
  DirichletDofs out;
  if (kind == ProblemKind::Mandel) {
    for (Index node : space.u_nodes_on(BoundaryTag::Left)) out.u.push_back(dim * node + 0);
    for (Index node : space.u_nodes_on(BoundaryTag::Bottom)) out.u.push_back(dim * node + 1);
    out.p = space.p_nodes_on(BoundaryTag::Right);
  } else {
    for (Index node : space.u_nodes_on(BoundaryTag::Bottom))
      for (int c = 0; c < dim; ++c) out.u.push_back(dim * node + c);
    out.p = space.p_nodes_on(BoundaryTag::Bottom);
  }
  std::sort(out.u.begin(), out.u.end());
  out.u.erase(std::unique(out.u.begin(), out.u.end()), out.u.end());
  return out;
}

namespace {

std::vector<char> mask_of(const std::vector<Index>& dofs, Index n) {
  std::vector<char> m(static_cast<std::size_t>(n), 0);
  for (Index d : dofs) m[static_cast<std::size_t>(d)] = 1;
  return m;
}

// Zeroes constrained rows/columns; puts `diag` on constrained diagonal entries
// of square matrices.
SparseMatrix eliminate(const SparseMatrix& a, const std::vector<char>& row_mask,
                       const std::vector<char>& col_mask, double diag) {
  std::vector<Triplet> trip;
  trip.reserve(static_cast<std::size_t>(a.nonZeros()));
  for (int j = 0; j < a.outerSize(); ++j)
    for (SparseMatrix::InnerIterator it(a, j); it; ++it) {
      if (row_mask[it.row()] || col_mask[it.col()]) continue;
      trip.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
    }
  if (a.rows() == a.cols() && diag != 0.0)
    for (Index i = 0; i < a.rows(); ++i)
      if (row_mask[i]) trip.emplace_back(static_cast<int>(i), static_cast<int>(i), diag);
  SparseMatrix out(a.rows(), a.cols());
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

}  // namespace

BlockOperators apply_dirichlet(BlockOperators ops, const TaylorHoodSpace& space, ProblemKind kind) {
  const auto dofs = dirichlet_dofs(space, kind);
  const auto mu = mask_of(dofs.u, space.n_u());
  const auto mp = mask_of(dofs.p, space.n_p());
  ops.A_uu = eliminate(ops.A_uu, mu, mu, 1.0);
  ops.M_pp = eliminate(ops.M_pp, mp, mp, 1.0);
  ops.K_pp = eliminate(ops.K_pp, mp, mp, 0.0);
  ops.C_up = eliminate(ops.C_up, mu, mp, 0.0);
  ops.D_pu = eliminate(ops.D_pu, mp, mu, 0.0);
  if (ops.f_traction.size() == space.n_u())
    for (Index d : dofs.u) ops.f_traction[d] = 0.0;
  if (ops.g_goal.size() == space.n_p())
    for (Index d : dofs.p) ops.g_goal[d] = 0.0;
  ops.dirichlet_u = dofs.u;
  ops.dirichlet_p = dofs.p;
  return ops;
}

std::vector<BoundaryTag> neumann_tags(ProblemKind kind) {
  if (kind == ProblemKind::Mandel) return {BoundaryTag::Top, BoundaryTag::Right};
  return {BoundaryTag::Top, BoundaryTag::Compression, BoundaryTag::Wall};
}

BlockOperators assemble_problem(const TaylorHoodSpace& space, const MaterialParams& material,
                                ProblemKind kind) {
  material.validate();
  BlockOperators ops;
  ops.A_uu = assemble_elasticity(space, material.lame_mu, material.lame_lambda);
  auto [mass, stiff] = assemble_pressure_blocks(space, material.storage(), material.permeability,
                                                material.viscosity);
  ops.M_pp = std::move(mass);
  ops.K_pp = std::move(stiff);

  // The top face may have no plain Top facets on small footing meshes.
  std::vector<BoundaryTag> tags;
  for (auto tag : neumann_tags(kind))
    if (space.mesh().has_tag(tag)) tags.push_back(tag);
  auto coupling = assemble_coupling(space, material.biot_alpha, tags);
  ops.C_up = std::move(coupling.C_up);
  ops.D_pu = std::move(coupling.D_pu);

  const BoundaryTag loaded = kind == ProblemKind::Mandel ? BoundaryTag::Top : BoundaryTag::Compression;
  const BoundaryTag goal = kind == ProblemKind::Mandel ? BoundaryTag::Bottom : BoundaryTag::Compression;
  Point direction{};
  direction[space.dim() - 1] = 1.0;
  if (space.mesh().has_tag(loaded)) {
    ops.f_traction = assemble_traction(space, loaded, material.traction, direction);
    ops.g_goal = assemble_goal_vector(space, goal);
  } else {
    ops.f_traction = VectorXd::Zero(space.n_u());
    ops.g_goal = VectorXd::Zero(space.n_p());
  }
  return apply_dirichlet(std::move(ops), space, kind);
}

}  // namespace poro
