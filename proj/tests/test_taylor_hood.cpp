#include <doctest.h>

#include <map>
#include <set>

#include "test_util.hpp"

using namespace poro;

TEST_CASE("benchmark dof counts") {
  const auto mandel = testing::mandel_space(80, 16);
  CHECK(mandel.n_u() == 10626);
  CHECK(mandel.n_p() == 1377);
  const auto footing = testing::footing_space(16);
  CHECK(footing.n_u() == 107811);
  CHECK(footing.n_p() == 4913);
}

TEST_CASE("single element counts") {
  const TaylorHoodSpace s(StructuredMesh::build({0, 0}, {1, 1}, {1, 1}));
  CHECK(s.n_u() == 18);
  CHECK(s.n_p() == 4);
}

TEST_CASE("dof count formulas over small grids") {
  for (int nx = 1; nx <= 8; ++nx)
    for (int ny = 1; ny <= 8; ++ny) {
      const TaylorHoodSpace s(StructuredMesh::build({0, 0}, {1, 1}, {nx, ny}));
      CHECK(s.n_u() == 2 * (2 * nx + 1) * (2 * ny + 1));
      CHECK(s.n_p() == (nx + 1) * (ny + 1));
    }
  for (int n = 1; n <= 4; ++n) {
    const TaylorHoodSpace s(StructuredMesh::build({0, 0, 0}, {1, 1, 1}, {n, n + 1, 2}));
    CHECK(s.n_u() == 3 * (2 * n + 1) * (2 * n + 3) * 5);
    CHECK(s.n_p() == (n + 1) * (n + 2) * 3);
  }
}

TEST_CASE("cell dof multiplicities match incident cells") {
  const TaylorHoodSpace s(StructuredMesh::build({0, 0}, {3, 2}, {3, 2}));
  std::map<Index, int> count;
  for (Index c = 0; c < s.mesh().n_cells(); ++c)
    for (Index d : s.cell_p_dofs(c)) ++count[d];
  REQUIRE(count.size() == static_cast<std::size_t>(s.n_p()));
  // Pressure node (i, j) on a 4x3 lattice touches cells whose index ranges contain it.
  for (Index node = 0; node < s.n_p(); ++node) {
    const int i = static_cast<int>(node % 4), j = static_cast<int>(node / 4);
    const int cx = (i > 0) + (i < 3), cy = (j > 0) + (j < 2);
    CHECK(count[node] == cx * cy);
  }
  std::map<Index, int> ucount;
  for (Index c = 0; c < s.mesh().n_cells(); ++c)
    for (Index d : s.cell_u_dofs(c)) ++ucount[d];
  CHECK(ucount.size() == static_cast<std::size_t>(s.n_u()));
  for (Index node = 0; node < s.n_u_nodes(); ++node) {
    const int i = static_cast<int>(node % 7), j = static_cast<int>(node / 7);
    const int cx = (i % 2 == 1) ? 1 : (i > 0) + (i < 6);
    const int cy = (j % 2 == 1) ? 1 : (j > 0) + (j < 4);
    CHECK(ucount[2 * node] == cx * cy);
    CHECK(ucount[2 * node + 1] == cx * cy);
  }
}

TEST_CASE("pressure nodes coincide with displacement nodes") {
  const TaylorHoodSpace s(StructuredMesh::build({-1, 0, 2}, {2, 3, 1}, {2, 3, 1}));
  for (Index n = 0; n < s.n_p(); ++n) {
    const auto p = s.p_node_coords(n);
    const auto u = s.u_node_coords(s.u_node_of_p_node(n));
    for (int a = 0; a < 3; ++a) CHECK(p[a] == doctest::Approx(u[a]));
  }
}

TEST_CASE("cell dofs are interleaved per node") {
  const TaylorHoodSpace s(StructuredMesh::build({0, 0}, {1, 1}, {2, 2}));
  for (Index c = 0; c < s.mesh().n_cells(); ++c) {
    const auto dofs = s.cell_u_dofs(c);
    REQUIRE(dofs.size() == 18);
    for (int local = 0; local < 9; ++local) {
      CHECK(dofs[2 * local] % 2 == 0);
      CHECK(dofs[2 * local + 1] == dofs[2 * local] + 1);
    }
  }
}

TEST_CASE("boundary node sets") {
  const auto s = testing::mandel_space(80, 16);
  CHECK(s.u_nodes_on(BoundaryTag::Left).size() == 33);
  CHECK(s.u_nodes_on(BoundaryTag::Bottom).size() == 161);
  CHECK(s.p_nodes_on(BoundaryTag::Right).size() == 17);
  for (Index n : s.p_nodes_on(BoundaryTag::Right)) CHECK(s.p_node_coords(n)[0] == doctest::Approx(100.0));
}
