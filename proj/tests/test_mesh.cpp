#include <doctest.h>

#include <map>
#include <numeric>

#include "test_util.hpp"

using namespace poro;

namespace {

std::map<BoundaryTag, int> count_tags(const StructuredMesh& m) {
  std::map<BoundaryTag, int> c;
  for (const auto& f : m.boundary_facets()) {
    REQUIRE(f.tag.has_value());
    ++c[*f.tag];
  }
  return c;
}

double tagged_area(const StructuredMesh& m, BoundaryTag tag) {
  double a = 0.0;
  for (const auto& f : m.facets_with(tag)) a += m.facet_area(f);
  return a;
}

}  // namespace

TEST_CASE("single cell mesh") {
  const auto m = StructuredMesh::build({0, 0}, {1, 1}, {1, 1});
  CHECK(m.n_vertices() == 4);
  CHECK(m.n_cells() == 1);
  CHECK(m.boundary_facets().size() == 4);
}

TEST_CASE("vertex counts of the benchmark grids") {
  CHECK(StructuredMesh::build({0, 0}, {100, 20}, {80, 16}).n_vertices() == 81 * 17);
  CHECK(StructuredMesh::build({-32, -32, 0}, {64, 64, 64}, {16, 16, 16}).n_vertices() == 4913);
}

TEST_CASE("invalid mesh input is rejected") {
  CHECK_THROWS_AS(StructuredMesh::build({0, 0}, {0, 1}, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(StructuredMesh::build({0, 0}, {1, -1}, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(StructuredMesh::build({0, 0}, {1, 1}, {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(StructuredMesh::build({0, 0}, {1, 1, 1}, {1, 1}), std::invalid_argument);
}

TEST_CASE("vertices lie in the box and cells are lexicographic") {
  const auto m = StructuredMesh::build({1, 2}, {3, 4}, {3, 2});
  for (const auto& v : m.vertex_coords()) {
    CHECK(v[0] >= 1.0);
    CHECK(v[0] <= 4.0);
    CHECK(v[1] >= 2.0);
    CHECK(v[1] <= 6.0);
  }
  CHECK(m.cell_position(1) == std::array<int, 3>{1, 0, 0});
  CHECK(m.cell_position(3) == std::array<int, 3>{0, 1, 0});
  const auto corner = m.cell_lower_corner(4);
  CHECK(corner[0] == doctest::Approx(2.0));
  CHECK(corner[1] == doctest::Approx(4.0));
}

TEST_CASE("Mandel tagging") {
  SUBCASE("one cell") {
    const auto m = tag_boundaries(StructuredMesh::build({0, 0}, {1, 1}, {1, 1}), ProblemKind::Mandel);
    const auto c = count_tags(m);
    CHECK(c.at(BoundaryTag::Left) == 1);
    CHECK(c.at(BoundaryTag::Right) == 1);
    CHECK(c.at(BoundaryTag::Top) == 1);
    CHECK(c.at(BoundaryTag::Bottom) == 1);
  }
  SUBCASE("80x16") {
    const auto m = tag_boundaries(StructuredMesh::build({0, 0}, {100, 20}, {80, 16}), ProblemKind::Mandel);
    const auto c = count_tags(m);
    CHECK(c.at(BoundaryTag::Bottom) == 80);
    CHECK(c.at(BoundaryTag::Left) == 16);
    CHECK(c.size() == 4);
  }
}

TEST_CASE("footing tagging") {
  const auto m = tag_boundaries(StructuredMesh::build({-32, -32, 0}, {64, 64, 64}, {16, 16, 16}), ProblemKind::Footing);
  const auto c = count_tags(m);
  CHECK(c.size() == 4);
  CHECK(tagged_area(m, BoundaryTag::Compression) == doctest::Approx(32.0 * 32.0));
  CHECK(tagged_area(m, BoundaryTag::Top) == doctest::Approx(64.0 * 64.0 - 32.0 * 32.0));
  CHECK(tagged_area(m, BoundaryTag::Bottom) == doctest::Approx(64.0 * 64.0));
  CHECK(tagged_area(m, BoundaryTag::Wall) == doctest::Approx(4 * 64.0 * 64.0));
  for (const auto& f : m.facets_with(BoundaryTag::Compression)) CHECK(m.facet_normal(f)[2] == 1.0);
}

TEST_CASE("tagging with the wrong dimension throws") {
  CHECK_THROWS_AS(tag_boundaries(StructuredMesh::build({0, 0}, {1, 1}, {1, 1}), ProblemKind::Footing),
                  std::invalid_argument);
  CHECK_THROWS_AS(tag_boundaries(StructuredMesh::build({0, 0, 0}, {1, 1, 1}, {1, 1, 1}), ProblemKind::Mandel),
                  std::invalid_argument);
}

TEST_CASE("boundary facet areas sum to the box surface") {
  for (int nx = 1; nx <= 4; ++nx)
    for (int ny = 1; ny <= 3; ++ny) {
      const auto m2 = StructuredMesh::build({0, 0}, {2.5, 1.5}, {nx, ny});
      double a = 0.0;
      for (const auto& f : m2.boundary_facets()) a += m2.facet_area(f);
      CHECK(a == doctest::Approx(2 * (2.5 + 1.5)));
      const auto m3 = StructuredMesh::build({0, 0, 0}, {2, 3, 4}, {nx, ny, 2});
      double b = 0.0;
      for (const auto& f : m3.boundary_facets()) b += m3.facet_area(f);
      CHECK(b == doctest::Approx(2 * (2 * 3 + 3 * 4 + 2 * 4)));
    }
}

TEST_CASE("facet normals point outward") {
  const auto m = StructuredMesh::build({0, 0, 0}, {1, 1, 1}, {2, 2, 2});
  for (const auto& f : m.boundary_facets()) {
    const auto n = m.facet_normal(f);
    const auto c = m.facet_centroid(f);
    // Moving along the normal from the facet centroid leaves the unit box.
    bool outside = false;
    for (int a = 0; a < 3; ++a) {
      const double x = c[a] + 0.1 * n[a];
      outside = outside || x < 0.0 || x > 1.0;
    }
    CHECK(outside);
  }
}
