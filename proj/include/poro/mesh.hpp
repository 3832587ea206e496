#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace poro {

using Index = std::int64_t;
using Point = std::array<double, 3>;

enum class BoundaryTag { Left, Right, Top, Bottom, Wall, Compression };
enum class ProblemKind { Mandel, Footing };

std::string_view to_string(BoundaryTag tag);
std::string_view to_string(ProblemKind kind);

/// Exterior facet of a cell. Local face ids are 2*axis + side, side 0 being
/// the lower coordinate plane of the cell and side 1 the upper one.
struct BoundaryFacet {
  Index cell = 0;
  int local_face = 0;
  std::optional<BoundaryTag> tag;

  int axis() const { return local_face / 2; }
  int side() const { return local_face % 2; }
};

/// Axis-aligned tensor-product grid of quadrilaterals (2D) or hexahedra (3D).
/// Vertices and cells are numbered lexicographically with x fastest.
class StructuredMesh {
 public:
  static StructuredMesh build(std::vector<double> origin, std::vector<double> extent,
                              std::vector<int> cells_per_axis);

  int dim() const { return dim_; }
  const Point& origin() const { return origin_; }
  const Point& extent() const { return extent_; }
  const std::array<int, 3>& cells_per_axis() const { return cells_; }

  Index n_cells() const;
  Index n_vertices() const { return static_cast<Index>(vertex_coords_.size()); }
  const std::vector<Point>& vertex_coords() const { return vertex_coords_; }

  int vertices_per_cell() const { return 1 << dim_; }
  /// Vertex indices of a cell in local lexicographic order.
  std::span<const Index> cell_vertices(Index cell) const;

  /// Cell edge lengths (identical for all cells on a uniform grid).
  Point cell_size() const;
  /// Grid coordinates (i, j, k) of a cell.
  std::array<int, 3> cell_position(Index cell) const;
  Point cell_lower_corner(Index cell) const;

  const std::vector<BoundaryFacet>& boundary_facets() const { return facets_; }
  std::vector<BoundaryFacet>& boundary_facets() { return facets_; }

  bool has_tag(BoundaryTag tag) const;
  std::vector<BoundaryFacet> facets_with(BoundaryTag tag) const;

  Point facet_centroid(const BoundaryFacet& f) const;
  double facet_area(const BoundaryFacet& f) const;
  /// Outward unit normal of an exterior facet.
  Point facet_normal(const BoundaryFacet& f) const;

 private:
  int dim_ = 2;
  Point origin_{};
  Point extent_{};
  std::array<int, 3> cells_{1, 1, 1};
  std::vector<Point> vertex_coords_;
  std::vector<Index> connectivity_;
  std::vector<BoundaryFacet> facets_;
};

/// Returns a copy of `mesh` with every exterior facet tagged for the given
/// benchmark. Mandel: Left/Right/Bottom/Top by face. Footing: Bottom (z-min),
/// Wall (lateral faces), and on the top face Compression for facets whose
/// centroid lies strictly inside the centered square of half the side length,
/// Top for the rest.
StructuredMesh tag_boundaries(StructuredMesh mesh, ProblemKind kind);

}  // namespace poro
