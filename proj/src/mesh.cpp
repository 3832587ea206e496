#include "poro/mesh.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace poro {

std::string_view to_string(BoundaryTag tag) {
  switch (tag) {
    case BoundaryTag::Left: return "left";
    case BoundaryTag::Right: return "right";
    case BoundaryTag::Top: return "top";
    case BoundaryTag::Bottom: return "bottom";
    case BoundaryTag::Wall: return "wall";
    case BoundaryTag::Compression: return "compression";
  }
  return "unknown";
}

std::string_view to_string(ProblemKind kind) {
  return kind == ProblemKind::Mandel ? "mandel" : "footing";
}

StructuredMesh StructuredMesh::build(std::vector<double> origin, std::vector<double> extent,
                                     std::vector<int> cells_per_axis) {
  const auto d = origin.size();
  if (d < 2 || d > 3 || extent.size() != d || cells_per_axis.size() != d)
    throw std::invalid_argument("structured mesh: origin/extent/cells must all have dimension 2 or 3");
  for (std::size_t a = 0; a < d; ++a) {
    if (!(extent[a] > 0.0) || !std::isfinite(extent[a]))
      throw std::invalid_argument("structured mesh: extent must be positive along axis " + std::to_string(a));
    if (cells_per_axis[a] < 1)
      throw std::invalid_argument("structured mesh: cell count must be >= 1 along axis " + std::to_string(a));
  }

  StructuredMesh mesh;
  mesh.dim_ = static_cast<int>(d);
  for (std::size_t a = 0; a < d; ++a) {
    mesh.origin_[a] = origin[a];
    mesh.extent_[a] = extent[a];
    mesh.cells_[a] = cells_per_axis[a];
  }

  const auto& c = mesh.cells_;
  const int nz = mesh.dim_ == 3 ? c[2] : 0;
  const Index vx = c[0] + 1, vy = c[1] + 1, vz = nz + 1;
  mesh.vertex_coords_.reserve(static_cast<std::size_t>(vx * vy * vz));
  for (Index k = 0; k < vz; ++k)
    for (Index j = 0; j < vy; ++j)
      for (Index i = 0; i < vx; ++i) {
        Point p{};
        p[0] = mesh.origin_[0] + mesh.extent_[0] * static_cast<double>(i) / c[0];
        p[1] = mesh.origin_[1] + mesh.extent_[1] * static_cast<double>(j) / c[1];
        if (mesh.dim_ == 3) p[2] = mesh.origin_[2] + mesh.extent_[2] * static_cast<double>(k) / c[2];
        mesh.vertex_coords_.push_back(p);
      }

  const int nv = mesh.vertices_per_cell();
  mesh.connectivity_.reserve(static_cast<std::size_t>(mesh.n_cells() * nv));
  for (Index cell = 0; cell < mesh.n_cells(); ++cell) {
    const auto pos = mesh.cell_position(cell);
    for (int local = 0; local < nv; ++local) {
      const Index i = pos[0] + (local & 1);
      const Index j = pos[1] + ((local >> 1) & 1);
      const Index k = mesh.dim_ == 3 ? pos[2] + ((local >> 2) & 1) : 0;
      mesh.connectivity_.push_back(i + vx * (j + vy * k));
    }
  }

  for (Index cell = 0; cell < mesh.n_cells(); ++cell) {
    const auto pos = mesh.cell_position(cell);
    for (int axis = 0; axis < mesh.dim_; ++axis) {
      if (pos[axis] == 0) mesh.facets_.push_back({cell, 2 * axis, std::nullopt});
      if (pos[axis] == c[axis] - 1) mesh.facets_.push_back({cell, 2 * axis + 1, std::nullopt});
    }
  }
  return mesh;
}

Index StructuredMesh::n_cells() const {
  Index n = 1;
  for (int a = 0; a < dim_; ++a) n *= cells_[a];
  return n;
}

std::span<const Index> StructuredMesh::cell_vertices(Index cell) const {
  const auto nv = static_cast<std::size_t>(vertices_per_cell());
  return {connectivity_.data() + static_cast<std::size_t>(cell) * nv, nv};
}

Point StructuredMesh::cell_size() const {
  Point h{};
  for (int a = 0; a < dim_; ++a) h[a] = extent_[a] / cells_[a];
  return h;
}

std::array<int, 3> StructuredMesh::cell_position(Index cell) const {
  std::array<int, 3> pos{};
  pos[0] = static_cast<int>(cell % cells_[0]);
  pos[1] = static_cast<int>((cell / cells_[0]) % cells_[1]);
  if (dim_ == 3) pos[2] = static_cast<int>(cell / (static_cast<Index>(cells_[0]) * cells_[1]));
  return pos;
}

Point StructuredMesh::cell_lower_corner(Index cell) const {
  const auto pos = cell_position(cell);
  const auto h = cell_size();
  Point x{};
  for (int a = 0; a < dim_; ++a) x[a] = origin_[a] + pos[a] * h[a];
  return x;
}

bool StructuredMesh::has_tag(BoundaryTag tag) const {
  for (const auto& f : facets_)
    if (f.tag == tag) return true;
  return false;
}

std::vector<BoundaryFacet> StructuredMesh::facets_with(BoundaryTag tag) const {
  std::vector<BoundaryFacet> out;
  for (const auto& f : facets_)
    if (f.tag == tag) out.push_back(f);
  return out;
}

Point StructuredMesh::facet_centroid(const BoundaryFacet& f) const {
  auto x = cell_lower_corner(f.cell);
  const auto h = cell_size();
  for (int a = 0; a < dim_; ++a) x[a] += a == f.axis() ? f.side() * h[a] : 0.5 * h[a];
  return x;
}

double StructuredMesh::facet_area(const BoundaryFacet& f) const {
  const auto h = cell_size();
  double area = 1.0;
  for (int a = 0; a < dim_; ++a)
    if (a != f.axis()) area *= h[a];
  return area;
}

Point StructuredMesh::facet_normal(const BoundaryFacet& f) const {
  Point n{};
  n[f.axis()] = f.side() == 0 ? -1.0 : 1.0;
  return n;
}

StructuredMesh tag_boundaries(StructuredMesh mesh, ProblemKind kind) {
  const int expected_dim = kind == ProblemKind::Mandel ? 2 : 3;
  if (mesh.dim() != expected_dim)
    throw std::invalid_argument(std::string("tag_boundaries: ") + std::string(to_string(kind)) +
                                " requires a " + std::to_string(expected_dim) + "D mesh");

  const auto& o = mesh.origin();
  const auto& e = mesh.extent();
  for (auto& f : mesh.boundary_facets()) {
    const int axis = f.axis();
    const bool upper = f.side() == 1;
    if (kind == ProblemKind::Mandel) {
      if (axis == 0)
        f.tag = upper ? BoundaryTag::Right : BoundaryTag::Left;
      else
        f.tag = upper ? BoundaryTag::Top : BoundaryTag::Bottom;
      continue;
    }
    if (axis < 2) {
      f.tag = BoundaryTag::Wall;
    } else if (!upper) {
      f.tag = BoundaryTag::Bottom;
    } else {
      const auto c = mesh.facet_centroid(f);
      bool inside = true;
      for (int a = 0; a < 2; ++a) {
        const double center = o[a] + 0.5 * e[a];
        inside = inside && std::abs(c[a] - center) < 0.25 * e[a];
      }
      f.tag = inside ? BoundaryTag::Compression : BoundaryTag::Top;
    }
  }
  return mesh;
}

}  // namespace poro
