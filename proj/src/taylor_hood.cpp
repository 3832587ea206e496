#include "poro/taylor_hood.hpp"

#include <algorithm>

namespace poro {

namespace {

int ipow(int base, int e) {
  int r = 1;
  while (e-- > 0) r *= base;
  return r;
}

// Digit `axis` of a local lexicographic node number in the given base.
int local_digit(int local, int axis, int base) {
  for (int a = 0; a < axis; ++a) local /= base;
  return local % base;
}

}  // namespace

TaylorHoodSpace::TaylorHoodSpace(StructuredMesh mesh) : mesh_(std::move(mesh)) {
  const int d = mesh_.dim();
  const auto& c = mesh_.cells_per_axis();
  for (int a = 0; a < d; ++a) {
    u_lattice_[a] = 2 * static_cast<Index>(c[a]) + 1;
    p_lattice_[a] = static_cast<Index>(c[a]) + 1;
  }
  Index u_nodes = 1, p_nodes = 1;
  for (int a = 0; a < d; ++a) {
    u_nodes *= u_lattice_[a];
    p_nodes *= p_lattice_[a];
  }
  n_u_ = d * u_nodes;
  n_p_ = p_nodes;
  u_nodes_per_cell_ = ipow(3, d);
  p_nodes_per_cell_ = ipow(2, d);

  const Index n_cells = mesh_.n_cells();
  u_dof_map_.reserve(static_cast<std::size_t>(n_cells * d * u_nodes_per_cell_));
  p_dof_map_.reserve(static_cast<std::size_t>(n_cells * p_nodes_per_cell_));
  for (Index cell = 0; cell < n_cells; ++cell) {
    const auto pos = mesh_.cell_position(cell);
    for (int local = 0; local < u_nodes_per_cell_; ++local) {
      Index node = 0, stride = 1;
      for (int a = 0; a < d; ++a) {
        node += (2 * static_cast<Index>(pos[a]) + local_digit(local, a, 3)) * stride;
        stride *= u_lattice_[a];
      }
      for (int comp = 0; comp < d; ++comp) u_dof_map_.push_back(d * node + comp);
    }
    for (int local = 0; local < p_nodes_per_cell_; ++local) {
      Index node = 0, stride = 1;
      for (int a = 0; a < d; ++a) {
        node += (static_cast<Index>(pos[a]) + local_digit(local, a, 2)) * stride;
        stride *= p_lattice_[a];
      }
      p_dof_map_.push_back(node);
    }
  }
}

std::span<const Index> TaylorHoodSpace::cell_u_dofs(Index cell) const {
  const auto n = static_cast<std::size_t>(u_dofs_per_cell());
  return {u_dof_map_.data() + static_cast<std::size_t>(cell) * n, n};
}

std::span<const Index> TaylorHoodSpace::cell_p_dofs(Index cell) const {
  const auto n = static_cast<std::size_t>(p_nodes_per_cell_);
  return {p_dof_map_.data() + static_cast<std::size_t>(cell) * n, n};
}

Point TaylorHoodSpace::u_node_coords(Index node) const {
  Point x{};
  const auto h = mesh_.cell_size();
  for (int a = 0; a < dim(); ++a) {
    const Index i = node % u_lattice_[a];
    node /= u_lattice_[a];
    x[a] = mesh_.origin()[a] + 0.5 * h[a] * static_cast<double>(i);
  }
  return x;
}

Point TaylorHoodSpace::p_node_coords(Index node) const {
  Point x{};
  const auto h = mesh_.cell_size();
  for (int a = 0; a < dim(); ++a) {
    const Index i = node % p_lattice_[a];
    node /= p_lattice_[a];
    x[a] = mesh_.origin()[a] + h[a] * static_cast<double>(i);
  }
  return x;
}

Index TaylorHoodSpace::u_node_of_p_node(Index p_node) const {
  Index u_node = 0, stride = 1;
  for (int a = 0; a < dim(); ++a) {
    const Index i = p_node % p_lattice_[a];
    p_node /= p_lattice_[a];
    u_node += 2 * i * stride;
    stride *= u_lattice_[a];
  }
  return u_node;
}

std::vector<int> TaylorHoodSpace::face_u_local_nodes(int local_face) const {
  const int axis = local_face / 2;
  const int want = (local_face % 2) * 2;
  std::vector<int> out;
  for (int local = 0; local < u_nodes_per_cell_; ++local)
    if (local_digit(local, axis, 3) == want) out.push_back(local);
  return out;
}

std::vector<int> TaylorHoodSpace::face_p_local_nodes(int local_face) const {
  const int axis = local_face / 2;
  const int want = local_face % 2;
  std::vector<int> out;
  for (int local = 0; local < p_nodes_per_cell_; ++local)
    if (local_digit(local, axis, 2) == want) out.push_back(local);
  return out;
}

std::vector<Index> TaylorHoodSpace::u_nodes_on(BoundaryTag tag) const {
  std::vector<Index> nodes;
  for (const auto& f : mesh_.boundary_facets()) {
    if (f.tag != tag) continue;
    const auto dofs = cell_u_dofs(f.cell);
    for (int local : face_u_local_nodes(f.local_face)) nodes.push_back(dofs[dim() * local] / dim());
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

std::vector<Index> TaylorHoodSpace::p_nodes_on(BoundaryTag tag) const {
  std::vector<Index> nodes;
  for (const auto& f : mesh_.boundary_facets()) {
    if (f.tag != tag) continue;
    const auto dofs = cell_p_dofs(f.cell);
    for (int local : face_p_local_nodes(f.local_face)) nodes.push_back(dofs[local]);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

}  // namespace poro
