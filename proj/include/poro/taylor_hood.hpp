#pragma once

#include <span>
#include <vector>

#include "poro/mesh.hpp"

namespace poro {

/// Q2 vector displacement / Q1 scalar pressure space on a structured mesh.
///
/// Displacement nodes live on the refined (2n+1)-per-axis lattice, pressure
/// nodes on the vertex lattice. Both are numbered lexicographically (x
/// fastest); displacement dofs are interleaved per node, dof = dim*node+comp.
class TaylorHoodSpace {
 public:
  explicit TaylorHoodSpace(StructuredMesh mesh);

  const StructuredMesh& mesh() const { return mesh_; }
  int dim() const { return mesh_.dim(); }

  Index n_u() const { return n_u_; }
  Index n_p() const { return n_p_; }
  Index n_u_nodes() const { return n_u_ / dim(); }

  /// Local Q2 nodes per cell (3^dim) and Q1 nodes per cell (2^dim).
  int u_nodes_per_cell() const { return u_nodes_per_cell_; }
  int p_nodes_per_cell() const { return p_nodes_per_cell_; }
  int u_dofs_per_cell() const { return dim() * u_nodes_per_cell_; }

  /// Global displacement dofs of a cell, ordered dim*local_node + comp, local
  /// nodes lexicographic over {0,1,2}^dim.
  std::span<const Index> cell_u_dofs(Index cell) const;
  /// Global pressure dofs of a cell, local nodes lexicographic over {0,1}^dim.
  std::span<const Index> cell_p_dofs(Index cell) const;

  Point u_node_coords(Index node) const;
  Point p_node_coords(Index node) const;
  /// Displacement node that coincides with a pressure node.
  Index u_node_of_p_node(Index p_node) const;

  /// Local node numbers (within a cell) lying on a given local face.
  std::vector<int> face_u_local_nodes(int local_face) const;
  std::vector<int> face_p_local_nodes(int local_face) const;

  /// Distinct global displacement nodes / pressure nodes on facets with `tag`.
  std::vector<Index> u_nodes_on(BoundaryTag tag) const;
  std::vector<Index> p_nodes_on(BoundaryTag tag) const;

 private:
  StructuredMesh mesh_;
  std::array<Index, 3> u_lattice_{1, 1, 1};
  std::array<Index, 3> p_lattice_{1, 1, 1};
  Index n_u_ = 0;
  Index n_p_ = 0;
  int u_nodes_per_cell_ = 0;
  int p_nodes_per_cell_ = 0;
  std::vector<Index> u_dof_map_;
  std::vector<Index> p_dof_map_;
};

}  // namespace poro
