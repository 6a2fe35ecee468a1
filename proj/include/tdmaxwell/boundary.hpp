#pragma once

#include "tdmaxwell/mesh.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tdmaxwell {

/// A part of one box side, optionally clipped to an axis-aligned window.
struct BoundaryPatch {
  BoxSide side = BoxSide::XMin;
  std::optional<RegionBox> window; ///< only lo/hi are used
};

enum class ScalarValue { Ground, Drive };

struct ScalarDirichlet {
  BoundaryPatch patch;
  ScalarValue value = ScalarValue::Ground;
};

/// Everything not listed is homogeneous Neumann.
struct BoundaryConditions {
  std::vector<ScalarDirichlet> scalar;
  std::vector<BoundaryPatch> vector_dirichlet; ///< tangential A = 0
};

/// Sorted node ids on a patch.
std::vector<Index> patch_nodes(const Mesh &mesh, const BoundaryPatch &patch);
/// Boundary face ids on a patch (all three vertices inside the window).
std::vector<Index> patch_faces(const Mesh &mesh, const BoundaryPatch &patch);

/// Free/constrained entity numbering. Free lists are ascending in entity id.
struct DofMap {
  std::vector<Index> free_nodes;
  std::vector<Index> node_to_free; ///< -1 for scalar-Dirichlet nodes
  std::vector<Index> dirichlet_nodes;
  std::vector<ScalarValue> dirichlet_values; ///< parallel to dirichlet_nodes
  std::vector<Index> free_edges;
  std::vector<Index> edge_to_free; ///< -1 for edges inside a vector-Dirichlet patch
  std::vector<Index> vector_dirichlet_nodes; ///< nodes on vector-Dirichlet patches

  Index num_free_nodes() const { return static_cast<Index>(free_nodes.size()); }
  Index num_free_edges() const { return static_cast<Index>(free_edges.size()); }
};

/// Throws ConfigError for overlapping ground/drive patches and for empty free sets.
DofMap classify_dofs(const Mesh &mesh, const BoundaryConditions &bc);

} // namespace tdmaxwell
