#pragma once

#include "tdmaxwell/sparse.hpp"

#include <Eigen/Dense>

#include <array>
#include <vector>

namespace tdmaxwell {

using Point = Eigen::Vector3d;

/// Local edge k of a tetrahedron joins local vertices kLocalEdges[k][0] -> [1].
inline constexpr std::array<std::array<int, 2>, 6> kLocalEdges{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

struct Cell {
  std::array<Index, 4> nodes{};
  std::array<Index, 6> edges{};
  /// +1 when the local edge direction agrees with the global (low -> high) one.
  std::array<int, 6> edge_signs{};
};

enum class BoxSide { XMin = 0, XMax, YMin, YMax, ZMin, ZMax };
inline constexpr std::array<BoxSide, 6> kAllSides{BoxSide::XMin, BoxSide::XMax, BoxSide::YMin,
                                                  BoxSide::YMax, BoxSide::ZMin, BoxSide::ZMax};
const char *side_name(BoxSide side);

/// Axis-aligned region box; cells whose centroid lies inside get `id`.
struct RegionBox {
  int id = 0;
  Point lo = Point::Zero();
  Point hi = Point::Zero();
};

/// Structured Kuhn-subdivided tetrahedral mesh of an axis-aligned box.
/// Immutable after construction.
struct Mesh {
  std::array<std::vector<double>, 3> planes; ///< lattice coordinates per axis
  std::vector<Point> nodes;
  std::vector<std::array<Index, 3>> node_lattice; ///< (i, j, k) per node
  std::vector<std::array<Index, 2>> edges;        ///< sorted (low, high)
  std::vector<std::array<Index, 3>> faces;        ///< sorted node triples
  std::vector<Cell> cells;
  std::vector<int> cell_region;
  /// Boundary face ids on each box side, indexed by BoxSide.
  std::array<std::vector<Index>, 6> boundary_faces;

  Index num_nodes() const { return static_cast<Index>(nodes.size()); }
  Index num_edges() const { return static_cast<Index>(edges.size()); }
  Index num_faces() const { return static_cast<Index>(faces.size()); }
  Index num_cells() const { return static_cast<Index>(cells.size()); }
  std::array<Index, 3> divisions() const;

  bool on_side(Index node, BoxSide side) const;
  std::array<Point, 4> cell_points(Index c) const;
  double cell_volume(Index c) const;
  Point cell_centroid(Index c) const;
  /// Edge id for an unordered node pair, or -1.
  Index find_edge(Index a, Index b) const;
};

/// Uniform lattice: extent in metres, divisions per axis.
Mesh build_box_mesh(const Point &extent, const std::array<Index, 3> &divisions,
                    const std::vector<RegionBox> &regions = {});

/// Tensor-product lattice with explicit, strictly increasing plane coordinates.
/// Region box faces must coincide with lattice planes.
Mesh build_lattice_mesh(const std::array<std::vector<double>, 3> &planes,
                        const std::vector<RegionBox> &regions = {});

/// Edge-node incidence (edges x nodes): -1 at the low node, +1 at the high node.
SparseMatrix topological_gradient(const Mesh &mesh);

/// Face-edge incidence (faces x edges) for faces oriented n0 -> n1 -> n2.
SparseMatrix topological_curl(const Mesh &mesh);

} // namespace tdmaxwell
