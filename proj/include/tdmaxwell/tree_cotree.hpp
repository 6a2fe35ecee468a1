#pragma once

#include "tdmaxwell/boundary.hpp"
#include "tdmaxwell/mesh.hpp"
#include "tdmaxwell/sparse.hpp"

#include <array>
#include <filesystem>
#include <span>
#include <vector>

namespace tdmaxwell {

/// Spanning-forest classification of the free edges. Edge indices are local
/// to the graph passed in (free-edge numbering for meshes). R = cotree, T = tree.
struct TreeCotreeSplit {
  std::vector<Index> cotree; ///< ascending
  std::vector<Index> tree;   ///< ascending
  /// Child node (endpoint farther from the roots) of tree[p].
  std::vector<Index> tree_child;
  std::vector<Index> roots;
  /// Per graph edge: position within cotree (is_tree = false) or tree.
  std::vector<Index> position;
  std::vector<char> is_tree;

  Index num_cotree() const { return static_cast<Index>(cotree.size()); }
  Index num_tree() const { return static_cast<Index>(tree.size()); }
  Index num_edges() const { return static_cast<Index>(position.size()); }
  /// Graph edge indices in block order: cotree first, then tree.
  std::vector<Index> block_order() const;
};

/// Multi-source breadth-first forest. Roots are collapsed into one source;
/// neighbours are visited in ascending edge index. Throws InputError if roots
/// are empty or some edge cannot be reached from a root (orphans are listed).
TreeCotreeSplit build_spanning_forest(Index num_nodes, std::span<const std::array<Index, 2>> edges,
                                      std::span<const Index> roots);

/// Forest over the free edges of a mesh.
TreeCotreeSplit build_spanning_forest(const Mesh &mesh, const DofMap &dofs,
                                      std::span<const Index> roots);

/// Vector-Dirichlet nodes; without any, a single root: the lowest-index node of
/// a conducting cell when `sigma` marks one, else node 0.
std::vector<Index> default_roots(const Mesh &mesh, const DofMap &dofs,
                                 std::span<const double> sigma = {});

struct BlockSystem {
  SparseMatrix rr, rt, tr, tt;
  Vector rhs_r, rhs_t;
};

/// Reorders a system on the split's edges into cotree/tree blocks.
BlockSystem permute_system(const SparseMatrix &a, const Vector &rhs, const TreeCotreeSplit &split);
/// Inverse of permute_system.
std::pair<SparseMatrix, Vector> unpermute_system(const BlockSystem &blocks,
                                                 const TreeCotreeSplit &split);

/// Simple tree gauge: a_T = 0 and K_RR a_R = j_R. `g_top` is the edge-node
/// incidence restricted to the split's edges (rows) and all nodes; it is used
/// to reject sources that are not discretely divergence free.
Vector solve_magnetostatic_treegauge(const SparseMatrix &k_curl, const Vector &j,
                                     const TreeCotreeSplit &split, const SparseMatrix &g_top,
                                     double compat_tol = 1e-8);

/// CSV: edge_id, free_index, class (tree/cotree), child_node.
void write_split_csv(const TreeCotreeSplit &split, const DofMap &dofs,
                     const std::filesystem::path &path);

} // namespace tdmaxwell
