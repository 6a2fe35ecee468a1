#include "tdmaxwell/tree_cotree.hpp"

#include "tdmaxwell/errors.hpp"
#include "tdmaxwell/linear_solver.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <numeric>
#include <sstream>

namespace tdmaxwell {

std::vector<Index> TreeCotreeSplit::block_order() const {
  std::vector<Index> order(cotree);
  order.insert(order.end(), tree.begin(), tree.end());
  return order;
}

TreeCotreeSplit build_spanning_forest(Index num_nodes, std::span<const std::array<Index, 2>> edges,
                                      std::span<const Index> roots) {
  if (roots.empty())
    throw InputError("spanning forest needs at least one root");
  const auto nn = static_cast<std::size_t>(num_nodes);
  const auto ne = edges.size();

  // adjacency in ascending edge order
  std::vector<Index> offsets(nn + 1, 0);
  for (const auto &e : edges) {
    if (e[0] < 0 || e[1] < 0 || e[0] >= num_nodes || e[1] >= num_nodes)
      throw InputError("spanning forest: edge references an unknown node");
    ++offsets[static_cast<std::size_t>(e[0]) + 1];
    ++offsets[static_cast<std::size_t>(e[1]) + 1];
  }
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  std::vector<Index> adjacency(static_cast<std::size_t>(offsets.back()));
  std::vector<Index> fill(offsets.begin(), offsets.end() - 1);
  for (std::size_t e = 0; e < ne; ++e) {
    adjacency[static_cast<std::size_t>(fill[static_cast<std::size_t>(edges[e][0])]++)] =
        static_cast<Index>(e);
    adjacency[static_cast<std::size_t>(fill[static_cast<std::size_t>(edges[e][1])]++)] =
        static_cast<Index>(e);
  }

  TreeCotreeSplit split;
  split.roots.assign(roots.begin(), roots.end());
  std::sort(split.roots.begin(), split.roots.end());
  split.roots.erase(std::unique(split.roots.begin(), split.roots.end()), split.roots.end());

  std::vector<char> visited(nn, 0);
  std::vector<Index> child_of_edge(ne, -1);
  std::deque<Index> queue;
  for (const Index r : split.roots) {
    if (r < 0 || r >= num_nodes)
      throw InputError("spanning forest: root out of range");
    visited[static_cast<std::size_t>(r)] = 1;
    queue.push_back(r);
  }
  while (!queue.empty()) {
    const Index n = queue.front();
    queue.pop_front();
    for (Index k = offsets[static_cast<std::size_t>(n)]; k < offsets[static_cast<std::size_t>(n) + 1];
         ++k) {
      const Index e = adjacency[static_cast<std::size_t>(k)];
      const auto &ed = edges[static_cast<std::size_t>(e)];
      const Index other = ed[0] == n ? ed[1] : ed[0];
      if (visited[static_cast<std::size_t>(other)])
        continue;
      visited[static_cast<std::size_t>(other)] = 1;
      child_of_edge[static_cast<std::size_t>(e)] = other;
      queue.push_back(other);
    }
  }

  std::vector<Index> orphans;
  for (const auto &e : edges)
    for (const Index n : e)
      if (!visited[static_cast<std::size_t>(n)])
        orphans.push_back(n);
  if (!orphans.empty()) {
    std::sort(orphans.begin(), orphans.end());
    orphans.erase(std::unique(orphans.begin(), orphans.end()), orphans.end());
    std::ostringstream msg;
    msg << "free-edge graph has " << orphans.size() << " node(s) unreachable from the roots:";
    for (std::size_t i = 0; i < std::min<std::size_t>(orphans.size(), 20); ++i)
      msg << ' ' << orphans[i];
    if (orphans.size() > 20)
      msg << " ...";
    throw InputError(msg.str());
  }

  split.position.assign(ne, -1);
  split.is_tree.assign(ne, 0);
  for (std::size_t e = 0; e < ne; ++e) {
    if (child_of_edge[e] >= 0) {
      split.position[e] = static_cast<Index>(split.tree.size());
      split.is_tree[e] = 1;
      split.tree.push_back(static_cast<Index>(e));
      split.tree_child.push_back(child_of_edge[e]);
    } else {
      split.position[e] = static_cast<Index>(split.cotree.size());
      split.cotree.push_back(static_cast<Index>(e));
    }
  }
  return split;
}

TreeCotreeSplit build_spanning_forest(const Mesh &mesh, const DofMap &dofs,
                                      std::span<const Index> roots) {
  std::vector<std::array<Index, 2>> edges;
  edges.reserve(dofs.free_edges.size());
  for (const Index e : dofs.free_edges)
    edges.push_back(mesh.edges[static_cast<std::size_t>(e)]);
  return build_spanning_forest(mesh.num_nodes(), edges, roots);
}

std::vector<Index> default_roots(const Mesh &mesh, const DofMap &dofs,
                                 std::span<const double> sigma) {
  if (!dofs.vector_dirichlet_nodes.empty())
    return dofs.vector_dirichlet_nodes;
  Index best = -1;
  if (sigma.size() == static_cast<std::size_t>(mesh.num_cells()))
    for (Index c = 0; c < mesh.num_cells(); ++c)
      if (sigma[static_cast<std::size_t>(c)] > 0.0)
        for (const Index n : mesh.cells[static_cast<std::size_t>(c)].nodes)
          if (best < 0 || n < best)
            best = n;
  if (best < 0)
    best = 0;
  return {best};
}

BlockSystem permute_system(const SparseMatrix &a, const Vector &rhs, const TreeCotreeSplit &split) {
  const Index n = split.num_edges();
  if (a.rows() != n || a.cols() != n || rhs.size() != n)
    throw InputError("permute_system: dimension mismatch");
  BlockSystem b;
  b.rr = select(a, split.cotree, split.cotree);
  b.rt = select(a, split.cotree, split.tree);
  b.tr = select(a, split.tree, split.cotree);
  b.tt = select(a, split.tree, split.tree);
  b.rhs_r = select(rhs, split.cotree);
  b.rhs_t = select(rhs, split.tree);
  return b;
}

std::pair<SparseMatrix, Vector> unpermute_system(const BlockSystem &blocks,
                                                 const TreeCotreeSplit &split) {
  const Index n = split.num_edges();
  const Index nr = split.num_cotree();
  if (blocks.rr.rows() != nr || blocks.tt.rows() != split.num_tree() ||
      blocks.rhs_r.size() != nr || blocks.rhs_t.size() != split.num_tree())
    throw InputError("unpermute_system: block sizes do not match the split");
  std::vector<Triplet> t;
  const auto scatter = [&](const SparseMatrix &m, const std::vector<Index> &rows,
                           const std::vector<Index> &cols) {
    for (Index r = 0; r < m.outerSize(); ++r)
      for (SparseMatrix::InnerIterator it(m, r); it; ++it)
        t.emplace_back(rows[static_cast<std::size_t>(it.row())],
                       cols[static_cast<std::size_t>(it.col())], it.value());
  };
  scatter(blocks.rr, split.cotree, split.cotree);
  scatter(blocks.rt, split.cotree, split.tree);
  scatter(blocks.tr, split.tree, split.cotree);
  scatter(blocks.tt, split.tree, split.tree);
  Vector rhs(n);
  for (Index i = 0; i < nr; ++i)
    rhs[split.cotree[static_cast<std::size_t>(i)]] = blocks.rhs_r[i];
  for (Index i = 0; i < split.num_tree(); ++i)
    rhs[split.tree[static_cast<std::size_t>(i)]] = blocks.rhs_t[i];
  return {from_triplets(n, n, t), rhs};
}

Vector solve_magnetostatic_treegauge(const SparseMatrix &k_curl, const Vector &j,
                                     const TreeCotreeSplit &split, const SparseMatrix &g_top,
                                     double compat_tol) {
  const Index n = split.num_edges();
  if (k_curl.rows() != n || j.size() != n || g_top.rows() != n)
    throw InputError("solve_magnetostatic_treegauge: dimension mismatch");
  if (j.squaredNorm() == 0.0)
    return Vector::Zero(n);

  // Discrete divergence of j at every non-root node must vanish.
  const Vector div = g_top.transpose() * j;
  const Vector scale = g_top.cwiseAbs().transpose() * j.cwiseAbs();
  std::vector<char> is_root(static_cast<std::size_t>(g_top.cols()), 0);
  for (const Index r : split.roots)
    is_root[static_cast<std::size_t>(r)] = 1;
  double div_norm = 0.0, scale_norm = 0.0;
  for (Eigen::Index i = 0; i < div.size(); ++i)
    if (!is_root[static_cast<std::size_t>(i)]) {
      div_norm += div[i] * div[i];
      scale_norm += scale[i] * scale[i];
    }
  if (std::sqrt(div_norm) > compat_tol * std::sqrt(scale_norm)) {
    std::ostringstream msg;
    msg << "magnetostatic source is not divergence free: ||G^T j|| = " << std::sqrt(div_norm)
        << " vs scale " << std::sqrt(scale_norm);
    throw InputError(msg.str());
  }

  const BlockSystem blocks = permute_system(k_curl, j, split);
  Vector a = Vector::Zero(n);
  if (split.num_cotree() > 0) {
    const Vector a_r = factor_solve(blocks.rr, blocks.rhs_r);
    for (Index i = 0; i < split.num_cotree(); ++i)
      a[split.cotree[static_cast<std::size_t>(i)]] = a_r[i];
  }
  const double res = relative_residual(k_curl, a, j);
  if (res > 1e-10)
    throw SolverError("tree-gauged magnetostatic residual " + std::to_string(res) +
                      " exceeds 1e-10");
  return a;
}

void write_split_csv(const TreeCotreeSplit &split, const DofMap &dofs,
                     const std::filesystem::path &path) {
  std::ofstream out(path);
  if (!out)
    throw InputError("cannot open " + path.string());
  out << "edge_id,free_index,class,child_node\n";
  for (Index e = 0; e < split.num_edges(); ++e) {
    const auto ue = static_cast<std::size_t>(e);
    out << dofs.free_edges[ue] << ',' << e << ',' << (split.is_tree[ue] ? "tree" : "cotree") << ',';
    if (split.is_tree[ue])
      out << split.tree_child[static_cast<std::size_t>(split.position[ue])];
    out << '\n';
  }
}

} // namespace tdmaxwell
