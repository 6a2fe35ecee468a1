#include "tdmaxwell/stabilization.hpp"

#include "tdmaxwell/errors.hpp"

#include <algorithm>

namespace tdmaxwell {

double scaling_lambda(std::span<const double> sigma, std::span<const double> eps,
                      double sigma_art) {
  if (eps.empty())
    throw InputError("scaling_lambda: no cells");
  const double max_sigma = sigma.empty() ? 0.0 : *std::max_element(sigma.begin(), sigma.end());
  const double max_eps = *std::max_element(eps.begin(), eps.end());
  const double lambda = (max_sigma + sigma_art) / max_eps;
  if (!(lambda > 0.0))
    throw InputError("stabilization scaling must be positive (sigma_art > 0 required "
                     "when no region conducts)");
  return lambda;
}

StabilizationConfig make_stabilization_config(const Mesh &mesh, const CellFields &fields,
                                              double sigma_art) {
  StabilizationConfig cfg;
  cfg.sigma_art = sigma_art;
  cfg.lambda = scaling_lambda(fields.sigma, fields.eps, sigma_art);
  cfg.conducting_node.assign(static_cast<std::size_t>(mesh.num_nodes()), 0);
  for (Index c = 0; c < mesh.num_cells(); ++c)
    if (fields.sigma[static_cast<std::size_t>(c)] > 0.0)
      for (const Index n : mesh.cells[static_cast<std::size_t>(c)].nodes)
        cfg.conducting_node[static_cast<std::size_t>(n)] = 1;
  return cfg;
}

ConstraintMatrices assemble_constraint_matrices(const AssembledOperators &ops,
                                                const TreeCotreeSplit &split,
                                                const StabilizationConfig &config) {
  const Index n_edges = static_cast<Index>(ops.g_eps.rows());
  if (split.num_edges() != n_edges)
    throw InputError("constraint assembly: split does not match the free edges");
  if (static_cast<Index>(split.tree_child.size()) != split.num_tree())
    throw InputError("constraint assembly: tree/child-node bijection is incomplete");

  // Node-major copies so rows can be read directly.
  const SparseMatrix gs_t = ops.g_sigma.transpose();
  const SparseMatrix ge_t = ops.g_eps.transpose();

  ConstraintMatrices out;
  out.nodes = split.tree_child;
  std::vector<Triplet> tilde, hat;
  for (Index p = 0; p < split.num_tree(); ++p) {
    const Index node = split.tree_child[static_cast<std::size_t>(p)];
    if (node < 0 || node >= static_cast<Index>(config.conducting_node.size()))
      throw InputError("constraint assembly: child node out of range");
    const bool conducting = config.conducting_node[static_cast<std::size_t>(node)] != 0;
    out.row_conducting.push_back(conducting ? 1 : 0);
    if (conducting) {
      for (SparseMatrix::InnerIterator it(gs_t, node); it; ++it)
        tilde.emplace_back(p, it.col(), -it.value());
      for (SparseMatrix::InnerIterator it(ge_t, node); it; ++it)
        hat.emplace_back(p, it.col(), -it.value());
    } else {
      for (SparseMatrix::InnerIterator it(ge_t, node); it; ++it)
        tilde.emplace_back(p, it.col(), -config.lambda * it.value());
    }
  }
  out.d_tilde = from_triplets(split.num_tree(), n_edges, tilde);
  out.d_hat = from_triplets(split.num_tree(), n_edges, hat);

  std::vector<Index> sorted = out.nodes;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
      static_cast<Index>(out.d_tilde.rows()) != split.num_tree())
    throw InputError("constraint rows do not match the tree edges one to one");
  return out;
}

namespace {

SparseMatrix unscaled_tree_rows(const ConstraintMatrices &constraints, const NewmarkParams &params) {
  const double cs = params.sigma_coefficient();
  return cs != 0.0 ? SparseMatrix(constraints.d_tilde + cs * constraints.d_hat)
                   : constraints.d_tilde;
}

} // namespace

Vector stabilized_row_scales(const AssembledOperators &ops, const TreeCotreeSplit &split,
                             const ConstraintMatrices &constraints, const NewmarkParams &params) {
  return matched_row_scales(assemble_update_matrix(ops, params),
                            unscaled_tree_rows(constraints, params), split);
}

SparseMatrix assemble_stabilized_update_matrix(const AssembledOperators &ops,
                                               const TreeCotreeSplit &split,
                                               const ConstraintMatrices &constraints,
                                               const NewmarkParams &params) {
  const SparseMatrix original = assemble_update_matrix(ops, params);
  const Index n = static_cast<Index>(original.rows());
  if (split.num_edges() != n || constraints.d_tilde.rows() != split.num_tree() ||
      constraints.d_tilde.cols() != n || constraints.d_hat.cols() != n)
    throw InputError("stabilized update matrix: dimension mismatch");
  SparseMatrix t_rows = unscaled_tree_rows(constraints, params);
  const Vector s = matched_row_scales(original, t_rows, split);
  t_rows = s.asDiagonal() * t_rows;

  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(original.nonZeros() + t_rows.nonZeros()));
  for (Index r = 0; r < n; ++r) {
    const auto ur = static_cast<std::size_t>(r);
    if (split.is_tree[ur]) {
      for (SparseMatrix::InnerIterator it(t_rows, split.position[ur]); it; ++it)
        t.emplace_back(r, it.col(), it.value());
    } else {
      for (SparseMatrix::InnerIterator it(original, r); it; ++it)
        t.emplace_back(r, it.col(), it.value());
    }
  }
  return from_triplets(n, n, t);
}

Vector assemble_stabilized_rhs(const AssembledOperators &ops, const NewmarkState &state,
                               const Vector &j_np1, const TreeCotreeSplit &split,
                               const ConstraintMatrices &constraints, const NewmarkParams &p,
                               const Vector &row_scales) {
  if (row_scales.size() != split.num_tree())
    throw InputError("assemble_stabilized_rhs: row scale length mismatch");
  Vector rhs = newmark_rhs(ops, state, j_np1, p);
  const double b = p.beta, g = p.gamma, dt = p.dt;
  const Vector t_rhs = row_scales.cwiseProduct(
      constraints.d_hat * ((g / (b * dt)) * state.a + (g / b - 1.0) * state.v +
                            ((g / (2.0 * b) - 1.0) * dt) * state.acc));
  for (Index q = 0; q < split.num_tree(); ++q)
    rhs[split.tree[static_cast<std::size_t>(q)]] = t_rhs[q];
  return rhs;
}

Vector assemble_stabilized_rhs(const AssembledOperators &ops, const NewmarkState &state,
                               const Vector &j_np1, const TreeCotreeSplit &split,
                               const ConstraintMatrices &constraints, const NewmarkParams &p) {
  return assemble_stabilized_rhs(ops, state, j_np1, split, constraints, p,
                                 stabilized_row_scales(ops, split, constraints, p));
}

double constraint_residual(const ConstraintMatrices &constraints, const NewmarkState &state) {
  return (constraints.d_tilde * state.a + constraints.d_hat * state.v).norm();
}

} // namespace tdmaxwell
