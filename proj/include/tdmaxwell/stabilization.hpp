#pragma once

#include "tdmaxwell/assembly.hpp"
#include "tdmaxwell/time_integration.hpp"
#include "tdmaxwell/tree_cotree.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace tdmaxwell {

inline constexpr double kDefaultSigmaArt = 1e-6;

struct StabilizationConfig {
  double lambda = 1.0;
  double sigma_art = kDefaultSigmaArt;
  /// Per mesh node: 1 if some incident cell has sigma > 0.
  std::vector<char> conducting_node;
};

/// (max sigma + sigma_art) / max eps
double scaling_lambda(std::span<const double> sigma, std::span<const double> eps,
                      double sigma_art = kDefaultSigmaArt);

StabilizationConfig make_stabilization_config(const Mesh &mesh, const CellFields &fields,
                                              double sigma_art = kDefaultSigmaArt);

/// Time-integrated divergence constraint D_tilde a + D_hat da/dt = 0, one row
/// per tree edge (row p belongs to the child node of split.tree[p]); columns
/// are the free edges in their original order.
struct ConstraintMatrices {
  SparseMatrix d_tilde;
  SparseMatrix d_hat;
  std::vector<Index> nodes;        ///< constraint node per row
  std::vector<char> row_conducting; ///< class C (1) or A (0) per row
};

/// Class C rows: D_tilde = -G_sigma^T, D_hat = -G_eps^T.
/// Class A rows: D_tilde = -lambda G_eps^T, D_hat = 0.
ConstraintMatrices assemble_constraint_matrices(const AssembledOperators &ops,
                                                const TreeCotreeSplit &split,
                                                const StabilizationConfig &config);

/// Factor per tree row q: max|row tree[q] of original| / max|row q of t_rows|
/// (1 if either vanishes). Row scaling only; the solution is unchanged.
template <class Mat>
Vector matched_row_scales(const Mat &original, const Mat &t_rows, const TreeCotreeSplit &split) {
  Vector s = Vector::Ones(split.num_tree());
  for (Index q = 0; q < split.num_tree(); ++q) {
    double o = 0.0, c = 0.0;
    for (typename Mat::InnerIterator it(original, split.tree[static_cast<std::size_t>(q)]); it; ++it)
      o = std::max(o, std::abs(it.value()));
    for (typename Mat::InnerIterator it(t_rows, q); it; ++it)
      c = std::max(c, std::abs(it.value()));
    if (o > 0.0 && c > 0.0)
      s[q] = o / c;
  }
  return s;
}

/// Tree-row factors of the stabilized update matrix for the given step size.
Vector stabilized_row_scales(const AssembledOperators &ops, const TreeCotreeSplit &split,
                             const ConstraintMatrices &constraints, const NewmarkParams &params);

/// Update matrix with tree rows replaced by s_q (D_tilde + gamma/(dt beta) D_hat),
/// s = stabilized_row_scales. Rows stay in free-edge order; cotree rows are untouched.
SparseMatrix assemble_stabilized_update_matrix(const AssembledOperators &ops,
                                               const TreeCotreeSplit &split,
                                               const ConstraintMatrices &constraints,
                                               const NewmarkParams &params);

/// Cotree rows: the ordinary Newmark right-hand side. Tree rows (times s_q):
/// gamma/(beta dt) D_hat a_n + (gamma/beta - 1) D_hat v_n + (gamma/(2 beta) - 1) dt D_hat acc_n.
Vector assemble_stabilized_rhs(const AssembledOperators &ops, const NewmarkState &state,
                               const Vector &j_np1, const TreeCotreeSplit &split,
                               const ConstraintMatrices &constraints, const NewmarkParams &params,
                               const Vector &row_scales);

/// As above with the factors recomputed from params.
Vector assemble_stabilized_rhs(const AssembledOperators &ops, const NewmarkState &state,
                               const Vector &j_np1, const TreeCotreeSplit &split,
                               const ConstraintMatrices &constraints, const NewmarkParams &params);

/// ||D_tilde a + D_hat v||
double constraint_residual(const ConstraintMatrices &constraints, const NewmarkState &state);

} // namespace tdmaxwell
