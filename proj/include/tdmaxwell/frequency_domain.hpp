#pragma once

#include "tdmaxwell/assembly.hpp"
#include "tdmaxwell/stabilization.hpp"
#include "tdmaxwell/tree_cotree.hpp"

#include <vector>

namespace tdmaxwell {

/// Time-harmonic potentials at angular frequency omega; signal = Re(x e^{i omega t}).
struct PhasorSolution {
  double omega = 0.0;
  ComplexVector u;      ///< free nodes
  ComplexVector u_full; ///< all nodes (Dirichlet values included)
  ComplexVector a;      ///< free edges
};

/// (K_sigma + i omega K_eps) u = qdot - (K_sigma_fd + i omega K_eps_fd) g on the free nodes.
/// Throws SolverError when the system is singular (omega = 0 without a conducting path).
ComplexVector solve_eqs_freq(const AssembledOperators &ops, double omega,
                             const ComplexVector &dirichlet, const ComplexVector &qdot);

/// K_nu + i omega M_sigma - omega^2 M_eps
ComplexSparseMatrix assemble_mqs_freq_matrix(const AssembledOperators &ops, double omega);

/// Frequency analog of the stabilized update matrix: tree rows s_q (D_tilde + i omega D_hat),
/// s from matched_row_scales against the unstabilized frequency matrix.
ComplexSparseMatrix assemble_stabilized_freq_matrix(const AssembledOperators &ops,
                                                    const TreeCotreeSplit &split,
                                                    const ConstraintMatrices &constraints,
                                                    double omega);

/// j_s - (G_sigma + i omega G_eps) u_full
ComplexVector mqs_freq_rhs(const AssembledOperators &ops, const ComplexVector &u_full,
                           const ComplexVector &j_s, double omega);

/// Solves the stabilized system with zero right-hand side on the tree rows.
ComplexVector solve_mqs_freq_stabilized(const AssembledOperators &ops, const TreeCotreeSplit &split,
                                        const ConstraintMatrices &constraints, double omega,
                                        const ComplexVector &rhs);

/// Re(x e^{i omega t})
Vector reconstruct_time(const ComplexVector &phasor, double omega, double t);

/// Edge coefficients of E = -grad(phi) - dA/dt on all mesh edges.
Vector electric_field_edges(const SparseMatrix &g_top, const Vector &u_full,
                            const Vector &adot_all);
ComplexVector electric_field_edges(const SparseMatrix &g_top, const ComplexVector &u_full,
                                   const ComplexVector &a_all, double omega);

/// sqrt((e - r)^T M (e - r) / max_t r^T M r) per sample. Throws InputError when
/// the reference vanishes on the whole grid.
std::vector<double> relative_l2_error(const std::vector<Vector> &fields,
                                      const std::vector<Vector> &reference,
                                      const SparseMatrix &mass);

/// Same metric against a phasor reference sampled at `times`.
std::vector<double> relative_l2_error(const std::vector<Vector> &fields,
                                      const ComplexVector &reference, double omega,
                                      const std::vector<double> &times, const SparseMatrix &mass);

} // namespace tdmaxwell
