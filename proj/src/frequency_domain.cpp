#include "tdmaxwell/frequency_domain.hpp"

#include "tdmaxwell/errors.hpp"
#include "tdmaxwell/linear_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tdmaxwell {

namespace {

constexpr Complex kI{0.0, 1.0};

ComplexSparseMatrix combine(const SparseMatrix &re, const SparseMatrix &im, double im_scale) {
  ComplexSparseMatrix m = to_complex(re);
  if (im_scale != 0.0)
    m += Complex(0.0, im_scale) * to_complex(im);
  m.prune(Complex(0.0, 0.0));
  m.makeCompressed();
  return m;
}

ComplexVector checked_solve(const ComplexSparseMatrix &a, const ComplexVector &b,
                            const char *what) {
  const LuSolver<Complex> lu(a);
  const double rc = lu.rcond_estimate();
  if (!(rc >= kSingularRcond)) {
    std::ostringstream msg;
    msg << what << " is numerically singular: estimated reciprocal condition number " << rc;
    throw SolverError(msg.str());
  }
  ComplexVector x = lu.solve(b);
  const double res = relative_residual(a, x, b);
  if (!x.allFinite() || res > 1e-10) {
    std::ostringstream msg;
    msg << what << ": relative residual " << res << " exceeds 1e-10";
    throw SolverError(msg.str());
  }
  return x;
}

} // namespace

ComplexVector solve_eqs_freq(const AssembledOperators &ops, double omega,
                             const ComplexVector &dirichlet, const ComplexVector &qdot) {
  if (dirichlet.size() != ops.k_eps_fd.cols() || qdot.size() != ops.k_eps_ff.rows())
    throw InputError("solve_eqs_freq: dimension mismatch");
  const ComplexSparseMatrix a = combine(ops.k_sigma_ff, ops.k_eps_ff, omega);
  ComplexVector rhs = qdot;
  if (dirichlet.size() > 0)
    rhs -= combine(ops.k_sigma_fd, ops.k_eps_fd, omega) * dirichlet;
  if (rhs.squaredNorm() == 0.0)
    return ComplexVector::Zero(rhs.size());
  return checked_solve(a, rhs, "frequency-domain EQS matrix");
}

ComplexSparseMatrix assemble_mqs_freq_matrix(const AssembledOperators &ops, double omega) {
  SparseMatrix re = ops.k_nu;
  if (omega != 0.0)
    re -= (omega * omega) * ops.m_eps;
  return combine(re, ops.m_sigma, omega);
}

ComplexSparseMatrix assemble_stabilized_freq_matrix(const AssembledOperators &ops,
                                                    const TreeCotreeSplit &split,
                                                    const ConstraintMatrices &constraints,
                                                    double omega) {
  const ComplexSparseMatrix original = assemble_mqs_freq_matrix(ops, omega);
  ComplexSparseMatrix t_rows = combine(constraints.d_tilde, constraints.d_hat, omega);
  const Vector s = matched_row_scales(original, t_rows, split);
  t_rows = s.cast<Complex>().asDiagonal() * t_rows;
  const Index n = static_cast<Index>(original.rows());
  if (split.num_edges() != n || t_rows.rows() != split.num_tree() || t_rows.cols() != n)
    throw InputError("stabilized frequency matrix: dimension mismatch");
  std::vector<Eigen::Triplet<Complex, Index>> t;
  t.reserve(static_cast<std::size_t>(original.nonZeros() + t_rows.nonZeros()));
  for (Index r = 0; r < n; ++r) {
    const auto ur = static_cast<std::size_t>(r);
    if (split.is_tree[ur]) {
      for (ComplexSparseMatrix::InnerIterator it(t_rows, split.position[ur]); it; ++it)
        t.emplace_back(r, it.col(), it.value());
    } else {
      for (ComplexSparseMatrix::InnerIterator it(original, r); it; ++it)
        t.emplace_back(r, it.col(), it.value());
    }
  }
  ComplexSparseMatrix m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  m.makeCompressed();
  return m;
}

ComplexVector mqs_freq_rhs(const AssembledOperators &ops, const ComplexVector &u_full,
                           const ComplexVector &j_s, double omega) {
  if (u_full.size() != ops.g_eps.cols() || j_s.size() != ops.g_eps.rows())
    throw InputError("mqs_freq_rhs: dimension mismatch");
  return j_s - combine(ops.g_sigma, ops.g_eps, omega) * u_full;
}

ComplexVector solve_mqs_freq_stabilized(const AssembledOperators &ops, const TreeCotreeSplit &split,
                                        const ConstraintMatrices &constraints, double omega,
                                        const ComplexVector &rhs) {
  const ComplexSparseMatrix a = assemble_stabilized_freq_matrix(ops, split, constraints, omega);
  if (rhs.size() != a.rows())
    throw InputError("solve_mqs_freq_stabilized: rhs length mismatch");
  ComplexVector b = rhs;
  for (const Index e : split.tree)
    b[e] = 0.0;
  if (b.squaredNorm() == 0.0)
    return ComplexVector::Zero(b.size());
  return checked_solve(a, b, "stabilized frequency-domain MQS matrix");
}

Vector reconstruct_time(const ComplexVector &phasor, double omega, double t) {
  const Complex rot = std::exp(kI * (omega * t));
  return (phasor * rot).real();
}

Vector electric_field_edges(const SparseMatrix &g_top, const Vector &u_full,
                            const Vector &adot_all) {
  if (g_top.cols() != u_full.size() || g_top.rows() != adot_all.size())
    throw InputError("electric_field_edges: dimension mismatch");
  return -(g_top * u_full) - adot_all;
}

ComplexVector electric_field_edges(const SparseMatrix &g_top, const ComplexVector &u_full,
                                   const ComplexVector &a_all, double omega) {
  if (g_top.cols() != u_full.size() || g_top.rows() != a_all.size())
    throw InputError("electric_field_edges: dimension mismatch");
  return -(to_complex(g_top) * u_full) - (kI * omega) * a_all;
}

std::vector<double> relative_l2_error(const std::vector<Vector> &fields,
                                      const std::vector<Vector> &reference,
                                      const SparseMatrix &mass) {
  if (fields.size() != reference.size())
    throw InputError("relative_l2_error: series lengths differ");
  double ref_max = 0.0;
  for (const auto &r : reference) {
    if (r.size() != mass.rows())
      throw InputError("relative_l2_error: field length does not match the mass matrix");
    ref_max = std::max(ref_max, r.dot(mass * r));
  }
  if (!(ref_max > 0.0))
    throw InputError("relative_l2_error: reference field vanishes on the whole grid");
  std::vector<double> err;
  err.reserve(fields.size());
  for (std::size_t k = 0; k < fields.size(); ++k) {
    if (fields[k].size() != mass.rows())
      throw InputError("relative_l2_error: field length does not match the mass matrix");
    const Vector d = fields[k] - reference[k];
    err.push_back(std::sqrt(std::max(0.0, d.dot(mass * d)) / ref_max));
  }
  return err;
}

std::vector<double> relative_l2_error(const std::vector<Vector> &fields,
                                      const ComplexVector &reference, double omega,
                                      const std::vector<double> &times, const SparseMatrix &mass) {
  if (fields.size() != times.size())
    throw InputError("relative_l2_error: one time per field sample required");
  std::vector<Vector> ref;
  ref.reserve(times.size());
  for (const double t : times)
    ref.push_back(reconstruct_time(reference, omega, t));
  return relative_l2_error(fields, ref, mass);
}

} // namespace tdmaxwell
