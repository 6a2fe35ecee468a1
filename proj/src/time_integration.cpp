#include "tdmaxwell/time_integration.hpp"

#include "tdmaxwell/errors.hpp"

#include <cmath>
#include <sstream>

namespace tdmaxwell {

void NewmarkParams::validate() const {
  if (!(beta > 0.0))
    throw InputError("Newmark beta must be > 0");
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw InputError("Newmark gamma must lie in [0, 1]");
  if (!(dt > 0.0))
    throw InputError("time step must be > 0");
}

NewmarkState NewmarkState::zero(Index n) {
  return {Vector::Zero(n), Vector::Zero(n), Vector::Zero(n)};
}

namespace {

void throw_if_singular(const LuSolver<double> &lu, const char *what) {
  const double rc = lu.rcond_estimate();
  if (!(rc >= kSingularRcond)) {
    std::ostringstream msg;
    msg << what << " is numerically singular: estimated reciprocal condition number " << rc
        << " (threshold " << kSingularRcond << ", n = " << lu.size() << ")";
    throw SolverError(msg.str());
  }
}

void check_residual(const SparseMatrix &a, const Vector &x, const Vector &b, const char *what) {
  const double res = relative_residual(a, x, b);
  if (!x.allFinite() || res > 1e-10) {
    std::ostringstream msg;
    msg << what << ": relative residual " << res << " exceeds 1e-10";
    throw SolverError(msg.str());
  }
}

} // namespace

EqsStepper::EqsStepper(const AssembledOperators &ops, double dt) : ops_(&ops), dt_(dt) {
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw InputError("EQS time step must be finite and > 0");
  lhs_ = (2.0 / dt) * ops.k_eps_ff + ops.k_sigma_ff;
  rhs_ff_ = (2.0 / dt) * ops.k_eps_ff - ops.k_sigma_ff;
  lu_.emplace(lhs_);
  throw_if_singular(*lu_, "EQS system matrix (2/dt K_eps + K_sigma)");
}

Vector EqsStepper::step(const Vector &u_n, const Vector &g_n, const Vector &g_np1,
                        const Vector &qdot_n, const Vector &qdot_np1) const {
  const auto &ops = *ops_;
  if (u_n.size() != lhs_.rows() || qdot_n.size() != lhs_.rows() || qdot_np1.size() != lhs_.rows())
    throw InputError("EQS step: free-node vector length mismatch");
  if (g_n.size() != ops.k_eps_fd.cols() || g_np1.size() != ops.k_eps_fd.cols())
    throw InputError("EQS step: Dirichlet vector length mismatch");
  Vector rhs = rhs_ff_ * u_n + qdot_np1 + qdot_n;
  if (g_n.size() > 0) {
    rhs += (2.0 / dt_) * (ops.k_eps_fd * (g_n - g_np1)) - ops.k_sigma_fd * (g_n + g_np1);
  }
  Vector u = lu_->solve(rhs);
  check_residual(lhs_, u, rhs, "EQS step");
  return u;
}

Vector eqs_step(const AssembledOperators &ops, double dt, const Vector &u_n, const Vector &g_n,
                const Vector &g_np1, const Vector &qdot_n, const Vector &qdot_np1) {
  return EqsStepper(ops, dt).step(u_n, g_n, g_np1, qdot_n, qdot_np1);
}

SparseMatrix assemble_update_matrix(const AssembledOperators &ops, const NewmarkParams &params) {
  if (!(params.beta > 0.0) || !(params.dt > 0.0))
    throw InputError("update matrix needs beta > 0 and dt > 0");
  SparseMatrix m = ops.k_nu;
  const double cs = params.sigma_coefficient();
  const double ce = params.eps_coefficient();
  if (cs != 0.0)
    m += cs * ops.m_sigma;
  if (ce != 0.0)
    m += ce * ops.m_eps;
  finalize(m);
  return m;
}

Vector compute_j_np1(const AssembledOperators &ops, const Vector &u_np1_full,
                     const Vector &u_nm1_full, const Vector &j_s_np1, double dt) {
  if (u_np1_full.size() != ops.g_eps.cols() || u_nm1_full.size() != ops.g_eps.cols() ||
      j_s_np1.size() != ops.g_eps.rows())
    throw InputError("compute_j_np1: dimension mismatch");
  return j_s_np1 - ops.g_eps * ((u_np1_full - u_nm1_full) / (2.0 * dt)) -
         ops.g_sigma * u_np1_full;
}

Vector newmark_rhs(const AssembledOperators &ops, const NewmarkState &s, const Vector &j_np1,
                   const NewmarkParams &p) {
  const double b = p.beta, g = p.gamma, dt = p.dt;
  Vector f = j_np1;
  f += ops.m_eps * (s.a / (dt * dt * b) + s.v / (dt * b) + ((1.0 - 2.0 * b) / (2.0 * b)) * s.acc);
  f += ops.m_sigma * ((g / (b * dt)) * s.a + (g / b - 1.0) * s.v +
                      ((g / (2.0 * b) - 1.0) * dt) * s.acc);
  return f;
}

NewmarkState newmark_kinematics(const NewmarkState &s, const Vector &a_np1,
                                const NewmarkParams &p) {
  const double b = p.beta, g = p.gamma, dt = p.dt;
  NewmarkState out;
  out.a = a_np1;
  out.acc = (a_np1 - s.a - dt * s.v) / (dt * dt * b) - ((1.0 - 2.0 * b) / (2.0 * b)) * s.acc;
  out.v = s.v + (1.0 - g) * dt * s.acc + g * dt * out.acc;
  return out;
}

Vector initial_acceleration(const AssembledOperators &ops, const Vector &a0, const Vector &v0,
                            const Vector &j0) {
  const Vector rhs = j0 - ops.k_nu * a0 - ops.m_sigma * v0;
  if (rhs.squaredNorm() == 0.0)
    return Vector::Zero(rhs.size());
  return factor_solve(ops.m_eps, rhs);
}

NewmarkSystem::NewmarkSystem(SparseMatrix matrix, const NewmarkParams &params)
    : matrix_(std::move(matrix)), params_(params) {
  params_.validate();
  lu_.emplace(matrix_);
  rcond_ = lu_->rcond_estimate();
  if (!(rcond_ >= kSingularRcond)) {
    std::ostringstream msg;
    msg << "Newmark update matrix is numerically singular at dt = " << params_.dt
        << " s: estimated reciprocal condition number " << rcond_ << " (threshold "
        << kSingularRcond << ", n = " << matrix_.rows() << ")";
    throw SolverError(msg.str());
  }
}

NewmarkState NewmarkSystem::step(const NewmarkState &state, const Vector &rhs) const {
  if (rhs.size() != matrix_.rows() || state.a.size() != matrix_.rows())
    throw InputError("Newmark step: vector length mismatch");
  Vector a = lu_->solve(rhs);
  last_residual_ = relative_residual(matrix_, a, rhs);
  check_residual(matrix_, a, rhs, "Newmark step");
  return newmark_kinematics(state, a, params_);
}

} // namespace tdmaxwell
