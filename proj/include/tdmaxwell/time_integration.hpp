#pragma once

#include "tdmaxwell/assembly.hpp"
#include "tdmaxwell/linear_solver.hpp"
#include "tdmaxwell/sparse.hpp"

#include <optional>

namespace tdmaxwell {

/// Newmark-beta parameters. `dt` may be +inf to assemble static-limit
/// matrices (all 1/dt coefficients vanish); stepping requires a finite dt.
struct NewmarkParams {
  double beta = 0.25;
  double gamma = 0.5;
  double dt = 1.0;

  /// Throws InputError unless beta > 0, 0 <= gamma <= 1, dt > 0.
  void validate() const;
  double sigma_coefficient() const { return gamma / (dt * beta); } ///< gamma/(dt beta)
  double eps_coefficient() const { return 1.0 / (dt * dt * beta); } ///< 1/(dt^2 beta)
};

/// Vector potential state (a, da/dt, d2a/dt2) on the free edges.
struct NewmarkState {
  Vector a, v, acc;
  static NewmarkState zero(Index n);
};

// ---- electroquasistatic step (trapezoidal rule) ---------------------------

/// Factored (2/dt K_eps + K_sigma) on the free nodes.
class EqsStepper {
public:
  /// Throws SolverError when the system is numerically singular.
  EqsStepper(const AssembledOperators &ops, double dt);

  /// u_{n+1} on the free nodes. g_* are Dirichlet values at t_n / t_{n+1}.
  Vector step(const Vector &u_n, const Vector &g_n, const Vector &g_np1, const Vector &qdot_n,
              const Vector &qdot_np1) const;

  double dt() const { return dt_; }

private:
  const AssembledOperators *ops_;
  double dt_;
  SparseMatrix lhs_;
  SparseMatrix rhs_ff_;
  std::optional<LuSolver<double>> lu_;
};

/// One trapezoidal step without reusing a factorization.
Vector eqs_step(const AssembledOperators &ops, double dt, const Vector &u_n, const Vector &g_n,
                const Vector &g_np1, const Vector &qdot_n, const Vector &qdot_np1);

// ---- magnetoquasistatic correction step (Newmark-beta) --------------------

/// K_nu + gamma/(dt beta) M_sigma + 1/(dt^2 beta) M_eps
SparseMatrix assemble_update_matrix(const AssembledOperators &ops, const NewmarkParams &params);

/// j_s - G_eps (u_{n+1} - u_{n-1}) / (2 dt) - G_sigma u_{n+1}; nodal vectors are full (lifted).
Vector compute_j_np1(const AssembledOperators &ops, const Vector &u_np1_full,
                     const Vector &u_nm1_full, const Vector &j_s_np1, double dt);

/// Newmark right-hand side f for the unmodified update matrix.
Vector newmark_rhs(const AssembledOperators &ops, const NewmarkState &state, const Vector &j_np1,
                   const NewmarkParams &params);

/// Acceleration and velocity at n+1 from the new displacement.
NewmarkState newmark_kinematics(const NewmarkState &state, const Vector &a_np1,
                                const NewmarkParams &params);

/// Solves M_eps acc_0 = j_0 - K_nu a_0 - M_sigma v_0.
Vector initial_acceleration(const AssembledOperators &ops, const Vector &a0, const Vector &v0,
                            const Vector &j0);

/// A factored update matrix (original or stabilized).
class NewmarkSystem {
public:
  /// Throws SolverError with a conditioning report if the matrix is singular.
  NewmarkSystem(SparseMatrix matrix, const NewmarkParams &params);

  NewmarkState step(const NewmarkState &state, const Vector &rhs) const;

  const SparseMatrix &matrix() const { return matrix_; }
  const NewmarkParams &params() const { return params_; }
  double rcond() const { return rcond_; }
  double last_residual() const { return last_residual_; }

private:
  SparseMatrix matrix_;
  NewmarkParams params_;
  std::optional<LuSolver<double>> lu_;
  double rcond_ = 0.0;
  mutable double last_residual_ = 0.0;
};

} // namespace tdmaxwell
