#pragma once

#include "tdmaxwell/assembly.hpp"
#include "tdmaxwell/boundary.hpp"
#include "tdmaxwell/conditioning.hpp"
#include "tdmaxwell/frequency_domain.hpp"
#include "tdmaxwell/mesh.hpp"
#include "tdmaxwell/scenario.hpp"
#include "tdmaxwell/stabilization.hpp"
#include "tdmaxwell/time_integration.hpp"
#include "tdmaxwell/tree_cotree.hpp"

#include <filesystem>
#include <optional>
#include <vector>

namespace tdmaxwell {

/// Mesh, DOFs, operators and stabilization data of a scenario.
struct Problem {
  Mesh mesh;
  DofMap dofs;
  CellFields fields;
  AssembledOperators ops;
  SparseMatrix g_top;      ///< all edges x all nodes
  SparseMatrix g_top_free; ///< free edges x all nodes
  SparseMatrix edge_mass;  ///< unit-weight edge mass matrix on all edges
  TreeCotreeSplit split;
  StabilizationConfig stab;
  ConstraintMatrices constraints;
};

/// Mesh or DOF problems are reported as ConfigError.
Problem build_problem(const Scenario &scenario);

/// Replaces the cell conductivities and rebuilds everything that depends on them.
void update_conductivity(Problem &problem, const std::vector<double> &sigma, double sigma_art);

/// Update matrix (original or stabilized) for a time step; dt = +inf gives the static limit.
SparseMatrix update_matrix(const Problem &problem, const StepperSpec &stepper, double dt,
                           bool stabilized);

struct InitialConditions {
  Vector u0;          ///< free nodes at t = 0
  Vector u_prev_full; ///< all nodes at t = -dt
  NewmarkState mqs;   ///< free edges at t = 0
};

struct StepRecord {
  double t = 0.0;
  double v1 = 0.0;
  double solver_residual = 0.0;
  double constraint_residual = 0.0; ///< ||D_tilde a + D_hat v||
  double constraint_scale = 0.0;    ///< max(1, ||D_tilde|| ||a||)
};

struct TransientResult {
  std::vector<double> times;
  std::vector<Vector> u_full;          ///< per time point, all nodes
  std::vector<NewmarkState> states;    ///< per time point, free edges
  std::vector<StepRecord> records;
  double max_constraint_ratio = 0.0;   ///< max residual / scale
};

struct RunOptions {
  std::optional<std::filesystem::path> out_dir;
};

/// EQS sweep over the whole interval, then the MQS sweep. Throws SolverError
/// naming the failing step.
TransientResult run_transient(const Problem &problem, const Scenario &scenario,
                              const std::optional<InitialConditions> &ic = std::nullopt,
                              const RunOptions &options = {});
TransientResult run_transient(const Scenario &scenario, const RunOptions &options = {});

/// Cell fields of a time point: B = curl A, D_e = eps grad(phi), J = sigma (-grad(phi) - dA/dt).
struct CellFieldSnapshot {
  std::vector<Point> b, d_e, e, j;
};
CellFieldSnapshot cell_field_snapshot(const Problem &problem, const Vector &u_full,
                                      const NewmarkState &state);

/// sum over conducting cells of vol |J|
double current_magnitude_integral(const Problem &problem, const Vector &u_full,
                                  const NewmarkState &state);

struct CondRow {
  double dt = 0.0; ///< +inf for the static limit
  ConditionReport original;
  ConditionReport stabilized;
};

std::vector<CondRow> run_cond_sweep(const Problem &problem, const Scenario &scenario,
                                    const std::vector<double> &dts, bool include_static,
                                    SweepMode mode = SweepMode::Auto);
std::vector<CondRow> run_cond_sweep(const Scenario &scenario, const RunOptions &options = {});
void write_cond_csv(const std::vector<CondRow> &rows, const std::filesystem::path &path);

/// Stabilized frequency-domain solution of the scenario's sinusoidal drive.
PhasorSolution solve_frequency_domain(const Problem &problem, const Scenario &scenario);

/// Initial conditions sampled from a phasor solution (u_{-1} at t = -dt).
InitialConditions initial_conditions_from_phasor(const Problem &problem,
                                                 const PhasorSolution &phasor, double dt);

struct FdValidationResult {
  std::vector<double> times;
  std::vector<double> errors;
  double max_error = 0.0;
  PhasorSolution phasor;
};

FdValidationResult run_fd_validation(const Problem &problem, const Scenario &scenario,
                                     const RunOptions &options = {});
FdValidationResult run_fd_validation(const Scenario &scenario, const RunOptions &options = {});

struct ThermalRecord {
  double t = 0.0;
  double v1 = 0.0;
  double temperature = 0.0;
  double power = 0.0;
  double sigma = 0.0;
  double current_integral = 0.0;
};

struct ThermalResult {
  std::vector<ThermalRecord> records;
  TransientResult transient;
  double heat_capacity = 0.0;
};

/// Staggered electro-thermal run: EQS step with sigma(T_n), MQS step, loss
/// power from the new potential, explicit temperature update, sigma refresh.
ThermalResult run_thermal(const Scenario &scenario, const RunOptions &options = {});

} // namespace tdmaxwell
