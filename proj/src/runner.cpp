#include "tdmaxwell/runner.hpp"

#include "tdmaxwell/errors.hpp"
#include "tdmaxwell/output.hpp"
#include "tdmaxwell/sources.hpp"
#include "tdmaxwell/thermal.hpp"
#include "tdmaxwell/whitney.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>

namespace tdmaxwell {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr Index kDenseAutoLimit = 2000;

std::vector<Index> iota(Index n) {
  std::vector<Index> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  return v;
}

NewmarkParams newmark_params(const StepperSpec &s, double dt) {
  NewmarkParams p;
  p.beta = s.beta;
  p.gamma = s.gamma;
  p.dt = dt;
  return p;
}

std::string step_name(int n) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "step_%04d.vtk", n);
  return buf;
}

// One EQS stepper and one factored update matrix for a fixed dt and sigma.
class Engine {
public:
  Engine(const Problem &p, const Scenario &sc)
      : p_(&p), sc_(&sc), params_(newmark_params(sc.stepper, sc.time.dt)) {
    params_.validate();
    const SparseMatrix m = update_matrix(p, sc.stepper, sc.time.dt, sc.stepper.stabilized);
    mqs_.emplace(m, params_);
    eqs_.emplace(p.ops, sc.time.dt);
    if (sc.stepper.stabilized)
      row_scales_ = stabilized_row_scales(p.ops, p.split, p.constraints, params_);
  }

  Vector eqs_step(const Vector &u_n, const SourceVectors &s_n, const SourceVectors &s_np1) const {
    return eqs_->step(u_n, s_n.dirichlet, s_np1.dirichlet, s_n.qdot, s_np1.qdot);
  }

  NewmarkState mqs_step(const NewmarkState &state, const Vector &u_np1_full,
                        const Vector &u_nm1_full, const Vector &j_s_np1) const {
    const Vector j = compute_j_np1(p_->ops, u_np1_full, u_nm1_full, j_s_np1, params_.dt);
    const Vector rhs = sc_->stepper.stabilized
                           ? assemble_stabilized_rhs(p_->ops, state, j, p_->split,
                                                     p_->constraints, params_, row_scales_)
                           : newmark_rhs(p_->ops, state, j, params_);
    return mqs_->step(state, rhs);
  }

  double last_residual() const { return mqs_->last_residual(); }

private:
  const Problem *p_;
  const Scenario *sc_;
  NewmarkParams params_;
  Vector row_scales_;
  std::optional<NewmarkSystem> mqs_;
  std::optional<EqsStepper> eqs_;
};

StepRecord make_record(const Problem &p, double t, double v1, const NewmarkState &s,
                       double solver_residual, double d_tilde_norm) {
  StepRecord r;
  r.t = t;
  r.v1 = v1;
  r.solver_residual = solver_residual;
  r.constraint_residual = constraint_residual(p.constraints, s);
  r.constraint_scale = std::max(1.0, d_tilde_norm * s.a.norm());
  return r;
}

NewmarkState zero_initial_state(const Problem &p, const Vector &u0_full, const Vector &j_s0) {
  NewmarkState s = NewmarkState::zero(p.dofs.num_free_edges());
  const Vector j0 = j_s0 - p.ops.g_sigma * u0_full;
  s.acc = initial_acceleration(p.ops, s.a, s.v, j0);
  return s;
}

Vector full_edge_vector(const Problem &p, const Vector &free) {
  return full_edges(p.dofs, p.mesh.num_edges(), free);
}

void write_snapshot(const Problem &p, const Vector &u_full, const NewmarkState &s,
                    const std::filesystem::path &path) {
  const auto snap = cell_field_snapshot(p, u_full, s);
  VtkFields f;
  f.point_scalar.assign(u_full.data(), u_full.data() + u_full.size());
  f.cell_vectors = {{"B", snap.b}, {"D_e", snap.d_e}, {"E", snap.e}, {"J", snap.j}};
  for (const int r : p.mesh.cell_region)
    f.cell_region.push_back(r);
  write_vtk(p.mesh, f, path);
}

void write_transient_outputs(const Problem &p, const Scenario &sc, const TransientResult &res,
                             const std::filesystem::path &dir) {
  std::filesystem::create_directories(dir);
  {
    CsvWriter w(dir / "series.csv", {"t", "v1", "solver_residual", "constraint_residual",
                                     "constraint_bound", "a_norm", "adot_norm", "phi_max"});
    for (std::size_t n = 0; n < res.records.size(); ++n) {
      const auto &r = res.records[n];
      w.row({r.t, r.v1, r.solver_residual, r.constraint_residual, 1e-8 * r.constraint_scale,
             res.states[n].a.norm(), res.states[n].v.norm(),
             res.u_full[n].size() ? res.u_full[n].cwiseAbs().maxCoeff() : 0.0});
    }
  }
  for (const int n : sc.output.vtk_steps)
    if (n >= 0 && static_cast<std::size_t>(n) < res.u_full.size())
      write_snapshot(p, res.u_full[static_cast<std::size_t>(n)],
                     res.states[static_cast<std::size_t>(n)], dir / "vtk" / step_name(n));
  double max_res = 0.0;
  for (const auto &r : res.records)
    max_res = std::max(max_res, r.solver_residual);
  nlohmann::json summary = {
      {"scenario", sc.name},
      {"stabilized", sc.stepper.stabilized},
      {"dt", sc.time.dt},
      {"steps", sc.time.steps},
      {"nodes", p.mesh.num_nodes()},
      {"cells", p.mesh.num_cells()},
      {"free_nodes", p.dofs.num_free_nodes()},
      {"free_edges", p.dofs.num_free_edges()},
      {"tree_edges", p.split.num_tree()},
      {"lambda", p.stab.lambda},
      {"max_constraint_ratio", res.max_constraint_ratio},
      {"max_solver_residual", max_res},
  };
  std::ofstream(dir / "summary.json") << summary.dump(2) << '\n';
}

ConditionReport sweep_condition(const SparseMatrix &m, SweepMode mode) {
  ConditionOptions opt;
  const bool dense = mode == SweepMode::Dense ||
                     (mode == SweepMode::Auto && m.rows() <= kDenseAutoLimit);
  opt.mode = dense ? ConditionMode::DenseSvd : ConditionMode::IterativeEstimate;
  return condition_number(m, opt);
}

void require_sinusoidal(const Scenario &sc) {
  for (const auto &c : sc.source.currents)
    if (c.profile != TimeProfile::Sine)
      throw ConfigError("frequency-domain reference needs sinusoidal current sources");
  for (const auto &q : sc.source.charges)
    if (q.profile != TimeProfile::Sine)
      throw ConfigError("frequency-domain reference needs sinusoidal charge sources");
  if (!(sc.source.drive.frequency > 0.0))
    throw ConfigError("frequency-domain reference needs source.frequency > 0");
}

} // namespace

Problem build_problem(const Scenario &sc) {
  Problem p;
  try {
    p.mesh = build_lattice_mesh(sc.planes, sc.regions);
    p.dofs = classify_dofs(p.mesh, sc.boundary);
  } catch (const InputError &e) {
    throw ConfigError(e.what());
  }
  p.fields = cell_fields(p.mesh, sc.materials);
  p.ops = build_operators(p.mesh, p.dofs, p.fields);
  p.g_top = topological_gradient(p.mesh);
  p.g_top_free = select(p.g_top, p.dofs.free_edges, iota(p.mesh.num_nodes()));
  p.edge_mass = assemble_mass_curl(p.mesh, std::vector<double>(
                                               static_cast<std::size_t>(p.mesh.num_cells()), 1.0));
  const auto roots = default_roots(p.mesh, p.dofs, p.fields.sigma);
  try {
    p.split = build_spanning_forest(p.mesh, p.dofs, roots);
    p.stab = make_stabilization_config(p.mesh, p.fields, sc.stepper.sigma_art);
  } catch (const InputError &e) {
    throw ConfigError(e.what());
  }
  p.constraints = assemble_constraint_matrices(p.ops, p.split, p.stab);
  return p;
}

void update_conductivity(Problem &p, const std::vector<double> &sigma, double sigma_art) {
  if (sigma.size() != static_cast<std::size_t>(p.mesh.num_cells()))
    throw InputError("update_conductivity: one value per cell required");
  p.fields.sigma = sigma;
  refresh_conductivity(p.ops, p.mesh, p.dofs, sigma);
  p.stab = make_stabilization_config(p.mesh, p.fields, sigma_art);
  p.constraints = assemble_constraint_matrices(p.ops, p.split, p.stab);
}

SparseMatrix update_matrix(const Problem &p, const StepperSpec &stepper, double dt,
                           bool stabilized) {
  const NewmarkParams params = newmark_params(stepper, dt);
  if (stabilized)
    return assemble_stabilized_update_matrix(p.ops, p.split, p.constraints, params);
  return assemble_update_matrix(p.ops, params);
}

TransientResult run_transient(const Problem &p, const Scenario &sc,
                              const std::optional<InitialConditions> &ic,
                              const RunOptions &options) {
  const int n_steps = sc.time.steps;
  const double dt = sc.time.dt;
  if (n_steps < 1 || !(dt > 0.0))
    throw ConfigError("transient run needs time.dt > 0 and time.steps >= 1");
  const Engine engine = [&] {
    try {
      return Engine(p, sc);
    } catch (const SolverError &e) {
      throw SolverError(std::string("system setup failed before step 1 (last good step 0): ") +
                        e.what());
    }
  }();

  std::vector<SourceVectors> src;
  TransientResult res;
  for (int n = 0; n <= n_steps; ++n) {
    res.times.push_back(n * dt);
    src.push_back(assemble_sources(p.mesh, p.dofs, sc.source, n * dt));
  }

  Vector u = ic ? ic->u0 : Vector::Zero(p.dofs.num_free_nodes());
  res.u_full.push_back(full_nodal(p.dofs, u, src[0].dirichlet));
  for (int n = 0; n < n_steps; ++n) {
    try {
      u = engine.eqs_step(u, src[static_cast<std::size_t>(n)], src[static_cast<std::size_t>(n + 1)]);
    } catch (const SolverError &e) {
      throw SolverError("EQS step " + std::to_string(n + 1) + " failed (last good step " +
                        std::to_string(n) + "): " + e.what());
    }
    res.u_full.push_back(full_nodal(p.dofs, u, src[static_cast<std::size_t>(n + 1)].dirichlet));
  }

  const double d_norm = frobenius(p.constraints.d_tilde);
  const Vector u_prev0 = ic ? ic->u_prev_full : res.u_full[0];
  NewmarkState state = ic ? ic->mqs : zero_initial_state(p, res.u_full[0], src[0].j_s);
  res.states.push_back(state);
  res.records.push_back(make_record(p, 0.0, sc.source.drive.value(0.0), state, 0.0, d_norm));
  for (int n = 0; n < n_steps; ++n) {
    const auto un = static_cast<std::size_t>(n);
    const Vector &u_nm1 = n == 0 ? u_prev0 : res.u_full[un - 1];
    try {
      state = engine.mqs_step(state, res.u_full[un + 1], u_nm1, src[un + 1].j_s);
    } catch (const SolverError &e) {
      throw SolverError("MQS step " + std::to_string(n + 1) + " failed (last good step " +
                        std::to_string(n) + "): " + e.what());
    }
    res.states.push_back(state);
    res.records.push_back(make_record(p, res.times[un + 1],
                                      sc.source.drive.value(res.times[un + 1]), state,
                                      engine.last_residual(), d_norm));
  }
  for (const auto &r : res.records)
    res.max_constraint_ratio =
        std::max(res.max_constraint_ratio, r.constraint_residual / r.constraint_scale);
  if (options.out_dir)
    write_transient_outputs(p, sc, res, *options.out_dir);
  return res;
}

TransientResult run_transient(const Scenario &sc, const RunOptions &options) {
  const Problem p = build_problem(sc);
  return run_transient(p, sc, std::nullopt, options);
}

CellFieldSnapshot cell_field_snapshot(const Problem &p, const Vector &u_full,
                                      const NewmarkState &s) {
  const Vector a = full_edge_vector(p, s.a);
  const Vector v = full_edge_vector(p, s.v);
  CellFieldSnapshot out;
  for (Index c = 0; c < p.mesh.num_cells(); ++c) {
    const auto uc = static_cast<std::size_t>(c);
    const Point grad_phi = cell_gradient(p.mesh, c, u_full);
    const Point e = -grad_phi - cell_centroid_value(p.mesh, c, v);
    out.b.push_back(cell_curl(p.mesh, c, a));
    out.d_e.push_back(p.fields.eps[uc] * grad_phi);
    out.e.push_back(e);
    out.j.push_back(p.fields.sigma[uc] * e);
  }
  return out;
}

double current_magnitude_integral(const Problem &p, const Vector &u_full,
                                  const NewmarkState &s) {
  const Vector v = full_edge_vector(p, s.v);
  double total = 0.0;
  for (Index c = 0; c < p.mesh.num_cells(); ++c) {
    const double sigma = p.fields.sigma[static_cast<std::size_t>(c)];
    if (sigma <= 0.0)
      continue;
    const Point e = -cell_gradient(p.mesh, c, u_full) - cell_centroid_value(p.mesh, c, v);
    total += p.mesh.cell_volume(c) * sigma * e.norm();
  }
  return total;
}

std::vector<CondRow> run_cond_sweep(const Problem &p, const Scenario &sc,
                                    const std::vector<double> &dts, bool include_static,
                                    SweepMode mode) {
  std::vector<double> all = dts;
  if (include_static && !dts.empty())
    all.push_back(std::numeric_limits<double>::infinity());
  std::vector<CondRow> rows;
  for (const double dt : all) {
    CondRow r;
    r.dt = dt;
    r.original = sweep_condition(update_matrix(p, sc.stepper, dt, false), mode);
    r.stabilized = sweep_condition(update_matrix(p, sc.stepper, dt, true), mode);
    rows.push_back(r);
  }
  return rows;
}

std::vector<CondRow> run_cond_sweep(const Scenario &sc, const RunOptions &options) {
  const Problem p = build_problem(sc);
  const auto &cs = sc.output.cond_sweep;
  auto rows = run_cond_sweep(p, sc, cs.dts, cs.include_static, cs.mode);
  if (options.out_dir) {
    std::filesystem::create_directories(*options.out_dir);
    write_cond_csv(rows, *options.out_dir / "cond_sweep.csv");
  }
  return rows;
}

void write_cond_csv(const std::vector<CondRow> &rows, const std::filesystem::path &path) {
  CsvWriter w(path, {"dt", "cond_original", "cond_stabilized", "min_singular_value_original"});
  for (const auto &r : rows)
    w.row({r.dt, r.original.cond, r.stabilized.cond, r.original.sigma_min});
}

PhasorSolution solve_frequency_domain(const Problem &p, const Scenario &sc) {
  require_sinusoidal(sc);
  PhasorSolution out;
  out.omega = sc.source.drive.angular_frequency();
  // V sin(wt) = Re(-i V e^{iwt}); the sources at a quarter period carry the amplitudes.
  const auto peak = assemble_sources(p.mesh, p.dofs, sc.source, 0.25 / sc.source.drive.frequency);
  const ComplexVector g = -kI * peak.dirichlet.cast<Complex>();
  const ComplexVector q = -kI * peak.qdot.cast<Complex>();
  const ComplexVector js = -kI * peak.j_s.cast<Complex>();
  out.u = solve_eqs_freq(p.ops, out.omega, g, q);
  out.u_full = ComplexVector::Zero(p.mesh.num_nodes());
  for (std::size_t i = 0; i < p.dofs.free_nodes.size(); ++i)
    out.u_full[p.dofs.free_nodes[i]] = out.u[static_cast<Eigen::Index>(i)];
  for (std::size_t i = 0; i < p.dofs.dirichlet_nodes.size(); ++i)
    out.u_full[p.dofs.dirichlet_nodes[i]] = g[static_cast<Eigen::Index>(i)];
  const ComplexVector rhs = mqs_freq_rhs(p.ops, out.u_full, js, out.omega);
  out.a = solve_mqs_freq_stabilized(p.ops, p.split, p.constraints, out.omega, rhs);
  return out;
}

InitialConditions initial_conditions_from_phasor(const Problem &p, const PhasorSolution &ph,
                                                 double dt) {
  (void)p;
  InitialConditions ic;
  const double w = ph.omega;
  ic.u0 = ph.u.real();
  ic.u_prev_full = reconstruct_time(ph.u_full, w, -dt);
  ic.mqs.a = ph.a.real();
  ic.mqs.v = (kI * w * ph.a).real();
  ic.mqs.acc = (-(w * w) * ph.a).real();
  return ic;
}

FdValidationResult run_fd_validation(const Problem &p, const Scenario &sc,
                                     const RunOptions &options) {
  const auto &fv = sc.output.fd_validation;
  if (fv.steps_per_period < 1 || fv.periods < 1)
    throw ConfigError("fd_validation needs steps_per_period >= 1 and periods >= 1");
  require_sinusoidal(sc);
  Scenario td = sc;
  td.time.dt = 1.0 / (sc.source.drive.frequency * fv.steps_per_period);
  td.time.steps = fv.steps_per_period * fv.periods;

  FdValidationResult out;
  out.phasor = solve_frequency_domain(p, sc);
  const auto ic = initial_conditions_from_phasor(p, out.phasor, td.time.dt);
  const TransientResult res = run_transient(p, td, ic);

  const ComplexVector a_all = [&] {
    ComplexVector a = ComplexVector::Zero(p.mesh.num_edges());
    for (std::size_t i = 0; i < p.dofs.free_edges.size(); ++i)
      a[p.dofs.free_edges[i]] = out.phasor.a[static_cast<Eigen::Index>(i)];
    return a;
  }();
  const ComplexVector e_ref = electric_field_edges(p.g_top, out.phasor.u_full, a_all,
                                                   out.phasor.omega);
  std::vector<Vector> e_td;
  for (std::size_t n = 0; n < res.times.size(); ++n)
    e_td.push_back(electric_field_edges(p.g_top, res.u_full[n], full_edge_vector(p, res.states[n].v)));
  out.times = res.times;
  out.errors = relative_l2_error(e_td, e_ref, out.phasor.omega, res.times, p.edge_mass);
  for (const double e : out.errors)
    out.max_error = std::max(out.max_error, e);
  if (options.out_dir) {
    std::filesystem::create_directories(*options.out_dir);
    CsvWriter w(*options.out_dir / "fd_error.csv", {"t", "error"});
    for (std::size_t n = 0; n < out.times.size(); ++n)
      w.row({out.times[n], out.errors[n]});
  }
  return out;
}

FdValidationResult run_fd_validation(const Scenario &sc, const RunOptions &options) {
  const Problem p = build_problem(sc);
  return run_fd_validation(p, sc, options);
}

ThermalResult run_thermal(const Scenario &sc, const RunOptions &options) {
  if (!sc.thermal.enabled)
    throw ConfigError("thermal coupling is disabled in this scenario (thermal.enabled)");
  const auto mat = sc.materials.find(sc.thermal.region);
  if (mat == sc.materials.end() || !mat->second.thermal)
    throw ConfigError("thermal.region has no thermal material law");
  const int n_steps = sc.time.steps;
  const double dt = sc.time.dt;
  if (n_steps < 1 || !(dt > 0.0))
    throw ConfigError("thermal run needs time.dt > 0 and time.steps >= 1");

  Problem p = build_problem(sc);
  const CellFields base = p.fields;
  ThermalLump lump;
  lump.temperature = sc.thermal.initial_temperature;
  lump.law = *mat->second.thermal;
  lump.region = sc.thermal.region;
  lump.heat_capacity = sc.thermal.heat_capacity;
  if (lump.heat_capacity == 0.0) {
    double volume = 0.0;
    for (Index c = 0; c < p.mesh.num_cells(); ++c)
      if (p.mesh.cell_region[static_cast<std::size_t>(c)] == lump.region)
        volume += p.mesh.cell_volume(c);
    lump.heat_capacity = sc.thermal.volumetric_heat_capacity * volume;
  }
  if (!(lump.heat_capacity > 0.0))
    throw ConfigError("thermal region has no volume");

  auto sigma = thermal_sigma(p.mesh, base, lump);
  if (sigma != p.fields.sigma)
    update_conductivity(p, sigma, sc.stepper.sigma_art);
  auto engine = std::make_unique<Engine>(p, sc);

  ThermalResult out;
  out.heat_capacity = lump.heat_capacity;
  TransientResult &tr = out.transient;
  const double d_norm0 = frobenius(p.constraints.d_tilde);
  auto src_n = assemble_sources(p.mesh, p.dofs, sc.source, 0.0);
  Vector u = Vector::Zero(p.dofs.num_free_nodes());
  tr.times.push_back(0.0);
  tr.u_full.push_back(full_nodal(p.dofs, u, src_n.dirichlet));
  NewmarkState state = zero_initial_state(p, tr.u_full[0], src_n.j_s);
  tr.states.push_back(state);
  tr.records.push_back(make_record(p, 0.0, sc.source.drive.value(0.0), state, 0.0, d_norm0));
  out.records.push_back({0.0, sc.source.drive.value(0.0), lump.temperature,
                         eqs_loss_power(p.ops.k_sigma_full, tr.u_full[0]),
                         sigma_of_T(lump.law, lump.temperature),
                         current_magnitude_integral(p, tr.u_full[0], state)});

  for (int n = 0; n < n_steps; ++n) {
    const double t = (n + 1) * dt;
    const auto src_np1 = assemble_sources(p.mesh, p.dofs, sc.source, t);
    const auto un = static_cast<std::size_t>(n);
    try {
      u = engine->eqs_step(u, src_n, src_np1);
      tr.u_full.push_back(full_nodal(p.dofs, u, src_np1.dirichlet));
      const Vector &u_nm1 = n == 0 ? tr.u_full[0] : tr.u_full[un - 1];
      state = engine->mqs_step(state, tr.u_full[un + 1], u_nm1, src_np1.j_s);
    } catch (const SolverError &e) {
      throw SolverError("thermal step " + std::to_string(n + 1) + " failed (last good step " +
                        std::to_string(n) + "): " + e.what());
    }
    tr.times.push_back(t);
    tr.states.push_back(state);
    tr.records.push_back(make_record(p, t, sc.source.drive.value(t), state,
                                     engine->last_residual(), frobenius(p.constraints.d_tilde)));

    const double power = eqs_loss_power(p.ops.k_sigma_full, tr.u_full[un + 1]);
    const double current = current_magnitude_integral(p, tr.u_full[un + 1], state);
    lump.temperature = thermal_step(lump, power, dt);
    out.records.push_back({t, sc.source.drive.value(t), lump.temperature, power,
                           sigma_of_T(lump.law, lump.temperature), current});

    sigma = thermal_sigma(p.mesh, base, lump);
    if (sigma != p.fields.sigma) {
      engine.reset();
      update_conductivity(p, sigma, sc.stepper.sigma_art);
      engine = std::make_unique<Engine>(p, sc);
    }
    src_n = src_np1;
  }
  for (const auto &r : tr.records)
    tr.max_constraint_ratio =
        std::max(tr.max_constraint_ratio, r.constraint_residual / r.constraint_scale);

  if (options.out_dir) {
    std::filesystem::create_directories(*options.out_dir);
    CsvWriter w(*options.out_dir / "thermal.csv",
                {"t", "v1", "temperature", "power", "sigma", "current_integral"});
    for (const auto &r : out.records)
      w.row({r.t, r.v1, r.temperature, r.power, r.sigma, r.current_integral});
    w.close();
    for (const int n : sc.output.vtk_steps)
      if (n >= 0 && static_cast<std::size_t>(n) < tr.u_full.size())
        write_snapshot(p, tr.u_full[static_cast<std::size_t>(n)],
                       tr.states[static_cast<std::size_t>(n)],
                       *options.out_dir / "vtk" / step_name(n));
  }
  return out;
}

} // namespace tdmaxwell
