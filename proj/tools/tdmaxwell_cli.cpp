// Command line front end: transient runs, condition sweeps, frequency-domain
// validation, electro-thermal runs and mesh dumps.

#include "tdmaxwell/errors.hpp"
#include "tdmaxwell/output.hpp"
#include "tdmaxwell/runner.hpp"
#include "tdmaxwell/scenario.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>

using namespace tdmaxwell;

namespace {

struct Common {
  std::string scenario;
  int refinement = 1;
  std::string out = "out";
  std::optional<bool> stabilized;
  std::optional<double> dt;
  std::optional<int> steps;
};

void add_common(CLI::App *cmd, Common &c) {
  cmd->add_option("--scenario", c.scenario, "scenario JSON file or preset name")->required();
  cmd->add_option("--refinement", c.refinement, "refinement level for preset names")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", c.out, "output directory");
  cmd->add_option("--stabilized", c.stabilized, "use the stabilized update matrix");
  cmd->add_option("--dt", c.dt, "time step override (s)");
  cmd->add_option("--steps", c.steps, "step count override");
}

Scenario load(const Common &c) {
  Scenario sc;
  if (std::filesystem::exists(c.scenario))
    sc = load_scenario(c.scenario);
  else
    sc = preset_scenario(c.scenario, c.refinement);
  if (c.stabilized)
    sc.stepper.stabilized = *c.stabilized;
  if (c.dt) {
    if (!(*c.dt > 0.0))
      throw ConfigError("--dt must be > 0");
    sc.time.dt = *c.dt;
  }
  if (c.steps) {
    if (*c.steps < 1)
      throw ConfigError("--steps must be >= 1");
    sc.time.steps = *c.steps;
  }
  return sc;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Stabilized two-step time-domain Maxwell solver"};
  app.require_subcommand(1);

  Common transient, sweep, fd, thermal, dump;
  auto *c_transient = app.add_subcommand("run-transient", "EQS + MQS transient run");
  add_common(c_transient, transient);
  auto *c_sweep = app.add_subcommand("cond-sweep", "condition numbers over the time step");
  add_common(c_sweep, sweep);
  auto *c_fd = app.add_subcommand("validate-fd", "time domain vs frequency domain error");
  add_common(c_fd, fd);
  auto *c_thermal = app.add_subcommand("run-thermal", "nonlinear electro-thermal run");
  add_common(c_thermal, thermal);
  auto *c_dump = app.add_subcommand("dump-mesh", "write mesh entity tables as CSV");
  add_common(c_dump, dump);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*c_transient) {
      const Scenario sc = load(transient);
      const auto res = run_transient(sc, {transient.out});
      std::cout << "run-transient: " << sc.time.steps << " steps, max constraint ratio "
                << format_number(res.max_constraint_ratio) << ", output in " << transient.out
                << '\n';
    } else if (*c_sweep) {
      const Scenario sc = load(sweep);
      const auto rows = run_cond_sweep(sc, {sweep.out});
      std::cout << "cond-sweep: " << rows.size() << " rows written to "
                << (std::filesystem::path(sweep.out) / "cond_sweep.csv").string() << '\n';
    } else if (*c_fd) {
      Scenario sc = load(fd);
      if (fd.steps)
        sc.output.fd_validation.steps_per_period = *fd.steps;
      const auto res = run_fd_validation(sc, {fd.out});
      std::cout << "validate-fd: max relative L2 error " << format_number(res.max_error) << '\n';
    } else if (*c_thermal) {
      const Scenario sc = load(thermal);
      const auto res = run_thermal(sc, {thermal.out});
      std::cout << "run-thermal: final temperature "
                << format_number(res.records.back().temperature) << " degC\n";
    } else if (*c_dump) {
      const Scenario sc = load(dump);
      const Problem p = build_problem(sc);
      write_mesh_csv(p.mesh, dump.out);
      std::cout << "dump-mesh: " << p.mesh.num_nodes() << " nodes, " << p.mesh.num_edges()
                << " edges, " << p.mesh.num_cells() << " cells\n";
    }
  } catch (const ConfigError &e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const InputError &e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const SolverError &e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
