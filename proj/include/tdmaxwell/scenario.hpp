#pragma once

#include "tdmaxwell/assembly.hpp"
#include "tdmaxwell/boundary.hpp"
#include "tdmaxwell/conditioning.hpp"
#include "tdmaxwell/mesh.hpp"
#include "tdmaxwell/sources.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tdmaxwell {

struct TimeSpec {
  double dt = 0.0;
  int steps = 0;
  double end() const { return dt * steps; }
};

struct StepperSpec {
  bool stabilized = true;
  double beta = 0.25;
  double gamma = 0.5;
  double sigma_art = 1e-6;
};

struct ThermalSpec {
  bool enabled = false;
  int region = 0;
  double initial_temperature = 20.0;       ///< degC
  double heat_capacity = 0.0;              ///< J/K; 0 = derive from the volumetric value
  double volumetric_heat_capacity = 3.45e6; ///< J/(m^3 K), copper
};

enum class SweepMode { Auto, Dense, Iterative };

struct CondSweepSpec {
  std::vector<double> dts;
  bool include_static = true;
  SweepMode mode = SweepMode::Auto;
};

struct FdValidationSpec {
  int steps_per_period = 100;
  int periods = 1;
};

struct OutputSpec {
  std::vector<int> vtk_steps;
  CondSweepSpec cond_sweep;
  FdValidationSpec fd_validation;
};

struct Scenario {
  std::string name;
  std::array<std::vector<double>, 3> planes;
  std::vector<RegionBox> regions;
  MaterialSpec materials;
  BoundaryConditions boundary;
  SourceSpec source;
  TimeSpec time;
  StepperSpec stepper;
  ThermalSpec thermal;
  OutputSpec output;
};

/// Parses a JSON scenario document. A "preset" key starts from a built-in
/// scenario (with optional "refinement") and the remaining keys are merged on
/// top of it. Unknown keys are rejected. Throws ConfigError listing every
/// problem found.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path &path);

/// Built-in scenario document ("academic-bars", "planar-coil").
std::string preset_document(std::string_view name, int refinement = 1);
Scenario preset_scenario(std::string_view name, int refinement = 1);

/// Decades 1e-10 ... 1e10 s.
std::vector<double> default_sweep_dts();

} // namespace tdmaxwell
