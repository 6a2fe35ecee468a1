#include "presets.hpp"

#include "tdmaxwell/errors.hpp"

#include <array>
#include <string>
#include <vector>

namespace tdmaxwell {

namespace {

using nlohmann::json;

std::vector<double> split_segments(const std::vector<double> &breaks, const std::vector<int> &parts) {
  std::vector<double> out{breaks.front()};
  for (std::size_t s = 0; s + 1 < breaks.size(); ++s)
    for (int k = 1; k <= parts[s]; ++k)
      out.push_back(k == parts[s] ? breaks[s + 1]
                                  : breaks[s] + (breaks[s + 1] - breaks[s]) * k / parts[s]);
  return out;
}

json box(int id, std::array<double, 3> lo, std::array<double, 3> hi) {
  return {{"id", id}, {"lo", lo}, {"hi", hi}};
}

// 22 cm cube: dielectric slabs below and above an air gap, three stacked
// 2 cm bars through the middle (outer pair sigma = 5, center sigma = 1).
json academic(int r) {
  const std::vector<double> breaks{0.0, 0.10, 0.12, 0.22};
  const auto planes = split_segments(breaks, {r, 1, r});
  const double f = 150.0;
  json j;
  j["name"] = "academic-bars";
  j["mesh"] = {{"planes", {{"x", planes}, {"y", planes}, {"z", planes}}}};
  j["regions"] = json::array({
      box(1, {0.0, 0.0, 0.0}, {0.22, 0.22, 0.10}),
      box(2, {0.0, 0.0, 0.12}, {0.22, 0.22, 0.22}),
      box(3, {0.10, 0.10, 0.0}, {0.12, 0.12, 0.22}),
      box(4, {0.10, 0.10, 0.10}, {0.12, 0.12, 0.12}),
  });
  j["materials"] = json::array({
      {{"region", 0}, {"sigma", 0.0}, {"eps_r", 1.0}},
      {{"region", 1}, {"sigma", 0.0}, {"eps_r", 5.0}},
      {{"region", 2}, {"sigma", 0.0}, {"eps_r", 5.0}},
      {{"region", 3}, {"sigma", 5.0}, {"eps_r", 5.0}},
      {{"region", 4}, {"sigma", 1.0}, {"eps_r", 1.0}},
  });
  j["boundary"] = {{"ground", json::array({"zmin"})},
                   {"drive", json::array({"zmax"})},
                   {"vector_dirichlet", "all"}};
  j["source"] = {{"waveform", "sine"}, {"amplitude", 1.0}, {"frequency", f}};
  j["time"] = {{"dt", 1.0 / (20.0 * f)}, {"steps", 40}};
  j["stepper"] = {{"stabilized", true}, {"beta", 0.25}, {"gamma", 0.5}, {"sigma_art", 1e-6}};
  std::vector<double> dts;
  for (int e = -10; e <= 10; ++e)
    dts.push_back(std::stod("1e" + std::to_string(e)));
  j["output"] = {{"vtk_steps", json::array({5})},
                 {"cond_sweep", {{"dts", dts}, {"static", true}, {"mode", "auto"}}},
                 {"fd_validation", {{"steps_per_period", 100}, {"periods", 1}}}};
  return j;
}

// Cell ranges (inclusive) of the spiral in the 3 mm lattice, coil layer k = 1.
struct Run {
  int i0, i1, j0, j1;
};
constexpr std::array<Run, 12> kSpiral{{
    {1, 1, 0, 15},
    {1, 13, 15, 15},
    {13, 13, 1, 15},
    {3, 13, 1, 1},
    {3, 3, 1, 13},
    {3, 11, 13, 13},
    {11, 11, 3, 13},
    {5, 11, 3, 3},
    {5, 5, 3, 11},
    {5, 9, 11, 11},
    {9, 9, 5, 11},
    {7, 9, 5, 5},
}};

// Three-turn rectangular spiral (3 mm x 3 mm section) in a 45 x 51 x 9 mm
// airbox. It starts at the ymin face and ends in a via to the zmax face.
json coil(int r) {
  constexpr double h = 3e-3;
  const std::array<int, 3> cells{15, 17, 3};
  json j;
  j["name"] = "planar-coil";
  json planes;
  const char *axes[3] = {"x", "y", "z"};
  for (int a = 0; a < 3; ++a) {
    std::vector<double> p;
    const int n = cells[static_cast<std::size_t>(a)] * r;
    for (int i = 0; i <= n; ++i)
      p.push_back(h * i / r);
    planes[axes[a]] = p;
  }
  j["mesh"] = {{"planes", planes}};
  json regions = json::array();
  for (const auto &run : kSpiral)
    regions.push_back(
        box(1, {h * run.i0, h * run.j0, h}, {h * (run.i1 + 1), h * (run.j1 + 1), 2 * h}));
  regions.push_back(box(1, {7 * h, 5 * h, 2 * h}, {8 * h, 6 * h, 3 * h}));
  j["regions"] = regions;
  j["materials"] = json::array({
      {{"region", 0}, {"sigma", 0.0}, {"eps_r", 1.0}},
      {{"region", 1},
       {"sigma", 6e7},
       {"eps_r", 1.0},
       {"thermal", {{"sigma0", 6e7}, {"alpha", 3.93e-3}, {"t0", 20.0}}}},
  });
  j["boundary"] = {
      {"ground", json::array({{{"side", "ymin"}, {"lo", {h, 0.0, h}}, {"hi", {2 * h, 0.0, 2 * h}}}})},
      {"drive",
       json::array({{{"side", "zmax"}, {"lo", {7 * h, 5 * h, 3 * h}}, {"hi", {8 * h, 6 * h, 3 * h}}}})},
      {"vector_dirichlet", json::array()}};
  const double f = 150.0;
  j["source"] = {{"waveform", "sine"}, {"amplitude", 1.0}, {"frequency", f}};
  j["time"] = {{"dt", 1.0 / (20.0 * f)}, {"steps", 20}};
  j["stepper"] = {{"stabilized", true}, {"beta", 0.25}, {"gamma", 0.5}, {"sigma_art", 1e-6}};
  j["thermal"] = {{"enabled", false},
                  {"region", 1},
                  {"initial_temperature", 20.0},
                  {"volumetric_heat_capacity", 3.45e6}};
  std::vector<double> dts;
  for (int e = -10; e <= 10; ++e)
    dts.push_back(std::stod("1e" + std::to_string(e)));
  j["output"] = {{"vtk_steps", json::array({5})},
                 {"cond_sweep", {{"dts", dts}, {"static", true}, {"mode", "auto"}}},
                 {"fd_validation", {{"steps_per_period", 100}, {"periods", 1}}}};
  return j;
}

} // namespace

json preset_json(std::string_view name, int refinement) {
  if (refinement < 1)
    throw ConfigError("refinement must be >= 1");
  if (name == "academic-bars")
    return academic(refinement);
  if (name == "planar-coil")
    return coil(refinement);
  if (name == "planar-coil-thermal") {
    json j = coil(refinement);
    j["name"] = "planar-coil-thermal";
    j["source"]["amplitude"] = 50.0;
    j["time"] = {{"dt", 0.134e-3}, {"steps", 50}};
    j["thermal"]["enabled"] = true;
    return j;
  }
  throw ConfigError("unknown preset '" + std::string(name) +
                    "' (academic-bars, planar-coil, planar-coil-thermal)");
}

} // namespace tdmaxwell
