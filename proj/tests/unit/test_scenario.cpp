#include "doctest.h"

#include "tdmaxwell/errors.hpp"
#include "tdmaxwell/scenario.hpp"

#include <cmath>
#include <string>

using namespace tdmaxwell;

namespace {

const char *kMinimal = R"({
  "mesh": {"extent": [1, 1, 1], "divisions": [1, 1, 1]},
  "materials": [{"region": 0, "sigma": 1}],
  "time": {"dt": 0.1, "steps": 3}
})";

std::string error_of(const std::string &text) {
  try {
    parse_scenario(text);
  } catch (const ConfigError &e) {
    return e.what();
  }
  return {};
}

} // namespace

TEST_CASE("minimal document gets the default stepper") {
  const Scenario sc = parse_scenario(kMinimal);
  CHECK(sc.stepper.beta == 0.25);
  CHECK(sc.stepper.gamma == 0.5);
  CHECK(sc.stepper.stabilized);
  CHECK(sc.time.steps == 3);
  CHECK(sc.planes[0].size() == 2);
  CHECK(sc.materials.at(0).eps == doctest::Approx(kEpsilon0));
  CHECK(sc.materials.at(0).nu == doctest::Approx(1.0 / kMu0));
}

TEST_CASE("missing sections and unknown keys are named") {
  const std::string no_mesh = error_of(R"({"materials": [{"region": 0}], "time": {"dt": 1, "steps": 1}})");
  CHECK(no_mesh.find("mesh") != std::string::npos);
  const std::string typo = error_of(R"({
    "mesh": {"extent": [1, 1, 1], "divisions": [1, 1, 1]},
    "materials": [{"region": 0, "sigma": 1}],
    "time": {"dt": 0.1, "steps": 3, "stpes": 4}
  })");
  CHECK(typo.find("stpes") != std::string::npos);
}

TEST_CASE("all problems are reported together") {
  const std::string msg = error_of(R"({
    "mesh": {"extent": [1, -1, 1], "divisions": [1, 1, 1]},
    "materials": [{"region": 0, "sigma": -1}],
    "time": {"dt": 0.1, "steps": 0},
    "source": {"waveform": "square"}
  })");
  CHECK(msg.find("4 problems") != std::string::npos);
  CHECK(msg.find("square") != std::string::npos);
}

TEST_CASE("references to undefined regions and malformed JSON are rejected") {
  CHECK_FALSE(error_of(R"({
    "mesh": {"extent": [1, 1, 1], "divisions": [1, 1, 1]},
    "materials": [{"region": 0, "sigma": 1}],
    "time": {"dt": 0.1, "steps": 3},
    "source": {"currents": [{"region": 9, "density": [1, 0, 0]}]}
  })").empty());
  CHECK_FALSE(error_of("{not json").empty());
  CHECK_FALSE(error_of("[1, 2]").empty());
}

TEST_CASE("academic preset parameters") {
  const Scenario sc = preset_scenario("academic-bars");
  CHECK(sc.source.drive.amplitude == 1.0);
  CHECK(sc.source.drive.frequency == 150.0);
  CHECK(sc.time.dt == doctest::Approx(0.333e-3).epsilon(1e-3));
  CHECK(sc.time.steps == 40);
  CHECK(sc.time.end() == doctest::Approx(2.0 / 150.0));
  CHECK(sc.planes[0].back() == doctest::Approx(0.22));
  CHECK(sc.materials.at(3).sigma == 5.0);
  CHECK(sc.materials.at(3).eps == doctest::Approx(5.0 * kEpsilon0));
  CHECK(sc.materials.at(4).sigma == 1.0);
  CHECK(preset_scenario("academic-bars", 2).planes[2].size() > sc.planes[2].size());
  CHECK_THROWS_AS(preset_scenario("nope"), ConfigError);
}

TEST_CASE("coil presets") {
  const Scenario coil = preset_scenario("planar-coil");
  CHECK(coil.planes[0].back() == doctest::Approx(0.045));
  CHECK(coil.planes[1].back() == doctest::Approx(0.051));
  CHECK(coil.planes[2].back() == doctest::Approx(0.009));
  const Scenario th = preset_scenario("planar-coil-thermal");
  CHECK(th.source.drive.amplitude == 50.0);
  CHECK(th.time.dt == doctest::Approx(0.134e-3));
  CHECK(th.time.steps == 50);
  CHECK(th.thermal.enabled);
}

TEST_CASE("preset overrides merge onto the preset document") {
  const Scenario sc = parse_scenario(R"({"preset": "academic-bars", "time": {"steps": 7},
                                         "stepper": {"stabilized": false}})");
  CHECK(sc.time.steps == 7);
  CHECK_FALSE(sc.stepper.stabilized);
  CHECK(sc.source.drive.frequency == 150.0);
  CHECK_FALSE(error_of(R"({"preset": "academic-bars", "refinement": 0})").empty());
}

TEST_CASE("time.end must agree with dt * steps") {
  CHECK_FALSE(error_of(R"({
    "mesh": {"extent": [1, 1, 1], "divisions": [1, 1, 1]},
    "materials": [{"region": 0, "sigma": 1}],
    "time": {"dt": 0.1, "steps": 3, "end": 0.5}
  })").empty());
  const Scenario sc = parse_scenario(R"({
    "mesh": {"extent": [1, 1, 1], "divisions": [1, 1, 1]},
    "materials": [{"region": 0, "sigma": 1}],
    "time": {"dt": 0.1, "steps": 3, "end": 0.3}
  })");
  CHECK(sc.time.end() == doctest::Approx(0.3));
}

TEST_CASE("default sweep decades") {
  const auto d = default_sweep_dts();
  CHECK(d.size() == 21);
  CHECK(d.front() == doctest::Approx(1e-10));
  CHECK(d.back() == doctest::Approx(1e10));
}
