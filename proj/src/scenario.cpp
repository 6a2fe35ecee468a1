#include "tdmaxwell/scenario.hpp"

#include "presets.hpp"
#include "tdmaxwell/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace tdmaxwell {

namespace {

using nlohmann::json;

class Reader {
public:
  std::vector<std::string> errors;

  void fail(const std::string &where, const std::string &what) {
    errors.push_back(where + ": " + what);
  }

  bool object(const json &j, const std::string &where) {
    if (j.is_object())
      return true;
    fail(where, "expected an object");
    return false;
  }

  void allow(const json &j, const std::string &where, std::initializer_list<std::string_view> keys) {
    for (const auto &[key, value] : j.items()) {
      bool known = false;
      for (const auto k : keys)
        known = known || key == k;
      if (!known)
        fail(where, "unknown key '" + key + "'");
    }
  }

  std::optional<double> number(const json &j, const char *key, const std::string &where) {
    if (!j.contains(key))
      return std::nullopt;
    const json &v = j.at(key);
    if (!v.is_number() || !std::isfinite(v.get<double>())) {
      fail(where + "." + key, "expected a finite number");
      return std::nullopt;
    }
    return v.get<double>();
  }

  std::optional<long long> integer(const json &j, const char *key, const std::string &where) {
    if (!j.contains(key))
      return std::nullopt;
    const json &v = j.at(key);
    if (!v.is_number_integer()) {
      fail(where + "." + key, "expected an integer");
      return std::nullopt;
    }
    return v.get<long long>();
  }

  std::optional<bool> boolean(const json &j, const char *key, const std::string &where) {
    if (!j.contains(key))
      return std::nullopt;
    if (!j.at(key).is_boolean()) {
      fail(where + "." + key, "expected true or false");
      return std::nullopt;
    }
    return j.at(key).get<bool>();
  }

  std::optional<std::string> string(const json &j, const char *key, const std::string &where) {
    if (!j.contains(key))
      return std::nullopt;
    if (!j.at(key).is_string()) {
      fail(where + "." + key, "expected a string");
      return std::nullopt;
    }
    return j.at(key).get<std::string>();
  }

  std::optional<std::vector<double>> numbers(const json &j, const char *key,
                                             const std::string &where) {
    if (!j.contains(key))
      return std::nullopt;
    const json &v = j.at(key);
    bool ok = v.is_array();
    std::vector<double> out;
    if (ok)
      for (const auto &x : v) {
        if (!x.is_number() || !std::isfinite(x.get<double>())) {
          ok = false;
          break;
        }
        out.push_back(x.get<double>());
      }
    if (!ok) {
      fail(where + "." + key, "expected an array of finite numbers");
      return std::nullopt;
    }
    return out;
  }

  std::optional<Point> point(const json &j, const char *key, const std::string &where) {
    auto v = numbers(j, key, where);
    if (!v)
      return std::nullopt;
    if (v->size() != 3) {
      fail(where + "." + key, "expected three numbers");
      return std::nullopt;
    }
    return Point((*v)[0], (*v)[1], (*v)[2]);
  }
};

std::optional<BoxSide> parse_side(std::string_view s) {
  for (const BoxSide side : kAllSides)
    if (s == side_name(side))
      return side;
  return std::nullopt;
}

std::vector<BoundaryPatch> parse_patches(Reader &r, const json &j, const std::string &where) {
  std::vector<BoundaryPatch> out;
  if (j.is_string() && j.get<std::string>() == "all") {
    for (const BoxSide side : kAllSides)
      out.push_back({side, std::nullopt});
    return out;
  }
  if (!j.is_array()) {
    r.fail(where, "expected an array of patches or \"all\"");
    return out;
  }
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string w = where + "[" + std::to_string(i) + "]";
    const json &p = j[i];
    BoundaryPatch patch;
    std::string side_text;
    if (p.is_string()) {
      side_text = p.get<std::string>();
    } else if (r.object(p, w)) {
      r.allow(p, w, {"side", "lo", "hi"});
      side_text = r.string(p, "side", w).value_or("");
      const auto lo = r.point(p, "lo", w);
      const auto hi = r.point(p, "hi", w);
      if (lo.has_value() != hi.has_value())
        r.fail(w, "a window needs both lo and hi");
      else if (lo && hi)
        patch.window = RegionBox{0, *lo, *hi};
    } else {
      continue;
    }
    const auto side = parse_side(side_text);
    if (!side) {
      r.fail(w, "unknown side '" + side_text + "' (use xmin, xmax, ymin, ymax, zmin, zmax)");
      continue;
    }
    patch.side = *side;
    out.push_back(patch);
  }
  return out;
}

std::optional<TimeProfile> parse_profile(Reader &r, const json &j, const std::string &where) {
  const auto s = r.string(j, "profile", where).value_or("sine");
  if (s == "sine")
    return TimeProfile::Sine;
  if (s == "constant")
    return TimeProfile::Constant;
  r.fail(where + ".profile", "unknown profile '" + s + "' (use sine or constant)");
  return std::nullopt;
}

void parse_mesh(Reader &r, const json &j, Scenario &sc) {
  if (!r.object(j, "mesh"))
    return;
  r.allow(j, "mesh", {"extent", "divisions", "planes"});
  if (j.contains("planes")) {
    if (j.contains("extent") || j.contains("divisions"))
      r.fail("mesh", "give either planes or extent/divisions, not both");
    const json &p = j.at("planes");
    if (!r.object(p, "mesh.planes"))
      return;
    r.allow(p, "mesh.planes", {"x", "y", "z"});
    const char *axes[3] = {"x", "y", "z"};
    for (int a = 0; a < 3; ++a) {
      auto v = r.numbers(p, axes[a], "mesh.planes");
      if (!v) {
        if (!p.contains(axes[a]))
          r.fail("mesh.planes", std::string("missing axis '") + axes[a] + "'");
        continue;
      }
      bool increasing = v->size() >= 2;
      for (std::size_t i = 1; i < v->size(); ++i)
        increasing = increasing && (*v)[i] > (*v)[i - 1];
      if (!increasing)
        r.fail(std::string("mesh.planes.") + axes[a], "needs at least two strictly increasing values");
      sc.planes[static_cast<std::size_t>(a)] = *v;
    }
    return;
  }
  const auto extent = r.point(j, "extent", "mesh");
  const auto div = r.numbers(j, "divisions", "mesh");
  if (!extent || !div) {
    if (!j.contains("extent") || !j.contains("divisions"))
      r.fail("mesh", "needs either planes or both extent and divisions");
    return;
  }
  if (div->size() != 3) {
    r.fail("mesh.divisions", "expected three integers");
    return;
  }
  for (int a = 0; a < 3; ++a) {
    const double e = (*extent)[a];
    const double d = (*div)[static_cast<std::size_t>(a)];
    if (!(e > 0.0))
      r.fail("mesh.extent", "extent must be positive");
    if (!(d >= 1.0) || d != std::floor(d))
      r.fail("mesh.divisions", "divisions must be positive integers");
    if (!(e > 0.0) || !(d >= 1.0) || d != std::floor(d))
      continue;
    const int n = static_cast<int>(d);
    auto &pl = sc.planes[static_cast<std::size_t>(a)];
    pl.resize(static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i)
      pl[static_cast<std::size_t>(i)] = e * i / n;
  }
}

void parse_regions(Reader &r, const json &j, Scenario &sc) {
  if (!j.is_array()) {
    r.fail("regions", "expected an array");
    return;
  }
  std::set<int> ids;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string w = "regions[" + std::to_string(i) + "]";
    if (!r.object(j[i], w))
      continue;
    r.allow(j[i], w, {"id", "lo", "hi"});
    const auto id = r.integer(j[i], "id", w);
    const auto lo = r.point(j[i], "lo", w);
    const auto hi = r.point(j[i], "hi", w);
    if (!id || !lo || !hi) {
      r.fail(w, "needs id, lo and hi");
      continue;
    }
    if (*id < 1)
      r.fail(w + ".id", "region ids start at 1 (0 is the background)");
    if (!((*lo).array() < (*hi).array()).all())
      r.fail(w, "lo must be below hi on every axis");
    ids.insert(static_cast<int>(*id));
    sc.regions.push_back({static_cast<int>(*id), *lo, *hi});
  }
}

void parse_materials(Reader &r, const json &j, Scenario &sc) {
  if (!j.is_array()) {
    r.fail("materials", "expected an array");
    return;
  }
  std::set<int> known{0};
  for (const auto &b : sc.regions)
    known.insert(b.id);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string w = "materials[" + std::to_string(i) + "]";
    if (!r.object(j[i], w))
      continue;
    r.allow(j[i], w, {"region", "sigma", "eps_r", "mu_r", "thermal"});
    const auto region = r.integer(j[i], "region", w);
    if (!region) {
      r.fail(w, "missing region");
      continue;
    }
    const int id = static_cast<int>(*region);
    if (!known.count(id))
      r.fail(w + ".region", "region " + std::to_string(id) + " is not defined");
    if (sc.materials.count(id))
      r.fail(w + ".region", "duplicate material for region " + std::to_string(id));
    Material m;
    const double eps_r = r.number(j[i], "eps_r", w).value_or(1.0);
    const double mu_r = r.number(j[i], "mu_r", w).value_or(1.0);
    if (!(eps_r > 0.0))
      r.fail(w + ".eps_r", "must be > 0");
    if (!(mu_r > 0.0))
      r.fail(w + ".mu_r", "must be > 0");
    m.eps = eps_r * kEpsilon0;
    m.nu = 1.0 / (mu_r * kMu0);
    if (j[i].contains("thermal")) {
      const json &t = j[i].at("thermal");
      const std::string wt = w + ".thermal";
      if (r.object(t, wt)) {
        r.allow(t, wt, {"sigma0", "alpha", "t0"});
        ThermalLaw law;
        law.sigma0 = r.number(t, "sigma0", wt).value_or(0.0);
        law.alpha = r.number(t, "alpha", wt).value_or(0.0);
        law.t0 = r.number(t, "t0", wt).value_or(20.0);
        if (!(law.sigma0 > 0.0))
          r.fail(wt + ".sigma0", "must be > 0");
        if (law.alpha < 0.0)
          r.fail(wt + ".alpha", "must be >= 0");
        m.thermal = law;
        m.sigma = law.sigma0;
      }
    }
    m.sigma = r.number(j[i], "sigma", w).value_or(m.sigma);
    if (m.sigma < 0.0)
      r.fail(w + ".sigma", "must be >= 0");
    sc.materials[id] = m;
  }
}

void parse_boundary(Reader &r, const json &j, Scenario &sc) {
  if (!r.object(j, "boundary"))
    return;
  r.allow(j, "boundary", {"ground", "drive", "vector_dirichlet"});
  if (j.contains("ground"))
    for (const auto &p : parse_patches(r, j.at("ground"), "boundary.ground"))
      sc.boundary.scalar.push_back({p, ScalarValue::Ground});
  if (j.contains("drive"))
    for (const auto &p : parse_patches(r, j.at("drive"), "boundary.drive"))
      sc.boundary.scalar.push_back({p, ScalarValue::Drive});
  if (j.contains("vector_dirichlet"))
    sc.boundary.vector_dirichlet =
        parse_patches(r, j.at("vector_dirichlet"), "boundary.vector_dirichlet");
}

void parse_source(Reader &r, const json &j, Scenario &sc) {
  if (!r.object(j, "source"))
    return;
  r.allow(j, "source", {"waveform", "amplitude", "frequency", "currents", "charges"});
  const auto waveform = r.string(j, "waveform", "source").value_or("sine");
  if (waveform != "sine")
    r.fail("source.waveform", "unknown waveform '" + waveform + "' (only sine is supported)");
  sc.source.drive.amplitude = r.number(j, "amplitude", "source").value_or(0.0);
  sc.source.drive.frequency = r.number(j, "frequency", "source").value_or(0.0);
  bool needs_frequency = sc.source.drive.amplitude != 0.0;
  if (j.contains("currents")) {
    const json &c = j.at("currents");
    if (!c.is_array())
      r.fail("source.currents", "expected an array");
    else
      for (std::size_t i = 0; i < c.size(); ++i) {
        const std::string w = "source.currents[" + std::to_string(i) + "]";
        if (!r.object(c[i], w))
          continue;
        r.allow(c[i], w, {"region", "density", "profile"});
        ImpressedCurrent cur;
        cur.region = static_cast<int>(r.integer(c[i], "region", w).value_or(0));
        cur.density = r.point(c[i], "density", w).value_or(Point::Zero());
        const auto prof = parse_profile(r, c[i], w);
        cur.profile = prof.value_or(TimeProfile::Sine);
        needs_frequency = needs_frequency || cur.profile == TimeProfile::Sine;
        sc.source.currents.push_back(cur);
      }
  }
  if (j.contains("charges")) {
    const json &c = j.at("charges");
    if (!c.is_array())
      r.fail("source.charges", "expected an array");
    else
      for (std::size_t i = 0; i < c.size(); ++i) {
        const std::string w = "source.charges[" + std::to_string(i) + "]";
        if (!r.object(c[i], w))
          continue;
        r.allow(c[i], w, {"region", "rate", "profile"});
        ImpressedChargeRate q;
        q.region = static_cast<int>(r.integer(c[i], "region", w).value_or(0));
        q.rate = r.number(c[i], "rate", w).value_or(0.0);
        q.profile = parse_profile(r, c[i], w).value_or(TimeProfile::Sine);
        needs_frequency = needs_frequency || q.profile == TimeProfile::Sine;
        sc.source.charges.push_back(q);
      }
  }
  if (needs_frequency && !(sc.source.drive.frequency > 0.0))
    r.fail("source.frequency", "a sinusoidal drive needs frequency > 0");
}

void parse_time(Reader &r, const json &j, Scenario &sc) {
  if (!r.object(j, "time"))
    return;
  r.allow(j, "time", {"dt", "steps", "end"});
  const auto dt = r.number(j, "dt", "time");
  const auto steps = r.integer(j, "steps", "time");
  if (!dt || !(*dt > 0.0))
    r.fail("time.dt", "required and must be > 0");
  if (!steps || *steps < 1)
    r.fail("time.steps", "required and must be >= 1");
  sc.time.dt = dt.value_or(0.0);
  sc.time.steps = static_cast<int>(steps.value_or(0));
  if (const auto end = r.number(j, "end", "time")) {
    if (std::abs(sc.time.end() - *end) > 1e-6 * std::abs(*end))
      r.fail("time.end", "dt * steps does not match the total interval");
  }
}

void parse_stepper(Reader &r, const json &j, Scenario &sc) {
  if (!r.object(j, "stepper"))
    return;
  r.allow(j, "stepper", {"stabilized", "beta", "gamma", "sigma_art"});
  sc.stepper.stabilized = r.boolean(j, "stabilized", "stepper").value_or(true);
  sc.stepper.beta = r.number(j, "beta", "stepper").value_or(0.25);
  sc.stepper.gamma = r.number(j, "gamma", "stepper").value_or(0.5);
  sc.stepper.sigma_art = r.number(j, "sigma_art", "stepper").value_or(1e-6);
  if (!(sc.stepper.beta > 0.0))
    r.fail("stepper.beta", "must be > 0");
  if (!(sc.stepper.gamma >= 0.0 && sc.stepper.gamma <= 1.0))
    r.fail("stepper.gamma", "must lie in [0, 1]");
  if (sc.stepper.sigma_art < 0.0)
    r.fail("stepper.sigma_art", "must be >= 0");
}

void parse_thermal(Reader &r, const json &j, Scenario &sc) {
  if (!r.object(j, "thermal"))
    return;
  r.allow(j, "thermal",
          {"enabled", "region", "initial_temperature", "heat_capacity", "volumetric_heat_capacity"});
  auto &t = sc.thermal;
  t.enabled = r.boolean(j, "enabled", "thermal").value_or(false);
  t.region = static_cast<int>(r.integer(j, "region", "thermal").value_or(0));
  t.initial_temperature = r.number(j, "initial_temperature", "thermal").value_or(20.0);
  t.heat_capacity = r.number(j, "heat_capacity", "thermal").value_or(0.0);
  t.volumetric_heat_capacity =
      r.number(j, "volumetric_heat_capacity", "thermal").value_or(3.45e6);
  if (t.heat_capacity < 0.0)
    r.fail("thermal.heat_capacity", "must be >= 0");
  if (!(t.volumetric_heat_capacity > 0.0) && t.heat_capacity == 0.0)
    r.fail("thermal.volumetric_heat_capacity", "must be > 0");
}

void parse_output(Reader &r, const json &j, Scenario &sc) {
  if (!r.object(j, "output"))
    return;
  r.allow(j, "output", {"vtk_steps", "cond_sweep", "fd_validation"});
  if (j.contains("vtk_steps")) {
    const json &v = j.at("vtk_steps");
    if (!v.is_array())
      r.fail("output.vtk_steps", "expected an array of step indices");
    else
      for (const auto &s : v) {
        if (!s.is_number_integer() || s.get<long long>() < 0)
          r.fail("output.vtk_steps", "step indices must be integers >= 0");
        else
          sc.output.vtk_steps.push_back(s.get<int>());
      }
  }
  if (j.contains("cond_sweep")) {
    const json &c = j.at("cond_sweep");
    if (r.object(c, "output.cond_sweep")) {
      r.allow(c, "output.cond_sweep", {"dts", "static", "mode"});
      auto &cs = sc.output.cond_sweep;
      if (auto dts = r.numbers(c, "dts", "output.cond_sweep")) {
        for (const double d : *dts)
          if (!(d > 0.0))
            r.fail("output.cond_sweep.dts", "time steps must be > 0");
        cs.dts = *dts;
      }
      cs.include_static = r.boolean(c, "static", "output.cond_sweep").value_or(true);
      const auto mode = r.string(c, "mode", "output.cond_sweep").value_or("auto");
      if (mode == "auto")
        cs.mode = SweepMode::Auto;
      else if (mode == "dense")
        cs.mode = SweepMode::Dense;
      else if (mode == "iterative")
        cs.mode = SweepMode::Iterative;
      else
        r.fail("output.cond_sweep.mode", "unknown mode '" + mode + "' (auto, dense, iterative)");
    }
  }
  if (j.contains("fd_validation")) {
    const json &f = j.at("fd_validation");
    if (r.object(f, "output.fd_validation")) {
      r.allow(f, "output.fd_validation", {"steps_per_period", "periods"});
      auto &fv = sc.output.fd_validation;
      fv.steps_per_period =
          static_cast<int>(r.integer(f, "steps_per_period", "output.fd_validation").value_or(100));
      fv.periods = static_cast<int>(r.integer(f, "periods", "output.fd_validation").value_or(1));
      if (fv.steps_per_period < 1)
        r.fail("output.fd_validation.steps_per_period", "must be >= 1");
      if (fv.periods < 1)
        r.fail("output.fd_validation.periods", "must be >= 1");
    }
  }
}

void check_references(Reader &r, const Scenario &sc) {
  std::set<int> regions{0};
  for (const auto &b : sc.regions)
    regions.insert(b.id);
  for (const auto &c : sc.source.currents)
    if (!regions.count(c.region))
      r.fail("source.currents", "region " + std::to_string(c.region) + " is not defined");
  for (const auto &q : sc.source.charges)
    if (!regions.count(q.region))
      r.fail("source.charges", "region " + std::to_string(q.region) + " is not defined");
  if (sc.thermal.enabled) {
    const auto it = sc.materials.find(sc.thermal.region);
    if (it == sc.materials.end() || !it->second.thermal)
      r.fail("thermal.region",
             "region " + std::to_string(sc.thermal.region) + " has no material with a thermal law");
  }
  bool has_planes = true;
  for (const auto &p : sc.planes)
    has_planes = has_planes && p.size() >= 2;
  if (!has_planes)
    return;
  for (const auto &b : sc.regions)
    for (int a = 0; a < 3; ++a) {
      const auto &p = sc.planes[static_cast<std::size_t>(a)];
      if (b.lo[a] < p.front() - 1e-12 || b.hi[a] > p.back() + 1e-12)
        r.fail("regions", "region " + std::to_string(b.id) + " extends beyond the mesh");
    }
}

} // namespace

std::vector<double> default_sweep_dts() {
  std::vector<double> dts;
  for (int e = -10; e <= 10; ++e)
    dts.push_back(std::pow(10.0, e));
  return dts;
}

Scenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    throw ConfigError(std::string("scenario is not valid JSON: ") + e.what());
  }
  Reader r;
  if (!doc.is_object())
    throw ConfigError("scenario: top level must be an object");

  if (doc.contains("preset")) {
    const json &p = doc.at("preset");
    int refinement = 1;
    if (doc.contains("refinement")) {
      if (!doc.at("refinement").is_number_integer() || doc.at("refinement").get<int>() < 1)
        throw ConfigError("refinement: expected an integer >= 1");
      refinement = doc.at("refinement").get<int>();
    }
    if (!p.is_string())
      throw ConfigError("preset: expected a preset name");
    json base = preset_json(p.get<std::string>(), refinement);
    doc.erase("preset");
    doc.erase("refinement");
    base.merge_patch(doc);
    doc = std::move(base);
  } else if (doc.contains("refinement")) {
    r.fail("refinement", "only valid together with a preset");
  }

  r.allow(doc, "scenario",
          {"name", "mesh", "regions", "materials", "boundary", "source", "time", "stepper",
           "thermal", "output", "refinement"});
  Scenario sc;
  sc.name = r.string(doc, "name", "scenario").value_or("scenario");
  for (const char *required : {"mesh", "materials", "time"})
    if (!doc.contains(required))
      r.fail(required, "missing section");
  if (doc.contains("mesh"))
    parse_mesh(r, doc.at("mesh"), sc);
  if (doc.contains("regions"))
    parse_regions(r, doc.at("regions"), sc);
  if (doc.contains("materials"))
    parse_materials(r, doc.at("materials"), sc);
  if (doc.contains("boundary"))
    parse_boundary(r, doc.at("boundary"), sc);
  if (doc.contains("source"))
    parse_source(r, doc.at("source"), sc);
  if (doc.contains("time"))
    parse_time(r, doc.at("time"), sc);
  if (doc.contains("stepper"))
    parse_stepper(r, doc.at("stepper"), sc);
  if (doc.contains("thermal"))
    parse_thermal(r, doc.at("thermal"), sc);
  if (doc.contains("output"))
    parse_output(r, doc.at("output"), sc);
  check_references(r, sc);

  if (!r.errors.empty()) {
    std::ostringstream msg;
    msg << "invalid scenario (" << r.errors.size() << " problem"
        << (r.errors.size() == 1 ? "" : "s") << "):";
    for (const auto &e : r.errors)
      msg << "\n  " << e;
    throw ConfigError(msg.str());
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot read scenario file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string preset_document(std::string_view name, int refinement) {
  return preset_json(name, refinement).dump(2);
}

Scenario preset_scenario(std::string_view name, int refinement) {
  return parse_scenario(preset_document(name, refinement));
}

} // namespace tdmaxwell
