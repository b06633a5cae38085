#include "aclab/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"

namespace aclab {

namespace {

using nlohmann::json;

constexpr double kAuto = std::numeric_limits<double>::quiet_NaN();

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) fail(where + ": unknown key '" + it.key() + "'");
  }
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(where + ": value must be finite");
  return v;
}

double positive(const json& j, const std::string& where) {
  const double v = number(j, where);
  if (!(v > 0.0)) fail(where + ": must be positive");
  return v;
}

Point point(const json& j, int dim, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    fail(where + ": expected an array of " + std::to_string(dim) + " numbers");
  }
  Point p{0.0, 0.0, 0.0};
  for (int a = 0; a < dim; ++a) p[static_cast<std::size_t>(a)] = number(j[static_cast<std::size_t>(a)], where);
  return p;
}

// A scalar broadcast to every axis, or one entry per axis.
template <class T, class F>
std::vector<T> per_axis(const json& j, int dim, const std::string& where, F&& convert) {
  std::vector<T> out;
  if (j.is_array()) {
    if (static_cast<int>(j.size()) != dim) fail(where + ": expected " + std::to_string(dim) + " entries");
    for (const auto& e : j) out.push_back(convert(e));
  } else {
    out.assign(static_cast<std::size_t>(dim), convert(j));
  }
  return out;
}

Boundary boundary_from(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where + ": expected \"periodic\" or \"reflective\"");
  const auto s = j.get<std::string>();
  if (s == "periodic") return Boundary::periodic;
  if (s == "reflective") return Boundary::reflective;
  fail(where + ": unknown boundary '" + s + "'");
}

Shape parse_shape(const json& j, int dim, const std::string& where) {
  if (!j.is_object() || !j.contains("type")) fail(where + ": shape needs a \"type\"");
  const auto type = j["type"].get<std::string>();
  if (type == "ball") {
    reject_unknown(j, {"type", "center", "radius"}, where);
    return Shape::ball(point(j.at("center"), dim, where + ".center"), positive(j.at("radius"), where + ".radius"));
  }
  if (type == "half_space") {
    reject_unknown(j, {"type", "point", "normal"}, where);
    return Shape::half_space(point(j.at("point"), dim, where + ".point"),
                             point(j.at("normal"), dim, where + ".normal"));
  }
  if (type == "box") {
    reject_unknown(j, {"type", "lo", "hi"}, where);
    return Shape::box(point(j.at("lo"), dim, where + ".lo"), point(j.at("hi"), dim, where + ".hi"), dim);
  }
  if (type == "union" || type == "intersection") {
    reject_unknown(j, {"type", "of"}, where);
    const json& of = j.at("of");
    if (!of.is_array() || of.size() < 2) fail(where + ".of: needs at least two shapes");
    Shape acc = parse_shape(of[0], dim, where + ".of[0]");
    for (std::size_t i = 1; i < of.size(); ++i) {
      Shape next = parse_shape(of[i], dim, where + ".of[" + std::to_string(i) + "]");
      acc = type == "union" ? Shape::unite(acc, next) : Shape::intersect(acc, next);
    }
    return acc;
  }
  if (type == "complement") {
    reject_unknown(j, {"type", "of"}, where);
    return Shape::complement(parse_shape(j.at("of"), dim, where + ".of"));
  }
  fail(where + ": unknown shape type '" + type + "'");
}

ReferenceFlow parse_flow(const json& j, int dim) {
  reject_unknown(j, {"kind", "r0", "center", "t_cut"}, "reference_flow");
  ReferenceFlow f;
  const auto kind = j.value("kind", std::string("smooth_sphere"));
  if (kind == "smooth_sphere") {
    f.kind = ReferenceFlow::Kind::smooth_sphere;
  } else if (kind == "truncated_sphere") {
    f.kind = ReferenceFlow::Kind::truncated_sphere;
    f.t_cut = positive(j.at("t_cut"), "reference_flow.t_cut");
  } else {
    fail("reference_flow.kind: unknown kind '" + kind + "'");
  }
  f.r0 = positive(j.at("r0"), "reference_flow.r0");
  f.dim = dim;
  if (j.contains("center")) f.center = point(j["center"], dim, "reference_flow.center");
  try {
    f.validate();
  } catch (const std::invalid_argument& e) {
    fail(std::string("reference_flow: ") + e.what());
  }
  return f;
}

TestFunction parse_test(const json& j, int dim, const std::string& where) {
  reject_unknown(j, {"kind", "center", "radius", "ramp", "amplitude", "window"}, where);
  const auto kind = j.at("kind").get<std::string>();
  const Point c = point(j.at("center"), dim, where + ".center");
  const double r = positive(j.at("radius"), where + ".radius");
  const double amp = j.contains("amplitude") ? number(j["amplitude"], where + ".amplitude") : 1.0;
  std::optional<TimeWindow> window;
  if (j.contains("window")) {
    const json& w = j["window"];
    reject_unknown(w, {"start", "end", "ramp"}, where + ".window");
    window = TimeWindow{number(w.at("start"), where + ".window.start"),
                        number(w.at("end"), where + ".window.end"),
                        positive(w.at("ramp"), where + ".window.ramp")};
  }
  try {
    if (kind == "gaussian_bump") return TestFunction::gaussian_bump(c, r, amp, window);
    if (kind == "polynomial_bump") return TestFunction::polynomial_bump(c, r, amp, window);
    if (kind == "constant_on_window") {
      return TestFunction::constant_on_window(c, r, positive(j.at("ramp"), where + ".ramp"), amp, window);
    }
  } catch (const std::invalid_argument& e) {
    fail(where + ": " + e.what());
  }
  fail(where + ": unknown test kind '" + kind + "'");
}

}  // namespace

const std::vector<CheckDefinition>& check_registry() {
  static const std::vector<CheckDefinition> registry = {
      {"energy_dissipation", CheckScope::per_epsilon, {{"slack", 1e-2}}, "", false, false},
      {"equipartition", CheckScope::per_epsilon, {{"tolerance", 1e-2}}, "", false, false},
      {"discrepancy_bound", CheckScope::per_epsilon, {{"fraction", 1e-2}}, "", false, false},
      {"discrepancy_decay", CheckScope::sweep, {}, "", false, false},
      {"discrepancy_ratio", CheckScope::sweep, {{"bound", 0.67}}, "", false, false},
      {"profile_fidelity", CheckScope::per_epsilon, {{"tolerance", 1e-3}}, "", false, true},
      {"radius_law", CheckScope::per_epsilon, {{"time", kAuto}, {"tolerance", 0.03}}, "", true, false},
      {"brakke", CheckScope::per_epsilon, {{"t1", kAuto}, {"t2", kAuto}, {"fraction", 0.05}}, "suite",
       false, false},
      {"bv_residual", CheckScope::per_epsilon,
       {{"t1", kAuto}, {"t2", kAuto}, {"tolerance", 0.1}, {"floor", 1e-3}}, "volume", false, false},
      {"bv_convergence", CheckScope::sweep, {{"t1", kAuto}, {"t2", kAuto}, {"floor", 1e-3}}, "volume",
       false, false},
      {"bv_jump_detect", CheckScope::per_epsilon,
       {{"t1", kAuto}, {"t2", kAuto}, {"expected", kAuto}, {"tolerance", 0.01}}, "volume", true, false},
      {"l2_flow", CheckScope::per_epsilon, {{"slack", 1e-2}}, "suite", false, false},
      {"l2_amplitude_invariance", CheckScope::per_epsilon, {{"factor", 10.0}, {"tolerance", 1e-10}},
       "suite", false, false},
      {"spacetime_identity", CheckScope::per_epsilon, {{"tolerance", 1e-8}}, "", false, false},
      {"abscont_blocks", CheckScope::per_epsilon,
       {{"delta", 1e-4}, {"eta", 1e-4}, {"block_cells", 8}, {"block_intervals", 4}}, "", false, false},
      {"abscont_jump_detect", CheckScope::per_epsilon,
       {{"delta", 1e-4}, {"eta", 1e-4}, {"block_cells", 8}, {"block_intervals", 4}, {"time", kAuto},
        {"min_blocks", 1}},
       "", true, false},
      {"density_ratio", CheckScope::per_epsilon,
       {{"t_min", 0.002}, {"r_max", 0.2}, {"radii", 6}, {"bound", 10.0}}, "", false, false},
      {"mfp_lsc", CheckScope::sweep, {{"time", kAuto}, {"slack", 0.05}, {"samples", 4096}, {"spread", 10.0}},
       "", true, false},
      {"mfp_pairing_gap", CheckScope::sweep, {{"time", kAuto}, {"samples", 4096}}, "suite", true, false},
      {"geometric_identities", CheckScope::flow,
       {{"r0", 1.0}, {"dim", 2}, {"t_max", kAuto}, {"samples", 8}, {"tolerance", 1e-12}}, "", false, false},
      {"coarea_mesh", CheckScope::flow,
       {{"r0", 1.0}, {"dim", 3}, {"time", 0.1}, {"size", 1e-8}, {"tolerance", 1e-6}}, "", false, false},
  };
  return registry;
}

const CheckDefinition& find_check(const std::string& name) {
  for (const auto& def : check_registry()) {
    if (def.name == name) return def;
  }
  throw ConfigError("unknown check '" + name + "'");
}

double CheckConfig::param(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end()) throw std::logic_error("check " + name + ": no parameter '" + key + "'");
  return it->second;
}

bool CheckConfig::has(const std::string& key) const {
  const auto it = params.find(key);
  return it != params.end() && !std::isnan(it->second);
}

Grid ScenarioConfig::grid_for(double eps) const {
  std::vector<int> res = resolution;
  if (matched_scaling) {
    for (auto& r : res) {
      const double scaled = r * reference_eps / eps;
      r = static_cast<int>(std::lround(scaled));
      if (std::abs(scaled - r) > 1e-9 * scaled) {
        std::ostringstream msg;
        msg << "matched grid scaling gives a non-integer resolution " << scaled << " for eps = " << eps;
        throw ConfigError(msg.str());
      }
    }
  }
  return Grid(dim, res, extent, boundary, origin);
}

const std::vector<TestFunction>& ScenarioConfig::test_list(const std::string& list) const {
  const auto it = tests.find(list);
  if (it == tests.end()) throw ConfigError("scenario " + name + ": no test list '" + list + "'");
  return it->second;
}

ScenarioConfig parse_scenario(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail("config: top level must be an object");
  reject_unknown(j,
                 {"name", "description", "dimension", "extent", "origin", "resolution", "boundary",
                  "grid_scaling", "source", "shape", "reference_flow", "epsilons", "safety", "t_end",
                  "steps", "snapshot_every", "snapshots", "workers", "monitor_energy", "tests", "checks",
                  "output", "dump_fields"},
                 "config");

  ScenarioConfig cfg;
  try {
    cfg.name = j.at("name").get<std::string>();
    if (cfg.name.empty() || cfg.name.find(',') != std::string::npos) fail("name: must be nonempty without commas");
    cfg.dim = j.at("dimension").get<int>();
    if (cfg.dim < 1 || cfg.dim > 3) fail("dimension: must be 1, 2 or 3");
    cfg.extent = per_axis<double>(j.at("extent"), cfg.dim, "extent", [](const json& e) { return positive(e, "extent"); });
    cfg.origin = j.contains("origin")
                     ? per_axis<double>(j["origin"], cfg.dim, "origin", [](const json& e) { return number(e, "origin"); })
                     : std::vector<double>(static_cast<std::size_t>(cfg.dim), 0.0);
    cfg.resolution = per_axis<int>(j.at("resolution"), cfg.dim, "resolution", [](const json& e) {
      if (!e.is_number_integer()) fail("resolution: expected an integer");
      return e.get<int>();
    });
    cfg.boundary = j.contains("boundary")
                       ? per_axis<Boundary>(j["boundary"], cfg.dim, "boundary",
                                            [](const json& e) { return boundary_from(e, "boundary"); })
                       : std::vector<Boundary>(static_cast<std::size_t>(cfg.dim), Boundary::periodic);

    if (j.contains("grid_scaling")) {
      const json& gs = j["grid_scaling"];
      reject_unknown(gs, {"mode", "reference_epsilon"}, "grid_scaling");
      const auto mode = gs.at("mode").get<std::string>();
      if (mode == "matched") {
        cfg.matched_scaling = true;
        cfg.reference_eps = positive(gs.at("reference_epsilon"), "grid_scaling.reference_epsilon");
      } else if (mode != "fixed") {
        fail("grid_scaling.mode: expected \"matched\" or \"fixed\"");
      }
    }

    const auto source = j.value("source", std::string("pde"));
    if (source == "pde") {
      cfg.source = Source::pde;
    } else if (source == "analytic") {
      cfg.source = Source::analytic;
    } else {
      fail("source: expected \"pde\" or \"analytic\"");
    }
    if (j.contains("shape")) cfg.shape = parse_shape(j["shape"], cfg.dim, "shape");
    if (j.contains("reference_flow")) cfg.flow = parse_flow(j["reference_flow"], cfg.dim);
    if (cfg.source == Source::pde && !cfg.shape) fail("shape: required for pde scenarios");
    if (cfg.source == Source::analytic && !cfg.flow) fail("reference_flow: required for analytic scenarios");

    const json& eps = j.at("epsilons");
    if (!eps.is_array() || eps.empty()) fail("epsilons: expected a nonempty array");
    for (const auto& e : eps) cfg.epsilons.push_back(positive(e, "epsilons"));
    std::sort(cfg.epsilons.begin(), cfg.epsilons.end(), std::greater<>());
    if (std::adjacent_find(cfg.epsilons.begin(), cfg.epsilons.end()) != cfg.epsilons.end()) {
      fail("epsilons: duplicate values");
    }

    if (j.contains("safety")) {
      cfg.safety = positive(j["safety"], "safety");
      if (cfg.safety > 1.0) fail("safety: must lie in (0, 1]");
    }
    if (j.contains("t_end")) {
      cfg.t_end = number(j["t_end"], "t_end");
      if (*cfg.t_end < 0.0) fail("t_end: must be >= 0");
    }
    if (j.contains("steps")) {
      cfg.steps = j["steps"].get<long>();
      if (*cfg.steps < 1) fail("steps: must be positive");
    }
    if (cfg.t_end.has_value() == cfg.steps.has_value()) fail("config: give exactly one of t_end and steps");
    if (cfg.steps && cfg.source == Source::analytic) fail("steps: not meaningful for analytic scenarios");
    if (j.contains("snapshot_every")) cfg.snapshot_every = positive(j["snapshot_every"], "snapshot_every");
    if (j.contains("snapshots")) {
      cfg.snapshots = j["snapshots"].get<int>();
      if (*cfg.snapshots < 1) fail("snapshots: must be positive");
    }
    if (cfg.snapshot_every.has_value() == cfg.snapshots.has_value()) {
      fail("config: give exactly one of snapshot_every and snapshots");
    }
    if (j.contains("workers")) {
      cfg.workers = j["workers"].get<int>();
      if (cfg.workers < 1) fail("workers: must be positive");
    }
    cfg.monitor_energy = j.value("monitor_energy", false);
    cfg.dump_fields = j.value("dump_fields", false);
    cfg.output = j.value("output", std::string("out/") + cfg.name);

    if (j.contains("tests")) {
      const json& t = j["tests"];
      if (!t.is_object()) fail("tests: expected an object of named lists");
      for (auto it = t.begin(); it != t.end(); ++it) {
        if (!it.value().is_array() || it.value().empty()) fail("tests." + it.key() + ": expected a nonempty array");
        auto& list = cfg.tests[it.key()];
        for (std::size_t i = 0; i < it.value().size(); ++i) {
          list.push_back(parse_test(it.value()[i], cfg.dim, "tests." + it.key() + "[" + std::to_string(i) + "]"));
        }
      }
    }

    if (j.contains("checks")) {
      const json& cks = j["checks"];
      if (!cks.is_object()) fail("checks: expected an object keyed by check name");
      for (auto it = cks.begin(); it != cks.end(); ++it) {
        const CheckDefinition* def = nullptr;
        try {
          def = &find_check(it.key());
        } catch (const ConfigError&) {
          fail("checks: unknown check '" + it.key() + "'");
        }
        CheckConfig cc;
        cc.name = def->name;
        cc.tests = def->tests;
        for (const auto& [k, v] : def->defaults) cc.params[k] = v;
        const json& body = it.value();
        if (!body.is_object()) fail("checks." + cc.name + ": expected an object");
        for (auto p = body.begin(); p != body.end(); ++p) {
          const std::string where = "checks." + cc.name + "." + p.key();
          if (p.key() == "tests") {
            if (def->tests.empty()) fail(where + ": this check takes no tests");
            cc.tests = p.value().get<std::string>();
          } else if (p.key() == "epsilons") {
            if (def->scope != CheckScope::per_epsilon) fail(where + ": only per-eps checks can be restricted");
            for (const auto& e : p.value()) cc.only_epsilons.push_back(positive(e, where));
          } else if (cc.params.count(p.key())) {
            cc.params[p.key()] = number(p.value(), where);
          } else {
            fail(where + ": unknown parameter");
          }
        }
        if (def->needs_flow && !cfg.flow) fail("checks." + cc.name + ": requires reference_flow");
        if (def->needs_shape && !cfg.shape) fail("checks." + cc.name + ": requires shape");
        if (!cc.tests.empty() && !cfg.tests.count(cc.tests)) {
          fail("checks." + cc.name + ": test list '" + cc.tests + "' is not defined");
        }
        for (double e : cc.only_epsilons) {
          if (std::find(cfg.epsilons.begin(), cfg.epsilons.end(), e) == cfg.epsilons.end()) {
            fail("checks." + cc.name + ".epsilons: " + std::to_string(e) + " is not in the sweep");
          }
        }
        if (def->scope == CheckScope::sweep && cfg.epsilons.size() < 3) {
          fail("checks." + cc.name + ": needs a sweep of at least three eps values");
        }
        cfg.checks.push_back(std::move(cc));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("config: ") + e.what());
  }

  // Grid-dependent constraints.
  for (double eps : cfg.epsilons) {
    Grid g = [&] {
      try {
        return cfg.grid_for(eps);
      } catch (const std::invalid_argument& e) {
        fail(std::string("grid: ") + e.what());
      }
    }();
    const double ratio = eps / g.spacing();
    if (ratio < 2.0 * (1.0 - 1e-12)) {
      std::ostringstream msg;
      msg << "epsilons: eps = " << eps << " gives eps/h = " << ratio
          << ", below the required ratio 2 (h = " << g.spacing() << ")";
      fail(msg.str());
    }
    for (const auto& [list, tests] : cfg.tests) {
      for (std::size_t i = 0; i < tests.size(); ++i) {
        if (!tests[i].support_inside(g)) {
          fail("tests." + list + "[" + std::to_string(i) + "]: support touches the domain boundary");
        }
      }
    }
  }
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace aclab
