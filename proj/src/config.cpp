#include "frontlab/config.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "frontlab/io.hpp"

namespace frontlab {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw std::invalid_argument("config: " + where + ": " + what);
}

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) fail(where, "unknown key '" + it.key() + "'");
}

double num(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<int>();
}

bool boolean(const json& j, const std::string& where) {
  if (!j.is_boolean()) fail(where, "expected a boolean");
  return j.get<bool>();
}

std::string text(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

std::vector<double> num_list(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of numbers");
  std::vector<double> out;
  for (const json& e : j) out.push_back(num(e, where));
  return out;
}

Vec2 vec2(const json& j, const std::string& where) {
  std::vector<double> v = num_list(j, where);
  if (v.size() != 2) fail(where, "expected exactly 2 numbers");
  return {v[0], v[1]};
}

GridSection grid_section(const json& j, const std::string& where) {
  check_keys(j, {"center", "half", "h"}, where);
  GridSection g;
  if (j.contains("center")) g.center = vec2(j["center"], where + ".center");
  if (j.contains("half")) g.half = vec2(j["half"], where + ".half");
  if (j.contains("h")) g.h = num(j["h"], where + ".h");
  return g;
}

ProfileKind profile_kind(const std::string& name, const std::string& where) {
  if (name == "fisher_kpp") return ProfileKind::fisher_kpp;
  if (name == "allee") return ProfileKind::allee;
  if (name == "arrhenius") return ProfileKind::arrhenius;
  if (name == "nicholson") return ProfileKind::nicholson;
  if (name == "bistable_demo") return ProfileKind::bistable_demo;
  fail(where, "unknown profile '" + name + "'");
}

void parse_nonlinearity(const json& j, RunConfig& c) {
  check_keys(j, {"cell", "profile", "allee_r", "kpp", "rho", "amplitude"}, "nonlinearity");
  if (j.contains("cell")) {
    Vec2 L = vec2(j["cell"], "nonlinearity.cell");
    c.cell = {L.x, L.y};
  }
  if (j.contains("profile"))
    c.profile.kind = profile_kind(text(j["profile"], "nonlinearity.profile"), "nonlinearity.profile");
  if (j.contains("allee_r")) c.profile.allee_r = num(j["allee_r"], "nonlinearity.allee_r");
  if (j.contains("kpp")) c.kpp = boolean(j["kpp"], "nonlinearity.kpp");
  if (j.contains("rho")) c.rho = num(j["rho"], "nonlinearity.rho");
  if (j.contains("amplitude")) {
    const json& a = j["amplitude"];
    check_keys(a, {"base", "modes"}, "nonlinearity.amplitude");
    if (a.contains("base")) c.amplitude.base = num(a["base"], "nonlinearity.amplitude.base");
    if (a.contains("modes")) {
      if (!a["modes"].is_array()) fail("nonlinearity.amplitude.modes", "expected an array");
      for (const json& m : a["modes"]) {
        check_keys(m, {"k1", "k2", "a", "phi"}, "nonlinearity.amplitude.modes[]");
        AmplitudeMode mode;
        if (m.contains("k1")) mode.k1 = integer(m["k1"], "modes[].k1");
        if (m.contains("k2")) mode.k2 = integer(m["k2"], "modes[].k2");
        if (m.contains("a")) mode.a = num(m["a"], "modes[].a");
        if (m.contains("phi")) mode.phi = num(m["phi"], "modes[].phi");
        c.amplitude.modes.push_back(mode);
      }
    }
  }
  c.has_nonlinearity = true;
}

void parse_geometry(const json& j, RunConfig& c) {
  check_keys(j, {"type", "center", "radius", "a", "b", "n_vertices", "file"}, "geometry");
  std::string type = j.contains("type") ? text(j["type"], "geometry.type") : "circle";
  int nv = j.contains("n_vertices") ? integer(j["n_vertices"], "geometry.n_vertices") : 256;
  if (type == "circle") {
    Vec2 center = j.contains("center") ? vec2(j["center"], "geometry.center") : Vec2{0.0, 0.0};
    double radius = j.contains("radius") ? num(j["radius"], "geometry.radius") : 1.0;
    c.gamma0 = make_circle(center, radius, nv);
  } else if (type == "ellipse") {
    double a = j.contains("a") ? num(j["a"], "geometry.a") : 1.0;
    double b = j.contains("b") ? num(j["b"], "geometry.b") : 1.0;
    c.gamma0 = make_ellipse(a, b, nv);
  } else if (type == "polygon") {
    if (!j.contains("file")) fail("geometry", "polygon type needs 'file'");
    c.gamma0 = read_polygon_csv(text(j["file"], "geometry.file"));
  } else {
    fail("geometry.type", "unknown type '" + type + "'");
  }
  c.has_geometry = true;
}

void parse_speed(const json& j, RunConfig& c) {
  check_keys(j,
             {"n_theta", "method", "sigma", "fit_window", "level", "strip_length", "strip_width",
              "transverse_samples", "h", "cfl_fraction", "snapshot_dt", "oracle", "constant"},
             "speed");
  if (j.contains("n_theta")) c.speed.n_theta = integer(j["n_theta"], "speed.n_theta");
  if (j.contains("method")) {
    std::string m = text(j["method"], "speed.method");
    if (m == "measured")
      c.speed.method = TableMethod::measured;
    else if (m == "kpp_oracle")
      c.speed.method = TableMethod::kpp_oracle;
    else if (m == "hybrid")
      c.speed.method = TableMethod::hybrid;
    else
      fail("speed.method", "unknown method '" + m + "'");
  }
  SpeedMeasurementConfig& mc = c.speed.measurement;
  if (j.contains("sigma")) mc.sigma = num(j["sigma"], "speed.sigma");
  if (j.contains("fit_window")) {
    Vec2 w = vec2(j["fit_window"], "speed.fit_window");
    mc.fit_t0 = w.x;
    mc.fit_t1 = w.y;
  }
  if (j.contains("level")) mc.level = num(j["level"], "speed.level");
  if (j.contains("strip_length")) mc.strip_length = num(j["strip_length"], "speed.strip_length");
  if (j.contains("strip_width")) mc.strip_width = num(j["strip_width"], "speed.strip_width");
  if (j.contains("transverse_samples"))
    mc.transverse_samples = integer(j["transverse_samples"], "speed.transverse_samples");
  if (j.contains("h")) mc.h = num(j["h"], "speed.h");
  if (j.contains("cfl_fraction")) mc.cfl_fraction = num(j["cfl_fraction"], "speed.cfl_fraction");
  if (j.contains("snapshot_dt")) mc.snapshot_dt = num(j["snapshot_dt"], "speed.snapshot_dt");
  if (j.contains("oracle")) {
    const json& o = j["oracle"];
    check_keys(o, {"cell_grid", "lambda_bounds", "golden_tol", "growth_tol", "max_steps"},
               "speed.oracle");
    KPPOracleConfig& oc = c.speed.oracle;
    if (o.contains("cell_grid")) {
      Vec2 g = vec2(o["cell_grid"], "speed.oracle.cell_grid");
      oc.cell_nx = static_cast<int>(g.x);
      oc.cell_ny = static_cast<int>(g.y);
    }
    if (o.contains("lambda_bounds")) {
      Vec2 b = vec2(o["lambda_bounds"], "speed.oracle.lambda_bounds");
      oc.lambda_min = b.x;
      oc.lambda_max = b.y;
    }
    if (o.contains("golden_tol")) oc.golden_tol = num(o["golden_tol"], "speed.oracle.golden_tol");
    if (o.contains("growth_tol")) oc.growth_tol = num(o["growth_tol"], "speed.oracle.growth_tol");
    if (o.contains("max_steps"))
      oc.max_steps = integer(o["max_steps"], "speed.oracle.max_steps");
  }
  if (j.contains("constant")) c.speed_constant = num(j["constant"], "speed.constant");
  c.has_speed = true;
}

void parse_scaled(const json& j, ScaledRunConfig& rc, bool& dump_fields, const std::string& where) {
  check_keys(j,
             {"epsilon", "horizon", "m", "w", "h", "cfl_fraction", "max_speed", "margin_periods",
              "node_cap", "snapshot_times", "dump_fields"},
             where);
  if (j.contains("epsilon")) rc.epsilon = num(j["epsilon"], where + ".epsilon");
  if (j.contains("horizon")) rc.horizon = num(j["horizon"], where + ".horizon");
  if (j.contains("m")) rc.m = num(j["m"], where + ".m");
  if (j.contains("w")) rc.w = num(j["w"], where + ".w");
  if (j.contains("h")) rc.h = num(j["h"], where + ".h");
  if (j.contains("cfl_fraction")) rc.cfl_fraction = num(j["cfl_fraction"], where + ".cfl_fraction");
  if (j.contains("max_speed")) rc.max_speed = num(j["max_speed"], where + ".max_speed");
  if (j.contains("margin_periods"))
    rc.margin_periods = num(j["margin_periods"], where + ".margin_periods");
  if (j.contains("node_cap")) rc.node_cap = num(j["node_cap"], where + ".node_cap");
  if (j.contains("snapshot_times"))
    rc.snapshot_times = num_list(j["snapshot_times"], where + ".snapshot_times");
  if (j.contains("dump_fields")) dump_fields = boolean(j["dump_fields"], where + ".dump_fields");
}

}  // namespace

GridSpec GridSection::to_grid() const {
  if (!(h > 0.0) || !(half.x > 0.0) || !(half.y > 0.0))
    throw std::invalid_argument("config: grid: h and half extents must be > 0");
  GridSpec g;
  g.nx = 2 * static_cast<int>(std::ceil(half.x / h - 1e-9)) + 1;
  g.ny = 2 * static_cast<int>(std::ceil(half.y / h - 1e-9)) + 1;
  g.hx = g.hy = h;
  g.x0 = center.x - 0.5 * (g.nx - 1) * h;
  g.y0 = center.y - 0.5 * (g.ny - 1) * h;
  return g;
}

Nonlinearity RunConfig::make_nonlinearity() const {
  if (!has_nonlinearity)
    throw std::invalid_argument("config: 'nonlinearity' section is required");
  return Nonlinearity(cell, amplitude, profile, kpp, rho);
}

RunConfig RunConfig::parse_string(const std::string& textdata) {
  json j;
  try {
    j = json::parse(textdata);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("config: JSON parse error: ") + e.what());
  }
  check_keys(j,
             {"workers", "output", "nonlinearity", "geometry", "speed", "hopf", "hj", "simulate",
              "converge", "generation", "regularization"},
             "top level");
  RunConfig c;
  if (j.contains("workers")) c.workers = integer(j["workers"], "workers");
  if (j.contains("output")) {
    check_keys(j["output"], {"dir"}, "output");
    if (j["output"].contains("dir")) c.output_dir = text(j["output"]["dir"], "output.dir");
  }
  if (j.contains("nonlinearity")) parse_nonlinearity(j["nonlinearity"], c);
  if (j.contains("geometry")) parse_geometry(j["geometry"], c);
  if (j.contains("speed")) parse_speed(j["speed"], c);
  if (j.contains("hopf")) {
    const json& h = j["hopf"];
    check_keys(h, {"delta", "times", "write_grid", "grid"}, "hopf");
    if (h.contains("delta")) c.hopf_delta = num(h["delta"], "hopf.delta");
    if (h.contains("times")) c.hopf_times = num_list(h["times"], "hopf.times");
    if (h.contains("write_grid")) c.hopf_write_grid = boolean(h["write_grid"], "hopf.write_grid");
    if (h.contains("grid")) c.hopf_grid = grid_section(h["grid"], "hopf.grid");
    c.has_hopf = true;
  }
  if (j.contains("hj")) {
    const json& h = j["hj"];
    check_keys(h, {"scheme", "alpha", "sigma", "times", "grid"}, "hj");
    if (h.contains("scheme")) {
      c.hj_scheme = text(h["scheme"], "hj.scheme");
      if (c.hj_scheme != "lf" && c.hj_scheme != "viscous")
        fail("hj.scheme", "must be 'lf' or 'viscous'");
    }
    if (h.contains("alpha")) c.hj_alpha = num(h["alpha"], "hj.alpha");
    if (h.contains("sigma")) c.hj_sigma = num(h["sigma"], "hj.sigma");
    if (h.contains("times")) c.hj_times = num_list(h["times"], "hj.times");
    if (h.contains("grid")) c.hj_grid = grid_section(h["grid"], "hj.grid");
    c.has_hj = true;
  }
  if (j.contains("simulate")) {
    parse_scaled(j["simulate"], c.simulate, c.simulate_dump_fields, "simulate");
    c.has_simulate = true;
  }
  if (j.contains("converge")) {
    const json& v = j["converge"];
    check_keys(v, {"epsilons", "beta", "eta", "tau", "T", "sample_times"}, "converge");
    if (v.contains("epsilons")) c.converge.epsilons = num_list(v["epsilons"], "converge.epsilons");
    if (v.contains("beta")) c.converge.beta = num(v["beta"], "converge.beta");
    if (v.contains("eta")) c.converge.eta = num(v["eta"], "converge.eta");
    if (v.contains("tau")) c.converge.tau = num(v["tau"], "converge.tau");
    if (v.contains("T")) c.converge.T = num(v["T"], "converge.T");
    if (v.contains("sample_times"))
      c.converge.sample_times = num_list(v["sample_times"], "converge.sample_times");
    c.converge.scaled = c.simulate;  // scaled template from the simulate section
    c.has_converge = true;
  }
  if (j.contains("generation")) {
    const json& g = j["generation"];
    check_keys(g, {"epsilons", "eta", "beta_gen", "horizon"}, "generation");
    if (g.contains("epsilons"))
      c.generation.epsilons = num_list(g["epsilons"], "generation.epsilons");
    if (g.contains("eta")) c.generation.eta = num(g["eta"], "generation.eta");
    if (g.contains("beta_gen")) c.generation.beta_gen = num(g["beta_gen"], "generation.beta_gen");
    if (g.contains("horizon")) c.generation.horizon = num(g["horizon"], "generation.horizon");
    c.generation.scaled = c.simulate;
    c.has_generation = true;
  }
  if (j.contains("regularization")) {
    const json& r = j["regularization"];
    check_keys(r, {"alphas", "times", "sigma_cap", "grid"}, "regularization");
    if (r.contains("alphas")) c.reg_alphas = num_list(r["alphas"], "regularization.alphas");
    if (r.contains("times")) c.reg_times = num_list(r["times"], "regularization.times");
    if (r.contains("sigma_cap")) c.reg_sigma_cap = num(r["sigma_cap"], "regularization.sigma_cap");
    if (r.contains("grid")) c.reg_grid = grid_section(r["grid"], "regularization.grid");
    c.has_regularization = true;
  }
  return c;
}

RunConfig RunConfig::parse_file(const std::string& path) {
  return parse_string(read_text_file(path));
}

}  // namespace frontlab
