// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// argv[1] is the CLI binary, used by the determinism criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "frontlab/contour.hpp"
#include "frontlab/frontspeed.hpp"
#include "frontlab/harness.hpp"
#include "frontlab/hj.hpp"
#include "frontlab/hopf.hpp"
#include "frontlab/io.hpp"
#include "frontlab/rdsim.hpp"

using namespace frontlab;

namespace {

std::string g_cli;

double now_s() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

Nonlinearity homogeneous_kpp() {
  return Nonlinearity({1.0, 1.0}, Amplitude{1.0, {}}, Profile{ProfileKind::fisher_kpp}, true, 0.1);
}

Nonlinearity striped_kpp() {
  return Nonlinearity({1.0, 1.0}, Amplitude{1.0, {{1, 0, 0.5, 0.0}}},
                      Profile{ProfileKind::fisher_kpp}, true, 0.1);
}

KPPOracleConfig striped_oracle(int nx, int ny) {
  KPPOracleConfig cfg;
  cfg.cell_nx = nx;
  cfg.cell_ny = ny;
  return cfg;
}

GridSpec box(double half, double h) {
  int n = static_cast<int>(std::lround(2.0 * half / h)) + 1;
  return {n, n, -half, -half, h, h};
}

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (detail.tellp() > 0) detail << "; ";
      detail << what;
    }
  }
  void note(const std::string& what) {
    if (detail.tellp() > 0) detail << "; ";
    detail << what;
  }
};

// ---- criterion 1: homogeneous KPP speed -----------------------------------

Check criterion1() {
  Check c;
  Nonlinearity nl = homogeneous_kpp();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  struct Dir {
    const char* name;
    Vec2 n;
  } dirs[] = {{"e1", {1, 0}}, {"e2", {0, 1}}, {"diag", {inv_sqrt2, inv_sqrt2}}};
  SpeedMeasurementConfig mc;
  for (const Dir& d : dirs) {
    double t0 = now_s();
    MeasuredSpeed m = measure_speed(d.n, nl, mc);
    double wall = now_s() - t0;
    c.require(std::abs(m.speed - 2.0) / 2.0 <= 0.05,
              std::string(d.name) + " measured " + format_double(m.speed) + " off by >5%");
    c.require(wall <= 120.0, std::string(d.name) + " took " + format_double(wall) + "s > 120s");
    c.note(std::string(d.name) + " c=" + format_double(m.speed));
  }
  KPPOracleConfig oc = striped_oracle(16, 16);
  for (const Dir& d : dirs) {
    OracleResult r = kpp_speed_oracle(d.n, nl, oc);
    c.require(std::abs(r.c_star - 2.0) / 2.0 <= 0.001,
              std::string(d.name) + " oracle " + format_double(r.c_star) + " off by >0.1%");
  }
  return c;
}

// ---- criterion 2: heterogeneous cross-validation ---------------------------

Check criterion2() {
  Check c;
  Nonlinearity nl = striped_kpp();
  OracleResult o1 = kpp_speed_oracle({1, 0}, nl, striped_oracle(64, 8));
  OracleResult o2 = kpp_speed_oracle({0, 1}, nl, striped_oracle(64, 8));
  SpeedMeasurementConfig mc;
  MeasuredSpeed m1 = measure_speed({1, 0}, nl, mc);
  MeasuredSpeed m2 = measure_speed({0, 1}, nl, mc);
  c.require(std::abs(m1.speed - o1.c_star) / o1.c_star <= 0.05,
            "e1 measured/oracle differ by >5%");
  c.require(std::abs(m2.speed - o2.c_star) / o2.c_star <= 0.05,
            "e2 measured/oracle differ by >5%");
  double gap = o1.c_star - o2.c_star;
  OracleResult f1 = kpp_speed_oracle({1, 0}, nl, striped_oracle(128, 16));
  OracleResult f2 = kpp_speed_oracle({0, 1}, nl, striped_oracle(128, 16));
  double gap_fine = f1.c_star - f2.c_star;
  c.require(std::abs(gap_fine - gap) <= 0.02 * std::abs(gap),
            "gap moved by >2% under refinement (" + format_double(gap) + " -> " +
                format_double(gap_fine) + ")");
  c.note("gap=" + format_double(gap) + " refined=" + format_double(gap_fine) +
         " c_meas(e1)=" + format_double(m1.speed) + " c_orc(e1)=" + format_double(o1.c_star));
  return c;
}

// ---- criterion 3: speed-table continuity surrogate --------------------------

Check criterion3() {
  Check c;
  Nonlinearity nl = striped_kpp();
  SpeedTableConfig tc;
  tc.method = TableMethod::kpp_oracle;
  tc.oracle = striped_oracle(64, 8);
  tc.n_theta = 16;
  SpeedTable t16 = build_speed_table(nl, tc);
  tc.n_theta = 32;
  SpeedTable t32 = build_speed_table(nl, tc);
  double j16 = t16.max_adjacent_jump(), j32 = t32.max_adjacent_jump();
  c.require(j32 <= j16 + 1e-6, "max jump grew on refinement: " + format_double(j16) + " -> " +
                                   format_double(j32));
  for (const SpeedTable* t : {&t16, &t32})
    c.require(t->max_adjacent_jump() <= 5.0 * t->median_adjacent_jump() + 1e-12,
              "a jump exceeds 5x the median");
  c.note("max jump " + format_double(j16) + " (16) vs " + format_double(j32) + " (32)");
  return c;
}

// ---- criterion 4: Hopf exactness -------------------------------------------

Check criterion4() {
  Check c;
  ConvexCurve circle = make_circle({0, 0}, 1.0, 256);
  double speed = 1.5;
  HopfEvaluator ev = HopfEvaluator::constant_speed(circle, speed);
  for (double t : {0.0, 0.5, 1.0}) {
    ConvexCurve expect = make_circle({0, 0}, 1.0 + speed * t, 256);
    double d = hausdorff(ev.interface_at(t), expect);
    c.require(d <= 1e-3, "t=" + format_double(t) + " d_H=" + format_double(d) + " > 1e-3");
  }
  std::mt19937 rng(20240817);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  bool convex_ok = true;
  for (int k = 0; k < 10000; ++k) {
    Vec2 a{u(rng), u(rng)}, b{u(rng), u(rng)};
    Vec2 mid{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
    if (ev.value(0.7, mid) > 0.5 * (ev.value(0.7, a) + ev.value(0.7, b)) + 1e-12) {
      convex_ok = false;
      break;
    }
  }
  c.require(convex_ok, "midpoint convexity violated beyond 1e-12");
  return c;
}

// ---- criterion 5: LF scheme vs Hopf ----------------------------------------

double lf_sup_hausdorff(double h, const HopfEvaluator& ev) {
  GridSpec g = box(4.5, h);
  LFSolver lf(make_constant_table(2.0, 16), g);
  ScalarField w0(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) w0.at(i, j) = ev.value(0.0, {g.x(i), g.y(j)});
  double sup = 0.0;
  for (const HJState& s : lf.run(w0, {0.25, 0.5, 0.75, 1.0})) {
    std::vector<Contour> cs = extract_level_set(s.field, 0.0);
    if (cs.empty()) throw std::runtime_error("LF zero level vanished");
    std::vector<Vec2> pts;
    for (const Contour& k : cs) {
      if (!k.closed) throw std::runtime_error("LF zero level hit the boundary");
      pts.insert(pts.end(), k.points.begin(), k.points.end());
    }
    sup = std::max(sup, hausdorff(convex_hull(pts), ev.interface_at(s.time)));
  }
  return sup;
}

Check criterion5() {
  Check c;
  HopfEvaluator ev = HopfEvaluator::constant_speed(make_circle({0, 0}, 1.5, 256), 2.0);
  double d1 = lf_sup_hausdorff(0.1, ev);
  double d2 = lf_sup_hausdorff(0.05, ev);
  c.require(d1 <= 3.0 * 0.1, "h=0.1: sup d_H=" + format_double(d1) + " > 3h");
  c.require(d2 <= 3.0 * 0.05, "h=0.05: sup d_H=" + format_double(d2) + " > 3h/2");
  c.note("sup d_H " + format_double(d1) + " (h=0.1) vs " + format_double(d2) + " (h=0.05)");
  return c;
}

// ---- criterion 6: viscous regularization -----------------------------------

Check criterion6() {
  Check c;
  double h = 0.05;
  RegularizationConfig rc;
  rc.alphas = {0.2, 0.1, 0.05};
  rc.grid = box(7.0, h);
  rc.snapshot_times = {0.25, 0.5};
  rc.table = make_constant_table(2.0, 16);
  HopfEvaluator ev = HopfEvaluator::constant_speed(make_circle({0, 0}, 4.0, 256), 2.0, 0.5);
  std::vector<RegularizationRecord> recs = run_regularization(rc, ev);
  for (size_t k = 0; k + 1 < recs.size(); ++k)
    c.require(recs[k + 1].sup_hausdorff < recs[k].sup_hausdorff,
              "sup d_H not strictly decreasing at alpha=" + format_double(recs[k + 1].alpha));
  for (const RegularizationRecord& r : recs) {
    for (const ViscousSnapshot& s : r.snapshots) {
      c.require(s.grad_max <= 1.0 + 1e-6, "gradient bound broken at alpha=" +
                                              format_double(r.alpha) + " t=" +
                                              format_double(s.time));
      c.require(s.min_second_diff >= -10.0 * h,
                "second differences below -10h at alpha=" + format_double(r.alpha));
      ConvexCurve hopf = ev.interface_at(s.time);
      bool inside = true;
      for (const Vec2& p : s.curve.vertices)
        if (!(signed_distance(hopf, p) < 0.0)) inside = false;
      c.require(inside, "Gamma^alpha not strictly inside at alpha=" + format_double(r.alpha));
    }
    c.note("alpha=" + format_double(r.alpha) + " sup=" + format_double(r.sup_hausdorff));
  }
  return c;
}

// ---- criterion 7: main theorem sweep ----------------------------------------

void check_sweep(Check& c, const std::vector<ConvergenceRecord>& recs,
                 const std::vector<double>& eps, const std::vector<double>& times,
                 bool absolute, const std::string& tag) {
  auto rec = [&](double e, double t) -> const ConvergenceRecord& {
    for (const ConvergenceRecord& r : recs)
      if (std::abs(r.epsilon - e) < 1e-12 && std::abs(r.t - t) < 1e-12) return r;
    throw std::runtime_error("missing record");
  };
  for (double t : times)
    for (size_t k = 0; k + 1 < eps.size(); ++k) {
      const ConvergenceRecord &a = rec(eps[k], t), &b = rec(eps[k + 1], t);
      c.require(b.M_in < a.M_in, tag + ": M_in not strictly decreasing at t=" + format_double(t));
      c.require(b.M_out < a.M_out,
                tag + ": M_out not strictly decreasing at t=" + format_double(t));
    }
  if (absolute)
    for (double t : times) {
      const ConvergenceRecord& r = rec(eps.back(), t);
      c.require(r.M_in <= 0.1, tag + ": M_in=" + format_double(r.M_in) + " > 0.1 at t=" +
                                   format_double(t));
      c.require(r.M_out <= 0.1, tag + ": M_out=" + format_double(r.M_out) + " > 0.1 at t=" +
                                    format_double(t));
    }
}

Check criterion7() {
  Check c;
  double t0 = now_s();
  ConvergenceConfig cfg;
  cfg.epsilons = {0.08, 0.04, 0.02};
  cfg.beta = 0.2;
  cfg.eta = 0.1;
  cfg.tau = 0.2;
  cfg.T = 1.0;
  cfg.sample_times = {0.2, 0.6, 1.0};
  cfg.scaled.gamma0 = make_circle({0, 0}, 1.0, 256);
  cfg.scaled.max_speed = 2.2;
  // best-effort numerics: sharp initial ramp, conservative time step. The
  // absolute M_in threshold still cannot clear the O(eps log eps) front lag.
  cfg.scaled.m = 0.95;
  cfg.scaled.w = 0.1;
  cfg.scaled.cfl_fraction = 0.45;

  Nonlinearity homog = homogeneous_kpp();
  HopfEvaluator ev_h = HopfEvaluator::constant_speed(cfg.scaled.gamma0, 2.0);
  std::vector<ConvergenceRecord> recs_h = run_convergence(cfg, homog, ev_h);
  check_sweep(c, recs_h, cfg.epsilons, cfg.sample_times, true, "homog");

  Nonlinearity het = striped_kpp();
  SpeedTableConfig tc;
  tc.method = TableMethod::kpp_oracle;
  tc.oracle = striped_oracle(64, 8);
  tc.n_theta = 16;
  HopfEvaluator ev_s(cfg.scaled.gamma0, build_speed_table(het, tc));
  std::vector<ConvergenceRecord> recs_s = run_convergence(cfg, het, ev_s);
  check_sweep(c, recs_s, cfg.epsilons, cfg.sample_times, false, "striped");

  double wall = now_s() - t0;
  c.require(wall <= 1800.0, "sweep took " + format_double(wall) + "s > 30 min");
  for (const ConvergenceRecord& r : recs_h)
    if (std::abs(r.epsilon - 0.02) < 1e-12)
      c.note("homog t=" + format_double(r.t) + " M_in=" + format_double(r.M_in) +
             " M_out=" + format_double(r.M_out));
  c.note("wall=" + format_double(wall) + "s");
  return c;
}

// ---- criterion 8: generation time -------------------------------------------

Check criterion8() {
  Check c;
  GenerationConfig cfg;
  cfg.epsilons = {0.1, 0.05, 0.025};
  cfg.eta = 0.05;
  cfg.beta_gen = 0.2;
  cfg.horizon = 0.5;
  cfg.scaled.gamma0 = make_circle({0, 0}, 1.0, 256);
  cfg.scaled.max_speed = 2.2;
  Nonlinearity nl = homogeneous_kpp();
  HopfEvaluator ev = HopfEvaluator::constant_speed(cfg.scaled.gamma0, 2.0);
  GenerationResult res = run_generation(cfg, nl, ev);
  for (const GenerationRecord& r : res.records)
    c.require(r.reached, "epsilon=" + format_double(r.epsilon) + " never reached 1-eta");
  c.require(res.rel_residual <= 0.20,
            "rel residual " + format_double(res.rel_residual) + " > 20%");
  c.note("slope=" + format_double(res.slope) +
         " rel_residual=" + format_double(res.rel_residual));
  return c;
}

// ---- criterion 9: comparison principle and bound preservation ---------------

Check criterion9() {
  Check c;
  Nonlinearity nl = striped_kpp();
  SolverConfig scfg;
  scfg.box = box(2.0, 0.25);
  RDSolver solver(nl, scfg);
  std::mt19937 rng(987654321u);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int pair = 0; pair < 10; ++pair) {
    ScalarField f1(scfg.box), f2(scfg.box);
    for (size_t k = 0; k < f1.values.size(); ++k) {
      double a = u(rng), b = u(rng);
      f1.values[k] = std::min(a, b);
      f2.values[k] = std::max(a, b);
    }
    ScalarField lo = f1, hi = f2;
    for (int step = 0; step < 1000; ++step) {
      lo = solver.step(lo);
      hi = solver.step(hi);
    }
    bool ordered = true, bounded = true;
    for (size_t k = 0; k < lo.values.size(); ++k) {
      if (lo.values[k] > hi.values[k] + 1e-12) ordered = false;
      for (double v : {lo.values[k], hi.values[k]})
        if (v < 0.0 || v > 1.0 + 1e-12) bounded = false;
    }
    c.require(ordered, "pair " + std::to_string(pair) + " lost ordering");
    c.require(bounded, "pair " + std::to_string(pair) + " left [0,1]");
  }
  c.note("10 pairs, 1000 steps each");
  return c;
}

// ---- criterion 10: determinism through the CLI ------------------------------

int run_cli(const std::string& sub, const std::string& cfg_path, int workers) {
  std::string cmd = "FRONTLAB_WORKERS=" + std::to_string(workers) + " '" + g_cli + "' " + sub +
                    " '" + cfg_path + "' > /dev/null 2>&1";
  return std::system(cmd.c_str());
}

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

Check criterion10() {
  Check c;
  namespace fs = std::filesystem;
  fs::path root = fs::temp_directory_path() / "frontlab-acceptance";
  fs::remove_all(root);
  fs::create_directories(root);

  struct Job {
    const char* sub;
    const char* body;  // config without the output section
    std::vector<const char*> files;
  };
  // reduced-scale configs exercising the kernels behind criteria 1-9
  std::vector<Job> jobs = {
      {"check-nonlinearity",
       R"("nonlinearity": {"profile": "fisher_kpp", "kpp": true,
           "amplitude": {"base": 1.0, "modes": [{"k1": 1, "k2": 0, "a": 0.5, "phi": 0.0}]}})",
       {"monostable-report.txt"}},
      {"speed-table",
       R"("nonlinearity": {"profile": "fisher_kpp", "kpp": true,
           "amplitude": {"base": 1.0, "modes": [{"k1": 1, "k2": 0, "a": 0.5, "phi": 0.0}]}},
          "speed": {"n_theta": 8, "method": "kpp_oracle", "oracle": {"cell_grid": [64, 8]}})",
       {"speed-table.csv"}},
      {"hopf",
       R"("nonlinearity": {"profile": "fisher_kpp", "kpp": true},
          "geometry": {"type": "circle", "radius": 1.0, "n_vertices": 64},
          "speed": {"n_theta": 16, "constant": 2.0},
          "hopf": {"times": [0.5]})",
       {"hopf-interface-0.5.csv"}},
      {"hj",
       R"("nonlinearity": {"profile": "fisher_kpp", "kpp": true},
          "geometry": {"type": "circle", "radius": 4.0, "n_vertices": 128},
          "speed": {"n_theta": 16, "constant": 2.0},
          "hopf": {"delta": 0.5},
          "hj": {"scheme": "viscous", "alpha": 0.1, "times": [0.25],
                 "grid": {"half": [7.0, 7.0], "h": 0.1}})",
       {"hj-levelset-0.25.csv", "hj-metrics.csv"}},
      {"simulate",
       R"("nonlinearity": {"profile": "fisher_kpp", "kpp": true},
          "geometry": {"type": "circle", "radius": 1.0, "n_vertices": 64},
          "simulate": {"epsilon": 0.25, "horizon": 0.5, "max_speed": 2.5,
                       "snapshot_times": [0.25, 0.5]})",
       {"simulate-snapshots.csv"}},
      {"converge",
       R"("nonlinearity": {"profile": "fisher_kpp", "kpp": true},
          "geometry": {"type": "circle", "radius": 1.0, "n_vertices": 64},
          "speed": {"n_theta": 16, "constant": 2.0},
          "simulate": {"max_speed": 2.2},
          "converge": {"epsilons": [0.08], "beta": 0.4, "tau": 0.2, "T": 0.4,
                       "sample_times": [0.4]})",
       {"convergence.csv"}},
      {"generation",
       R"("nonlinearity": {"profile": "fisher_kpp", "kpp": true},
          "geometry": {"type": "circle", "radius": 1.0, "n_vertices": 64},
          "speed": {"n_theta": 16, "constant": 2.0},
          "simulate": {"max_speed": 2.2},
          "generation": {"epsilons": [0.1, 0.05], "eta": 0.05, "beta_gen": 0.3,
                         "horizon": 0.5})",
       {"generation.csv", "generation-fit.csv"}},
      {"regularization",
       R"("nonlinearity": {"profile": "fisher_kpp", "kpp": true},
          "geometry": {"type": "circle", "radius": 4.0, "n_vertices": 128},
          "speed": {"n_theta": 16, "constant": 2.0},
          "hopf": {"delta": 0.5},
          "regularization": {"alphas": [0.2, 0.1], "times": [0.25],
                             "grid": {"half": [7.0, 7.0], "h": 0.1}})",
       {"regularization.csv", "hj-metrics.csv"}},
  };

  struct Variant {
    const char* tag;
    int workers;
  } variants[] = {{"a-w1", 1}, {"b-w1", 1}, {"a-w4", 4}, {"b-w4", 4}};

  for (const Job& job : jobs) {
    std::vector<std::string> dirs;
    for (const Variant& v : variants) {
      fs::path dir = root / (std::string(job.sub) + "-" + v.tag);
      fs::create_directories(dir);
      std::string cfg = std::string("{\"output\": {\"dir\": \"") + dir.string() + "\"},\n" +
                        job.body + "}";
      fs::path cfg_path = dir / "config.json";
      std::ofstream(cfg_path) << cfg;
      int rc = run_cli(job.sub, cfg_path.string(), v.workers);
      c.require(rc == 0, std::string(job.sub) + " " + v.tag + " exited with " +
                             std::to_string(rc));
      dirs.push_back(dir.string());
    }
    if (!c.ok) continue;
    for (const char* f : job.files) {
      std::string ref = slurp(dirs[0] + "/" + f);
      c.require(!ref.empty(), std::string(job.sub) + ": " + f + " empty or missing");
      for (size_t k = 1; k < dirs.size(); ++k)
        c.require(slurp(dirs[k] + "/" + f) == ref,
                  std::string(job.sub) + ": " + f + " differs between runs/workers");
    }
  }
  c.note("8 subcommands x {two runs} x {1,4 workers}");
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <frontlab-cli>\n");
    return 2;
  }
  g_cli = argv[1];

  struct Entry {
    const char* name;
    Check (*fn)();
  } entries[] = {
      {"criterion 01 homogeneous KPP speed", criterion1},
      {"criterion 02 heterogeneous cross-validation", criterion2},
      {"criterion 03 speed-table continuity", criterion3},
      {"criterion 04 Hopf exactness", criterion4},
      {"criterion 05 LF scheme vs Hopf", criterion5},
      {"criterion 06 viscous regularization", criterion6},
      {"criterion 07 main theorem sweep", criterion7},
      {"criterion 08 generation time", criterion8},
      {"criterion 09 comparison principle", criterion9},
      {"criterion 10 determinism", criterion10},
  };

  int failures = 0;
  for (const Entry& e : entries) {
    Check c;
    try {
      c = e.fn();
    } catch (const std::exception& ex) {
      c.ok = false;
      c.detail << "exception: " << ex.what();
    }
    std::printf("%s %s%s%s\n", c.ok ? "PASS" : "FAIL", e.name,
                c.detail.tellp() > 0 ? " -- " : "", c.detail.str().c_str());
    std::fflush(stdout);
    if (!c.ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
