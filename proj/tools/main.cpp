#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "frontlab/config.hpp"
#include "frontlab/contour.hpp"
#include "frontlab/harness.hpp"
#include "frontlab/hj.hpp"
#include "frontlab/hopf.hpp"
#include "frontlab/io.hpp"
#include "frontlab/parallel.hpp"

namespace {

using namespace frontlab;

struct RunContext {
  RunConfig cfg;
  std::string config_text;
  std::string out_dir;
  std::vector<std::string> outputs;

  std::string path(const std::string& name) {
    std::string p = out_dir + "/" + name;
    outputs.push_back(name);
    return p;
  }
};

SpeedTable resolve_table(const RunContext& ctx, const Nonlinearity& nl) {
  if (!ctx.cfg.has_speed)
    throw std::invalid_argument("config: 'speed' section is required for this subcommand");
  if (ctx.cfg.speed_constant > 0.0)
    return make_constant_table(ctx.cfg.speed_constant, ctx.cfg.speed.n_theta);
  return build_speed_table(nl, ctx.cfg.speed);
}

HopfEvaluator resolve_evaluator(const RunContext& ctx, const SpeedTable& table) {
  if (!ctx.cfg.has_geometry)
    throw std::invalid_argument("config: 'geometry' section is required for this subcommand");
  return HopfEvaluator(ctx.cfg.gamma0, table, ctx.cfg.hopf_delta);
}

int cmd_check_nonlinearity(RunContext& ctx) {
  Nonlinearity nl = ctx.cfg.make_nonlinearity();
  MonostableReport rep = check_monostable(nl, 128);
  std::string report = rep.to_text();
  std::cout << report;
  std::ofstream os(ctx.path("monostable-report.txt"));
  os << report;
  return rep.all_pass() ? 0 : 1;
}

int cmd_speed_table(RunContext& ctx) {
  Nonlinearity nl = ctx.cfg.make_nonlinearity();
  SpeedTable table = resolve_table(ctx, nl);
  write_speed_table_csv(ctx.path("speed-table.csv"), table);
  std::cout << "speed-table: " << table.entries.size()
            << " directions, max adjacent jump " << format_double(table.max_adjacent_jump())
            << "\n";
  return 0;
}

int cmd_hopf(RunContext& ctx) {
  Nonlinearity nl = ctx.cfg.make_nonlinearity();
  if (!ctx.cfg.has_hopf) throw std::invalid_argument("config: 'hopf' section is required");
  SpeedTable table = resolve_table(ctx, nl);
  HopfEvaluator ev = resolve_evaluator(ctx, table);
  for (double t : ctx.cfg.hopf_times) {
    write_polygon_csv(ctx.path("hopf-interface-" + format_double(t) + ".csv"),
                      ev.interface_at(t));
    if (ctx.cfg.hopf_write_grid) {
      GridSpec g = ctx.cfg.hopf_grid.to_grid();
      ScalarField f(g);
      for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) f.at(i, j) = ev.value(t, {g.x(i), g.y(j)});
      write_field_binary(ctx.path("hopf-grid-" + format_double(t) + ".bin"), f, t);
      ctx.outputs.push_back("hopf-grid-" + format_double(t) + ".bin.txt");
    }
  }
  return 0;
}

int cmd_hj(RunContext& ctx) {
  Nonlinearity nl = ctx.cfg.make_nonlinearity();
  if (!ctx.cfg.has_hj) throw std::invalid_argument("config: 'hj' section is required");
  SpeedTable table = resolve_table(ctx, nl);
  HopfEvaluator ev = resolve_evaluator(ctx, table);
  GridSpec grid = ctx.cfg.hj_grid.to_grid();
  std::vector<HJMetricsRow> metrics;
  if (ctx.cfg.hj_scheme == "viscous") {
    ViscousConfig vc;
    vc.alpha = ctx.cfg.hj_alpha;
    vc.sigma = ctx.cfg.hj_sigma < 0.0 ? std::min(ctx.cfg.hj_alpha, 0.1) : ctx.cfg.hj_sigma;
    vc.table = table;
    ViscousSolver solver(vc, grid);
    for (const ViscousSnapshot& s : solver.run(ev, ctx.cfg.hj_times)) {
      write_polygon_csv(ctx.path("hj-levelset-" + format_double(s.time) + ".csv"), s.curve);
      metrics.push_back({s.time, vc.alpha, s.hausdorff_to_hopf, s.grad_max, s.min_second_diff});
    }
  } else {
    LFSolver solver(table, grid);
    ScalarField w0(grid);
    for (int j = 0; j < grid.ny; ++j)
      for (int i = 0; i < grid.nx; ++i) w0.at(i, j) = ev.value(0.0, {grid.x(i), grid.y(j)});
    for (const HJState& s : solver.run(w0, ctx.cfg.hj_times)) {
      std::vector<Contour> cs = extract_level_set(s.field, 0.0);
      if (cs.empty())
        throw std::runtime_error("hj: zero level set empty at t=" + format_double(s.time));
      std::vector<Vec2> pts;
      for (const Contour& c : cs) {
        if (!c.closed)
          throw std::runtime_error("hj: zero level set touches the grid boundary");
        pts.insert(pts.end(), c.points.begin(), c.points.end());
      }
      ConvexCurve hull = convex_hull(pts);
      write_polygon_csv(ctx.path("hj-levelset-" + format_double(s.time) + ".csv"), hull);
      metrics.push_back({s.time, 0.0, hausdorff(hull, ev.interface_at(s.time)),
                         upwind_grad_max(s.field), min_second_difference(s.field)});
    }
  }
  write_hj_metrics_csv(ctx.path("hj-metrics.csv"), metrics);
  return 0;
}

int cmd_simulate(RunContext& ctx) {
  Nonlinearity nl = ctx.cfg.make_nonlinearity();
  if (!ctx.cfg.has_simulate) throw std::invalid_argument("config: 'simulate' section is required");
  if (!ctx.cfg.has_geometry) throw std::invalid_argument("config: 'geometry' section is required");
  ScaledRunConfig rc = ctx.cfg.simulate;
  rc.gamma0 = ctx.cfg.gamma0;
  rc.validate();
  std::vector<Snapshot> snaps = run_scaled(rc, nl);
  write_snapshot_summary_csv(ctx.path("simulate-snapshots.csv"), snaps);
  if (ctx.cfg.simulate_dump_fields)
    for (const Snapshot& s : snaps) {
      write_field_binary(ctx.path("field-" + format_double(s.time) + ".bin"), s.field, s.time);
      ctx.outputs.push_back("field-" + format_double(s.time) + ".bin.txt");
    }
  return 0;
}

int cmd_converge(RunContext& ctx) {
  Nonlinearity nl = ctx.cfg.make_nonlinearity();
  if (!ctx.cfg.has_converge) throw std::invalid_argument("config: 'converge' section is required");
  SpeedTable table = resolve_table(ctx, nl);
  HopfEvaluator ev = resolve_evaluator(ctx, table);
  std::vector<ConvergenceRecord> recs = run_convergence(ctx.cfg.converge, nl, ev);
  write_convergence_csv(ctx.path("convergence.csv"), recs);
  return 0;
}

int cmd_generation(RunContext& ctx) {
  Nonlinearity nl = ctx.cfg.make_nonlinearity();
  if (!ctx.cfg.has_generation)
    throw std::invalid_argument("config: 'generation' section is required");
  SpeedTable table = resolve_table(ctx, nl);
  HopfEvaluator ev = resolve_evaluator(ctx, table);
  GenerationResult result = run_generation(ctx.cfg.generation, nl, ev);
  write_generation_csv(ctx.path("generation.csv"), result);
  std::ofstream fit(ctx.path("generation-fit.csv"));
  fit << "slope,rel_residual\n"
      << format_double(result.slope) << ',' << format_double(result.rel_residual) << '\n';
  return 0;
}

int cmd_regularization(RunContext& ctx) {
  Nonlinearity nl = ctx.cfg.make_nonlinearity();
  if (!ctx.cfg.has_regularization)
    throw std::invalid_argument("config: 'regularization' section is required");
  SpeedTable table = resolve_table(ctx, nl);
  HopfEvaluator ev = resolve_evaluator(ctx, table);
  RegularizationConfig rc;
  rc.alphas = ctx.cfg.reg_alphas;
  rc.grid = ctx.cfg.reg_grid.to_grid();
  rc.snapshot_times = ctx.cfg.reg_times;
  rc.table = table;
  rc.sigma_cap = ctx.cfg.reg_sigma_cap;
  std::vector<RegularizationRecord> recs = run_regularization(rc, ev);
  write_regularization_csv(ctx.path("regularization.csv"), recs);
  std::vector<HJMetricsRow> metrics;
  for (const RegularizationRecord& r : recs)
    for (const ViscousSnapshot& s : r.snapshots)
      metrics.push_back({s.time, r.alpha, s.hausdorff_to_hopf, s.grad_max, s.min_second_diff});
  write_hj_metrics_csv(ctx.path("hj-metrics.csv"), metrics);
  return 0;
}

int dispatch(const std::string& name, const std::string& config_path) {
  auto t0 = std::chrono::steady_clock::now();
  RunContext ctx;
  ctx.config_text = read_text_file(config_path);
  ctx.cfg = RunConfig::parse_string(ctx.config_text);
  set_workers(ctx.cfg.workers);
  apply_worker_env();  // FRONTLAB_WORKERS overrides the config
  ctx.out_dir = ctx.cfg.output_dir;
  std::filesystem::create_directories(ctx.out_dir);

  int rc;
  if (name == "check-nonlinearity")
    rc = cmd_check_nonlinearity(ctx);
  else if (name == "speed-table")
    rc = cmd_speed_table(ctx);
  else if (name == "hopf")
    rc = cmd_hopf(ctx);
  else if (name == "hj")
    rc = cmd_hj(ctx);
  else if (name == "simulate")
    rc = cmd_simulate(ctx);
  else if (name == "converge")
    rc = cmd_converge(ctx);
  else if (name == "generation")
    rc = cmd_generation(ctx);
  else
    rc = cmd_regularization(ctx);

  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(ctx.out_dir + "/manifest-" + name + ".json", name, fnv1a(ctx.config_text), wall,
                 ctx.outputs);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"frontlab: periodic monostable fronts, their minimal speeds, and the singular "
               "limit interface"};
  app.require_subcommand(1);
  const char* names[] = {"check-nonlinearity", "speed-table", "hopf", "hj",
                         "simulate",           "converge",    "generation", "regularization"};
  const char* descs[] = {"verify the monostability assumptions",
                         "build the direction-resolved speed table",
                         "emit the exact Hopf-formula interfaces",
                         "run the level-set solver (lf or viscous)",
                         "simulate the scaled problem",
                         "run the interface-convergence sweep",
                         "measure the interface generation time",
                         "run the viscous-regularization sweep"};
  std::string config_path;
  for (int k = 0; k < 8; ++k) {
    CLI::App* sub = app.add_subcommand(names[k], descs[k]);
    sub->add_option("config", config_path, "JSON config file")->required();
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }
  std::string sub = app.get_subcommands().front()->get_name();
  try {
    return dispatch(sub, config_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 2;
  }
}
