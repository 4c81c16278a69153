#pragma once

#include <string>
#include <vector>

#include "frontlab/frontspeed.hpp"
#include "frontlab/geometry.hpp"
#include "frontlab/grid.hpp"
#include "frontlab/harness.hpp"
#include "frontlab/nonlinearity.hpp"
#include "frontlab/rdsim.hpp"

namespace frontlab {

/// Grid section: centered rectangle with target spacing h.
struct GridSection {
  Vec2 center{0.0, 0.0};
  Vec2 half{3.0, 3.0};
  double h = 0.05;

  GridSpec to_grid() const;
};

/// Parsed run configuration. Unknown keys anywhere in the file are
/// rejected; numeric-range checks live in the module validate() calls,
/// which the CLI invokes before any computation.
struct RunConfig {
  int workers = 1;
  std::string output_dir = ".";

  bool has_nonlinearity = false;
  PeriodicCell cell;
  Amplitude amplitude;
  Profile profile;
  bool kpp = false;
  double rho = 0.1;

  bool has_geometry = false;
  ConvexCurve gamma0;

  bool has_speed = false;
  SpeedTableConfig speed;
  double speed_constant = 0.0;  // > 0: synthetic constant table, skip computation

  bool has_hopf = false;
  double hopf_delta = -1.0;
  std::vector<double> hopf_times;
  bool hopf_write_grid = false;
  GridSection hopf_grid;

  bool has_hj = false;
  std::string hj_scheme = "viscous";  // "lf" | "viscous"
  double hj_alpha = 0.1;
  double hj_sigma = -1.0;  // < 0: min(alpha, 0.1)
  std::vector<double> hj_times;
  GridSection hj_grid;

  bool has_simulate = false;
  ScaledRunConfig simulate;
  bool simulate_dump_fields = false;

  bool has_converge = false;
  ConvergenceConfig converge;  // scaled template copied from the simulate section

  bool has_generation = false;
  GenerationConfig generation;

  bool has_regularization = false;
  std::vector<double> reg_alphas;
  std::vector<double> reg_times;
  double reg_sigma_cap = 0.1;
  GridSection reg_grid;

  Nonlinearity make_nonlinearity() const;

  static RunConfig parse_string(const std::string& text);
  static RunConfig parse_file(const std::string& path);
};

}  // namespace frontlab
