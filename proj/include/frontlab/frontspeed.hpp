#pragma once

#include <string>
#include <vector>

#include "frontlab/nonlinearity.hpp"

namespace frontlab {

enum class SpeedMethod { measured, kpp_oracle };

std::string speed_method_name(SpeedMethod m);

struct SpeedEntry {
  double theta = 0.0;
  double c_star = 0.0;
  SpeedMethod method = SpeedMethod::kpp_oracle;
  double fit_residual = 0.0;  // 0 for oracle entries
};

/// Direction-resolved minimal speeds at uniformly spaced angles in [0,2pi).
struct SpeedTable {
  std::vector<SpeedEntry> entries;

  void validate() const;  // >= 8 uniform angles, all speeds > 0
  double max_adjacent_jump() const;
  double median_adjacent_jump() const;
  double min_speed() const;
  double max_speed() const;
};

SpeedTable make_constant_table(double c, int n_theta);

/// Periodic Catmull-Rom interpolation in theta; exact at table nodes and on
/// data linear in theta.
double interp_speed(const SpeedTable& table, Vec2 n);

/// Upper bound on |d c / d theta| from table differences (dissipation margin
/// for the LF scheme).
double interp_slope_bound(const SpeedTable& table);

struct KPPOracleConfig {
  int cell_nx = 64, cell_ny = 64;
  double lambda_min = 0.05, lambda_max = 6.0;
  double golden_tol = 1e-4;
  double growth_tol = 1e-11;  // growth-rate increment per check window
  long max_steps = 4000000;

  void validate() const;
};

struct OracleResult {
  double c_star = 0.0;
  double lambda_star = 0.0;
  double k_star = 0.0;  // k(lambda*, n)
};

/// c*(n) = min_{lambda>0} k(lambda,n)/lambda, k the principal periodic
/// eigenvalue of psi -> Lap psi - 2 lambda n.grad psi + (lambda^2 + zeta) psi,
/// zeta = du f(x,0). The eigenvalue comes from the long-time growth rate of
/// the linear evolution (the lambda^2 shift is added analytically).
OracleResult kpp_speed_oracle(Vec2 n, const Nonlinearity& nl, const KPPOracleConfig& cfg = {});

struct SpeedMeasurementConfig {
  double sigma = 0.5;          // initial level behind the front
  double fit_t0 = 30.0, fit_t1 = 70.0;  // late window damps the log drift
  double snapshot_dt = 2.0;
  double level = 0.5;          // tracked level
  double strip_length = 180.0; // cell periods along n
  double strip_width = 30.0;   // wide: Dirichlet sides cost O((pi/wid)^2)
  int transverse_samples = 9;
  double h = 0.2;
  double cfl_fraction = 0.45;  // small: keeps the Euler speed deficit < 1%
  double monotone_tol = 0.5;   // allowed backslide of X(t) between snapshots

  void validate() const;  // sigma in (0,1), fit_t0 >= 0.3*fit_t1, ...
};

struct MeasuredSpeed {
  double speed = 0.0;
  double fit_residual = 0.0;  // RMS residual of the linear fit
};

/// Direct spreading measurement: planar data at level sigma on an
/// axis-aligned box containing the n-oriented strip; X(t) = median over
/// transverse lines of the level crossing along n; least-squares slope.
MeasuredSpeed measure_speed(Vec2 n, const Nonlinearity& nl, const SpeedMeasurementConfig& cfg);

enum class TableMethod { measured, kpp_oracle, hybrid };

struct SpeedTableConfig {
  int n_theta = 16;
  TableMethod method = TableMethod::hybrid;
  KPPOracleConfig oracle;
  SpeedMeasurementConfig measurement;
};

/// Fills all angles; hybrid picks the oracle when the KPP flag holds and
/// measurement otherwise. Any per-direction failure aborts with the angle
/// identified.
SpeedTable build_speed_table(const Nonlinearity& nl, const SpeedTableConfig& cfg);

}  // namespace frontlab
