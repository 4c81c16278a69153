#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "frontlab/geometry.hpp"
#include "frontlab/grid.hpp"
#include "frontlab/nonlinearity.hpp"

namespace frontlab {

/// Explicit-Euler configuration for the unscaled equation
/// du/dt = Lap(u) + f(x,u) with Dirichlet-zero outer boundary.
struct SolverConfig {
  GridSpec box;
  double dt = 0.0;             // <= 0: derived from cfl_fraction
  double cfl_fraction = 0.9;   // fraction of the diffusion stability bound
  std::vector<double> snapshot_times;

  double cfl_bound() const;    // hx^2 hy^2 / (2 (hx^2 + hy^2))
  double effective_dt() const;
  /// Throws when the CFL condition fails or the box is not an integer
  /// multiple of the cell periods.
  void validate(const PeriodicCell& cell) const;
};

struct Snapshot {
  double time = 0.0;
  ScalarField field;
  bool front_contact = false;  // boundary-ring value exceeded 1e-3
  double min_value = 0.0, max_value = 0.0, mass = 0.0;
};

/// Observer called after every step with (step, time, values). Returning
/// false stops the run early.
using StepObserver = std::function<bool(long step, double time, const std::vector<double>&)>;

class RDSolver {
 public:
  RDSolver(const Nonlinearity& nl, const SolverConfig& cfg);

  /// One explicit Euler step (5-point Laplacian + pointwise reaction).
  ScalarField step(const ScalarField& state) const;

  std::vector<Snapshot> run(const ScalarField& u0, const StepObserver& observer = nullptr) const;

  double dt() const { return dt_; }
  const GridSpec& box() const { return cfg_.box; }

 private:
  const Nonlinearity& nl_;
  SolverConfig cfg_;
  double dt_;
  std::vector<double> p_;  // amplitude p(x) per node

  void step_into(const std::vector<double>& src, std::vector<double>& dst, double dt) const;
  Snapshot make_snapshot(double time, const std::vector<double>& u) const;
};

/// Initial data of Assumption-1.2 type: m * smoothstep(-d0(x)/w), zero
/// outside the region enclosed by the curve, plateau m at depth >= w.
ScalarField initial_bump(const ConvexCurve& gamma0, double m, double w, const GridSpec& grid);

/// Planar front-like data: sigma where x.n <= offset, zero elsewhere.
ScalarField initial_planar(Vec2 n, double offset, double sigma, const GridSpec& grid);

/// C^2 smoothstep: 0 for r<=0, r^3(10-15r+6r^2) on (0,1), 1 for r>=1.
double smoothstep(double r);

/// Scaled problem (P^eps) solved through the exact rescaling
/// u_eps(t,x) = u(t/eps, x/eps) of the unscaled run.
struct ScaledRunConfig {
  double epsilon = 1.0;
  double horizon = 1.0;                // scaled final time T
  ConvexCurve gamma0;                  // initial interface, scaled coordinates
  double m = 0.9, w = 0.4;             // bump amplitude / width (scaled)
  double h = 0.25;                     // unscaled grid spacing target
  double cfl_fraction = 0.9;
  double max_speed = 2.0;              // box sizing: interface speed bound
  double margin_periods = 4.0;         // extra cell periods around Omega_T
  double node_cap = 4e7;               // refuse larger unscaled grids
  std::vector<double> snapshot_times;  // scaled times

  void validate() const;
};

/// Runs the unscaled problem on an auto-sized box and reindexes snapshots
/// into scaled coordinates. Throws (before allocation) when the node cap
/// would be exceeded.
std::vector<Snapshot> run_scaled(const ScaledRunConfig& cfg, const Nonlinearity& nl,
                                 const StepObserver& observer = nullptr);

/// The unscaled box run_scaled would use (exposed for the harness).
GridSpec scaled_run_box(const ScaledRunConfig& cfg, const Nonlinearity& nl);

}  // namespace frontlab
