#pragma once

#include <vector>

#include "frontlab/frontspeed.hpp"
#include "frontlab/grid.hpp"
#include "frontlab/hopf.hpp"

namespace frontlab {

struct HJState {
  double time = 0.0;
  ScalarField field;
};

/// Monotone Lax-Friedrichs scheme for dw/dt + |grad w| c*(grad w/|grad w|)
/// = 0. Ghost nodes by linear extrapolation (exact on affine data).
class LFSolver {
 public:
  LFSolver(SpeedTable table, GridSpec grid, double safety = 0.9);

  double stable_dt() const;  // safety * 0.9 cap folded in
  double theta() const { return theta_; }

  /// One step; throws when dt violates the stability bound.
  void step(HJState& state, double dt) const;

  std::vector<HJState> run(const ScalarField& w0, const std::vector<double>& snapshot_times) const;

  const SpeedTable& table() const { return table_; }

 private:
  SpeedTable table_;
  GridSpec grid_;
  double theta_ = 0.0;
  double safety_ = 0.9;
};

struct ViscousConfig {
  double alpha = 0.1;
  double sigma = 1e-2;  // gradient-ramp smoothing; couple sigma = alpha when sweeping
  SpeedTable table;
  double safety = 0.9;

  void validate() const;  // alpha in (0, min table speed), sigma in (0, 0.1]
};

struct ViscousSnapshot {
  double time = 0.0;
  ScalarField field;
  ConvexCurve curve;            // Gamma^alpha_t (convex hull of the zero level set)
  double grad_max = 0.0;        // max one-sided difference norm
  double min_second_diff = 0.0; // min axis second difference / h^2
  double hausdorff_to_hopf = 0.0;
};

/// Viscous regularization dv/dt + F^alpha(grad v) - alpha Lap v = 0 with
/// F^alpha(p) = r_sigma(|p|) (c*(p/|p|) - alpha), r_sigma(s) = s^2/sqrt(s^2+sigma^2).
class ViscousSolver {
 public:
  ViscousSolver(ViscousConfig cfg, GridSpec grid);

  double stable_dt() const;

  /// v0^alpha = gamma * (mollified hopf cutoff) + mu * strictly convex bump
  /// + adaptive offset; the sandwich v_delta + alpha <= v0 <= v_delta +
  /// 2 alpha, the gradient bound and discrete convexity are verified and a
  /// violation throws naming the bound. Requires ev.delta() > 2 alpha so the
  /// zero level set is nonempty.
  HJState make_initial(const HopfEvaluator& ev) const;

  void step(HJState& state, double dt) const;

  /// Evolves from make_initial(ev); snapshots carry the extracted zero level
  /// set (error when empty or touching the grid boundary) and the gradient /
  /// convexity diagnostics.
  std::vector<ViscousSnapshot> run(const HopfEvaluator& ev,
                                   const std::vector<double>& snapshot_times) const;

  const ViscousConfig& config() const { return cfg_; }

 private:
  ViscousConfig cfg_;
  GridSpec grid_;
  double theta_ = 0.0;
};

/// Max one-sided difference norm of a field (discrete Lipschitz constant).
double upwind_grad_max(const ScalarField& f);

/// Min of axis second differences divided by the squared spacing.
double min_second_difference(const ScalarField& f);

}  // namespace frontlab
