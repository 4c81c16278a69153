#pragma once

#include "frontlab/frontspeed.hpp"
#include "frontlab/geometry.hpp"

namespace frontlab {

/// Exact limit-interface engine: v(t,x) = max_y (x-y).n_y - c*(n_y) t over
/// the vertex sample of Gamma_0, plus the cutoff v_delta and the polygon
/// Gamma_t obtained by intersecting the supporting half-planes pushed out by
/// c*(n_y) t.
class HopfEvaluator {
 public:
  /// Speeds are resolved once per vertex normal through interp_speed and
  /// frozen. delta < 0 selects the default 0.1 * min curvature radius.
  HopfEvaluator(ConvexCurve gamma0, const SpeedTable& table, double delta = -1.0);

  static HopfEvaluator constant_speed(ConvexCurve gamma0, double c, double delta = -1.0);

  double value(double t, Vec2 x) const;
  double cutoff(double t, Vec2 x) const;  // max(-delta, value)

  /// Gamma_t. Cannot vanish for t >= 0 (offsets are nonnegative; asserted).
  ConvexCurve interface_at(double t) const;

  double signed_distance_t(double t, Vec2 x) const;

  const ConvexCurve& gamma0() const { return gamma0_; }
  const std::vector<double>& speeds() const { return speeds_; }
  double delta() const { return delta_; }
  double min_speed() const { return min_speed_; }
  double max_speed() const { return max_speed_; }

 private:
  HopfEvaluator(ConvexCurve gamma0, std::vector<double> speeds, double delta);

  ConvexCurve gamma0_;
  std::vector<double> speeds_;
  double delta_ = 0.0;
  double min_speed_ = 0.0, max_speed_ = 0.0;
};

}  // namespace frontlab
