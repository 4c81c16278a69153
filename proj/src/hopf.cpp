#include "frontlab/hopf.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace frontlab {

namespace {

std::vector<double> resolve_speeds(const ConvexCurve& gamma0, const SpeedTable& table) {
  table.validate();
  std::vector<double> speeds;
  speeds.reserve(gamma0.normals.size());
  for (const Vec2& n : gamma0.normals) speeds.push_back(interp_speed(table, n));
  return speeds;
}

}  // namespace

HopfEvaluator::HopfEvaluator(ConvexCurve gamma0, std::vector<double> speeds, double delta)
    : gamma0_(std::move(gamma0)), speeds_(std::move(speeds)), delta_(delta) {
  gamma0_.validate();
  if (speeds_.size() != gamma0_.vertices.size())
    throw std::invalid_argument("HopfEvaluator: one speed per vertex required");
  min_speed_ = max_speed_ = speeds_.front();
  for (double c : speeds_) {
    if (!(c > 0.0)) throw std::invalid_argument("HopfEvaluator: speeds must be > 0");
    min_speed_ = std::min(min_speed_, c);
    max_speed_ = std::max(max_speed_, c);
  }
  double r = gamma0_.min_curvature_radius();
  if (delta_ < 0.0) delta_ = 0.1 * r;
  if (delta_ > 0.2 * r + 1e-12)
    throw std::invalid_argument(
        "HopfEvaluator: delta exceeds 0.2 * min curvature radius of Gamma_0");
}

HopfEvaluator::HopfEvaluator(ConvexCurve gamma0, const SpeedTable& table, double delta)
    : HopfEvaluator(gamma0, resolve_speeds(gamma0, table), delta) {}

HopfEvaluator HopfEvaluator::constant_speed(ConvexCurve gamma0, double c, double delta) {
  gamma0.validate();
  std::vector<double> speeds(gamma0.vertices.size(), c);
  return HopfEvaluator(std::move(gamma0), std::move(speeds), delta);
}

double HopfEvaluator::value(double t, Vec2 x) const {
  if (t < 0.0) throw std::invalid_argument("HopfEvaluator::value: t must be >= 0");
  double v = -std::numeric_limits<double>::infinity();
  for (size_t k = 0; k < speeds_.size(); ++k)
    v = std::max(v, (x - gamma0_.vertices[k]).dot(gamma0_.normals[k]) - speeds_[k] * t);
  return v;
}

double HopfEvaluator::cutoff(double t, Vec2 x) const { return std::max(-delta_, value(t, x)); }

ConvexCurve HopfEvaluator::interface_at(double t) const {
  if (t < 0.0) throw std::invalid_argument("HopfEvaluator::interface_at: t must be >= 0");
  std::vector<HalfPlane> planes;
  planes.reserve(speeds_.size());
  for (size_t k = 0; k < speeds_.size(); ++k)
    planes.push_back({gamma0_.vertices[k], gamma0_.normals[k], speeds_[k] * t});
  HalfPlaneResult r = half_plane_intersection(planes);
  if (r.vanished)
    throw std::logic_error("HopfEvaluator: interface vanished at t >= 0 (impossible)");
  return std::move(r.curve);
}

double HopfEvaluator::signed_distance_t(double t, Vec2 x) const {
  return signed_distance(interface_at(t), x);
}

}  // namespace frontlab
