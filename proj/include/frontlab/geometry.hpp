#pragma once

#include <cmath>
#include <vector>

namespace frontlab {

struct Vec2 {
  double x = 0.0, y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double cross(Vec2 o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
  Vec2 normalized() const {
    double n = norm();
    return {x / n, y / n};
  }
  /// 90-degree counterclockwise rotation.
  Vec2 perp() const { return {-y, x}; }
};

/// Closed convex polygon, vertices counterclockwise. normals[i] is the
/// outward unit normal of the supporting line at vertex i; by convention it
/// is the normal of the edge vertices[i] -> vertices[i+1].
struct ConvexCurve {
  std::vector<Vec2> vertices;
  std::vector<Vec2> normals;

  int size() const { return static_cast<int>(vertices.size()); }
  double area() const;
  Vec2 centroid() const;
  double perimeter_scale() const;  // mean edge length, used for tolerances
  /// Discrete minimal curvature radius (edge length over turning angle).
  double min_curvature_radius() const;
  ConvexCurve scaled(double factor) const;  // scales vertices about origin

  /// Throws std::invalid_argument when any invariant fails:
  /// >= 3 vertices, counterclockwise convexity (cross products >= -1e-10 *
  /// edge scale, at least one > 0), unit normals, supporting-line property.
  void validate() const;

  /// Builds a curve from counterclockwise vertices; normals are derived
  /// from the edges.
  static ConvexCurve from_vertices(std::vector<Vec2> vertices);
};

ConvexCurve make_circle(Vec2 center, double radius, int n_vertices);
ConvexCurve make_ellipse(double a, double b, int n_vertices);

/// Counterclockwise convex hull (collinear points dropped).
ConvexCurve convex_hull(const std::vector<Vec2>& points);

/// Distance from a point to the polygon boundary; exact for polygons.
double boundary_distance(const ConvexCurve& curve, Vec2 p);

/// Signed distance: negative inside the enclosed region, positive outside.
double signed_distance(const ConvexCurve& curve, Vec2 p);

/// Hausdorff distance between two convex curves (vertex-to-boundary both
/// ways). Symmetric and nonnegative.
double hausdorff(const ConvexCurve& a, const ConvexCurve& b);

/// Hausdorff distance between a polyline (closed implicitly) and a convex
/// curve. The polyline need not be convex; both directed distances use
/// point-to-segment geometry.
double polyline_hausdorff(const std::vector<Vec2>& polyline, const ConvexCurve& curve);

/// Half-plane {x : (x - point) . normal <= offset}; normal must be unit.
struct HalfPlane {
  Vec2 point;
  Vec2 normal;
  double offset = 0.0;
};

struct HalfPlaneResult {
  bool vanished = false;
  ConvexCurve curve;  // valid only when !vanished
};

/// Intersection of the given half-planes. Returns vanished=true when the
/// intersection is empty; throws std::invalid_argument when it is unbounded
/// or no planes are given. Vertex normals are inherited from the active
/// constraints.
HalfPlaneResult half_plane_intersection(const std::vector<HalfPlane>& planes);

}  // namespace frontlab
