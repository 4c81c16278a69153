#include "frontlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace frontlab {

namespace {

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  Vec2 ab = b - a;
  double len2 = ab.dot(ab);
  if (len2 == 0.0) return (p - a).norm();
  double t = (p - a).dot(ab) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return (p - (a + ab * t)).norm();
}

}  // namespace

double ConvexCurve::area() const {
  double s = 0.0;
  int n = size();
  for (int i = 0; i < n; ++i) s += vertices[i].cross(vertices[(i + 1) % n]);
  return 0.5 * s;
}

Vec2 ConvexCurve::centroid() const {
  Vec2 c{0, 0};
  for (const Vec2& v : vertices) c = c + v;
  return c * (1.0 / size());
}

double ConvexCurve::perimeter_scale() const {
  double s = 0.0;
  int n = size();
  for (int i = 0; i < n; ++i) s += (vertices[(i + 1) % n] - vertices[i]).norm();
  return s / n;
}

double ConvexCurve::min_curvature_radius() const {
  int n = size();
  double r_min = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    Vec2 e0 = vertices[i] - vertices[(i + n - 1) % n];
    Vec2 e1 = vertices[(i + 1) % n] - vertices[i];
    double turn = std::atan2(e0.cross(e1), e0.dot(e1));
    if (turn <= 0.0) continue;  // flat vertex contributes no curvature
    double r = 0.5 * (e0.norm() + e1.norm()) / turn;
    r_min = std::min(r_min, r);
  }
  return r_min;
}

ConvexCurve ConvexCurve::scaled(double factor) const {
  ConvexCurve out;
  out.vertices.reserve(vertices.size());
  for (const Vec2& v : vertices) out.vertices.push_back(v * factor);
  out.normals = normals;
  return out;
}

void ConvexCurve::validate() const {
  int n = size();
  if (n < 3) throw std::invalid_argument("ConvexCurve: fewer than 3 vertices");
  if (normals.size() != vertices.size())
    throw std::invalid_argument("ConvexCurve: normals/vertices size mismatch");

  double scale = perimeter_scale();
  double cross_tol = -1e-10 * scale * scale;
  bool any_positive = false;
  for (int i = 0; i < n; ++i) {
    Vec2 e0 = vertices[(i + 1) % n] - vertices[i];
    Vec2 e1 = vertices[(i + 2) % n] - vertices[(i + 1) % n];
    double c = e0.cross(e1);
    if (c < cross_tol) throw std::invalid_argument("ConvexCurve: not convex/counterclockwise");
    if (c > 0.0) any_positive = true;
  }
  if (!any_positive) throw std::invalid_argument("ConvexCurve: degenerate (zero area)");

  for (int i = 0; i < n; ++i) {
    if (std::abs(normals[i].norm() - 1.0) > 1e-12)
      throw std::invalid_argument("ConvexCurve: normal not unit length");
  }
  // Supporting-line property: the line through vertex i with normal n_i must
  // keep the whole polygon on its inner side.
  double support_tol = 1e-9 * std::max(scale, 1.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if ((vertices[j] - vertices[i]).dot(normals[i]) > support_tol)
        throw std::invalid_argument("ConvexCurve: normal is not a supporting-line normal");
    }
  }
}

ConvexCurve ConvexCurve::from_vertices(std::vector<Vec2> vertices) {
  ConvexCurve c;
  c.vertices = std::move(vertices);
  int n = c.size();
  c.normals.resize(n);
  for (int i = 0; i < n; ++i) {
    Vec2 e = c.vertices[(i + 1) % n] - c.vertices[i];
    c.normals[i] = Vec2{e.y, -e.x}.normalized();  // outward for counterclockwise order
  }
  return c;
}

ConvexCurve make_circle(Vec2 center, double radius, int n_vertices) {
  std::vector<Vec2> v(n_vertices);
  for (int k = 0; k < n_vertices; ++k) {
    double th = 2.0 * std::numbers::pi * k / n_vertices;
    v[k] = center + Vec2{radius * std::cos(th), radius * std::sin(th)};
  }
  return ConvexCurve::from_vertices(std::move(v));
}

ConvexCurve make_ellipse(double a, double b, int n_vertices) {
  std::vector<Vec2> v(n_vertices);
  for (int k = 0; k < n_vertices; ++k) {
    double th = 2.0 * std::numbers::pi * k / n_vertices;
    v[k] = {a * std::cos(th), b * std::sin(th)};
  }
  return ConvexCurve::from_vertices(std::move(v));
}

ConvexCurve convex_hull(const std::vector<Vec2>& points) {
  if (points.size() < 3) throw std::invalid_argument("convex_hull: fewer than 3 points");
  std::vector<Vec2> pts = points;
  std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }),
            pts.end());
  auto build = [&](auto begin, auto end) {
    std::vector<Vec2> chain;
    for (auto it = begin; it != end; ++it) {
      while (chain.size() >= 2 &&
             (chain[chain.size() - 1] - chain[chain.size() - 2])
                     .cross(*it - chain[chain.size() - 1]) <= 0.0)
        chain.pop_back();
      chain.push_back(*it);
    }
    return chain;
  };
  std::vector<Vec2> lower = build(pts.begin(), pts.end());
  std::vector<Vec2> upper = build(pts.rbegin(), pts.rend());
  lower.pop_back();
  upper.pop_back();
  lower.insert(lower.end(), upper.begin(), upper.end());
  if (lower.size() < 3) throw std::invalid_argument("convex_hull: degenerate point set");
  return ConvexCurve::from_vertices(std::move(lower));
}

double boundary_distance(const ConvexCurve& curve, Vec2 p) {
  int n = curve.size();
  double d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    d = std::min(d, point_segment_distance(p, curve.vertices[i], curve.vertices[(i + 1) % n]));
  return d;
}

double signed_distance(const ConvexCurve& curve, Vec2 p) {
  int n = curve.size();
  if (n < 3) throw std::invalid_argument("signed_distance: degenerate curve");
  bool inside = true;
  for (int i = 0; i < n; ++i) {
    Vec2 e = curve.vertices[(i + 1) % n] - curve.vertices[i];
    if (e.cross(p - curve.vertices[i]) < 0.0) {
      inside = false;
      break;
    }
  }
  double d = boundary_distance(curve, p);
  return inside ? -d : d;
}

double hausdorff(const ConvexCurve& a, const ConvexCurve& b) {
  if (a.size() < 3 || b.size() < 3) throw std::invalid_argument("hausdorff: degenerate curve");
  double d = 0.0;
  for (const Vec2& v : a.vertices) d = std::max(d, boundary_distance(b, v));
  for (const Vec2& v : b.vertices) d = std::max(d, boundary_distance(a, v));
  return d;
}

double polyline_hausdorff(const std::vector<Vec2>& polyline, const ConvexCurve& curve) {
  if (polyline.size() < 2) throw std::invalid_argument("polyline_hausdorff: degenerate polyline");
  double d = 0.0;
  for (const Vec2& p : polyline) d = std::max(d, boundary_distance(curve, p));
  int m = static_cast<int>(polyline.size());
  for (const Vec2& v : curve.vertices) {
    double dv = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i)
      dv = std::min(dv, point_segment_distance(v, polyline[i], polyline[(i + 1) % m]));
    d = std::max(d, dv);
  }
  return d;
}

HalfPlaneResult half_plane_intersection(const std::vector<HalfPlane>& planes) {
  if (planes.empty()) throw std::invalid_argument("half_plane_intersection: no planes");
  for (const HalfPlane& hp : planes)
    if (std::abs(hp.normal.norm() - 1.0) > 1e-9)
      throw std::invalid_argument("half_plane_intersection: normal not unit length");

  // Scale for the initial clipping box. Clipping runs against a large box;
  // an intersection still touching the box afterwards is unbounded.
  // Emptiness is checked first so that infeasible strips report "vanished"
  // rather than unbounded.
  double scale = 1.0;
  for (const HalfPlane& hp : planes)
    scale = std::max({scale, std::abs(hp.point.x), std::abs(hp.point.y), std::abs(hp.offset)});
  double big = 16.0 * scale;

  std::vector<Vec2> poly = {{-big, -big}, {big, -big}, {big, big}, {-big, big}};

  for (const HalfPlane& hp : planes) {
    double d = hp.normal.dot(hp.point) + hp.offset;
    std::vector<Vec2> next;
    next.reserve(poly.size() + 1);
    int m = static_cast<int>(poly.size());
    for (int i = 0; i < m; ++i) {
      Vec2 cur = poly[i], nxt = poly[(i + 1) % m];
      double sc = hp.normal.dot(cur) - d;
      double sn = hp.normal.dot(nxt) - d;
      if (sc <= 0.0) next.push_back(cur);
      if ((sc < 0.0 && sn > 0.0) || (sc > 0.0 && sn < 0.0)) {
        double t = sc / (sc - sn);
        next.push_back(cur + (nxt - cur) * t);
      }
    }
    poly = std::move(next);
    if (poly.size() < 3) return {true, {}};
  }

  // Collapse near-duplicate vertices.
  double tol = 1e-9 * scale;
  std::vector<Vec2> cleaned;
  for (const Vec2& v : poly) {
    if (cleaned.empty() || (v - cleaned.back()).norm() > tol) cleaned.push_back(v);
  }
  while (cleaned.size() > 1 && (cleaned.back() - cleaned.front()).norm() <= tol)
    cleaned.pop_back();
  if (cleaned.size() < 3) return {true, {}};
  double area2 = 0.0;
  int nc = static_cast<int>(cleaned.size());
  for (int i = 0; i < nc; ++i) area2 += cleaned[i].cross(cleaned[(i + 1) % nc]);
  if (area2 <= tol * tol) return {true, {}};

  for (const Vec2& v : cleaned)
    if (std::max(std::abs(v.x), std::abs(v.y)) > big * (1.0 - 1e-9))
      throw std::invalid_argument("half_plane_intersection: unbounded intersection");

  // Inherit normals from the active constraints (minimal slack per edge).
  ConvexCurve out;
  out.vertices = std::move(cleaned);
  int n = out.size();
  out.normals.resize(n);
  for (int i = 0; i < n; ++i) {
    Vec2 mid = (out.vertices[i] + out.vertices[(i + 1) % n]) * 0.5;
    double best = std::numeric_limits<double>::infinity();
    Vec2 best_n = (out.vertices[(i + 1) % n] - out.vertices[i]).perp() * -1.0;
    for (const HalfPlane& hp : planes) {
      double slack = std::abs(hp.normal.dot(mid) - hp.normal.dot(hp.point) - hp.offset);
      if (slack < best) {
        best = slack;
        best_n = hp.normal;
      }
    }
    out.normals[i] = best_n.normalized();
  }
  return {false, std::move(out)};
}

}  // namespace frontlab
