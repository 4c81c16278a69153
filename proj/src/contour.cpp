#include "frontlab/contour.hpp"

#include <cstdint>
#include <stdexcept>
#include <unordered_map>

namespace frontlab {

namespace {

// Grid-edge identifiers. Horizontal edge (i,j): nodes (i,j)-(i+1,j).
// Vertical edge (i,j): nodes (i,j)-(i,j+1).
enum class EdgeKind : std::uint64_t { H = 0, V = 1 };

std::uint64_t edge_key(EdgeKind k, int i, int j) {
  return (static_cast<std::uint64_t>(k) << 62) |
         (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 31) |
         static_cast<std::uint64_t>(static_cast<std::uint32_t>(j));
}

struct Segment {
  std::uint64_t from, to;
  Vec2 p_from, p_to;
};

}  // namespace

std::vector<Contour> extract_level_set(const ScalarField& field, double level) {
  field.check_finite();
  const GridSpec& g = field.grid;
  g.validate();

  auto inside = [&](double v) { return v < level; };

  // Crossing point on a horizontal/vertical edge, by linear interpolation.
  auto cross_h = [&](int i, int j) {
    double f0 = field.at(i, j), f1 = field.at(i + 1, j);
    double t = (level - f0) / (f1 - f0);
    return Vec2{g.x(i) + t * g.hx, g.y(j)};
  };
  auto cross_v = [&](int i, int j) {
    double f0 = field.at(i, j), f1 = field.at(i, j + 1);
    double t = (level - f0) / (f1 - f0);
    return Vec2{g.x(i), g.y(j) + t * g.hy};
  };

  std::vector<Segment> segments;
  std::unordered_map<std::uint64_t, int> seg_from;  // start edge -> segment

  for (int j = 0; j < g.ny - 1; ++j) {
    for (int i = 0; i < g.nx - 1; ++i) {
      double f00 = field.at(i, j), f10 = field.at(i + 1, j);
      double f11 = field.at(i + 1, j + 1), f01 = field.at(i, j + 1);
      int c = (inside(f00) ? 1 : 0) | (inside(f10) ? 2 : 0) | (inside(f11) ? 4 : 0) |
              (inside(f01) ? 8 : 0);
      if (c == 0 || c == 15) continue;

      std::uint64_t B = edge_key(EdgeKind::H, i, j);
      std::uint64_t T = edge_key(EdgeKind::H, i, j + 1);
      std::uint64_t L = edge_key(EdgeKind::V, i, j);
      std::uint64_t R = edge_key(EdgeKind::V, i + 1, j);

      auto emit = [&](std::uint64_t from, Vec2 pf, std::uint64_t to, Vec2 pt) {
        seg_from.emplace(from, static_cast<int>(segments.size()));
        segments.push_back({from, to, pf, pt});
      };

      // Directed so that the sub-level region lies on the left; closed loops
      // then run counterclockwise around it.
      switch (c) {
        case 1: emit(B, cross_h(i, j), L, cross_v(i, j)); break;
        case 2: emit(R, cross_v(i + 1, j), B, cross_h(i, j)); break;
        case 3: emit(R, cross_v(i + 1, j), L, cross_v(i, j)); break;
        case 4: emit(T, cross_h(i, j + 1), R, cross_v(i + 1, j)); break;
        case 5: {
          bool center_in = inside(0.25 * (f00 + f10 + f11 + f01));
          if (center_in) {
            emit(B, cross_h(i, j), R, cross_v(i + 1, j));
            emit(T, cross_h(i, j + 1), L, cross_v(i, j));
          } else {
            emit(B, cross_h(i, j), L, cross_v(i, j));
            emit(T, cross_h(i, j + 1), R, cross_v(i + 1, j));
          }
          break;
        }
        case 6: emit(T, cross_h(i, j + 1), B, cross_h(i, j)); break;
        case 7: emit(T, cross_h(i, j + 1), L, cross_v(i, j)); break;
        case 8: emit(L, cross_v(i, j), T, cross_h(i, j + 1)); break;
        case 9: emit(B, cross_h(i, j), T, cross_h(i, j + 1)); break;
        case 10: {
          bool center_in = inside(0.25 * (f00 + f10 + f11 + f01));
          if (center_in) {
            emit(L, cross_v(i, j), B, cross_h(i, j));
            emit(R, cross_v(i + 1, j), T, cross_h(i, j + 1));
          } else {
            emit(R, cross_v(i + 1, j), B, cross_h(i, j));
            emit(L, cross_v(i, j), T, cross_h(i, j + 1));
          }
          break;
        }
        case 11: emit(R, cross_v(i + 1, j), T, cross_h(i, j + 1)); break;
        case 12: emit(L, cross_v(i, j), R, cross_v(i + 1, j)); break;
        case 13: emit(B, cross_h(i, j), R, cross_v(i + 1, j)); break;
        case 14: emit(L, cross_v(i, j), B, cross_h(i, j)); break;
        default: break;
      }
    }
  }

  std::vector<Contour> contours;
  std::vector<char> used(segments.size(), 0);

  // Open chains first: segments whose start edge is nobody's end.
  std::unordered_map<std::uint64_t, int> seg_to;
  for (int s = 0; s < static_cast<int>(segments.size()); ++s) seg_to.emplace(segments[s].to, s);

  auto walk = [&](int start, bool open_chain) {
    Contour c;
    c.closed = !open_chain;
    int s = start;
    c.points.push_back(segments[s].p_from);
    while (true) {
      used[s] = 1;
      auto it = seg_from.find(segments[s].to);
      if (it == seg_from.end() || used[it->second]) {
        if (open_chain || it == seg_from.end()) {
          c.points.push_back(segments[s].p_to);
          c.closed = false;
        }
        break;
      }
      c.points.push_back(segments[s].p_to);
      s = it->second;
      if (s == start) break;  // closed loop
    }
    return c;
  };

  for (int s = 0; s < static_cast<int>(segments.size()); ++s) {
    if (used[s] || seg_to.contains(segments[s].from)) continue;
    contours.push_back(walk(s, true));
  }
  for (int s = 0; s < static_cast<int>(segments.size()); ++s) {
    if (used[s]) continue;
    contours.push_back(walk(s, false));
  }
  return contours;
}

}  // namespace frontlab
