#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace frontlab {

/// Uniform rectangular node grid. Node (i,j) sits at (x0 + i*hx, y0 + j*hy).
struct GridSpec {
  int nx = 0, ny = 0;
  double x0 = 0.0, y0 = 0.0;
  double hx = 0.0, hy = 0.0;

  std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }
  double x(int i) const { return x0 + i * hx; }
  double y(int j) const { return y0 + j * hy; }
  double x_max() const { return x0 + (nx - 1) * hx; }
  double y_max() const { return y0 + (ny - 1) * hy; }

  void validate() const {
    if (nx < 2 || ny < 2) throw std::invalid_argument("GridSpec: nx, ny must be >= 2");
    if (!(hx > 0.0) || !(hy > 0.0)) throw std::invalid_argument("GridSpec: hx, hy must be > 0");
  }
};

/// A scalar grid function stored row-major (j-major).
struct ScalarField {
  GridSpec grid;
  std::vector<double> values;

  ScalarField() = default;
  explicit ScalarField(const GridSpec& g, double fill = 0.0) : grid(g), values(g.size(), fill) {
    g.validate();
  }

  double& at(int i, int j) { return values[grid.idx(i, j)]; }
  double at(int i, int j) const { return values[grid.idx(i, j)]; }

  /// Bilinear interpolation; clamps to the grid rectangle.
  double bilinear(double x, double y) const {
    double fx = (x - grid.x0) / grid.hx;
    double fy = (y - grid.y0) / grid.hy;
    if (fx < 0) fx = 0;
    if (fy < 0) fy = 0;
    if (fx > grid.nx - 1) fx = grid.nx - 1;
    if (fy > grid.ny - 1) fy = grid.ny - 1;
    int i = static_cast<int>(fx);
    int j = static_cast<int>(fy);
    if (i > grid.nx - 2) i = grid.nx - 2;
    if (j > grid.ny - 2) j = grid.ny - 2;
    double tx = fx - i, ty = fy - j;
    double v00 = at(i, j), v10 = at(i + 1, j), v01 = at(i, j + 1), v11 = at(i + 1, j + 1);
    return (1 - tx) * (1 - ty) * v00 + tx * (1 - ty) * v10 + (1 - tx) * ty * v01 + tx * ty * v11;
  }

  void check_finite() const {
    for (double v : values)
      if (!std::isfinite(v)) throw std::runtime_error("ScalarField: non-finite value");
  }
};

}  // namespace frontlab
