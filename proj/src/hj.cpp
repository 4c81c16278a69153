#include "frontlab/hj.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "frontlab/contour.hpp"
#include "frontlab/parallel.hpp"

namespace frontlab {

namespace {

// linear-extrapolation ghost along one axis (only one index is ever out)
inline double ghost(const std::vector<double>& v, const GridSpec& g, int i, int j) {
  if (i < 0) return 2.0 * v[g.idx(0, j)] - v[g.idx(1, j)];
  if (i >= g.nx) return 2.0 * v[g.idx(g.nx - 1, j)] - v[g.idx(g.nx - 2, j)];
  if (j < 0) return 2.0 * v[g.idx(i, 0)] - v[g.idx(i, 1)];
  if (j >= g.ny) return 2.0 * v[g.idx(i, g.ny - 1)] - v[g.idx(i, g.ny - 2)];
  return v[g.idx(i, j)];
}

std::vector<double> run_targets(double t0, const std::vector<double>& snapshot_times) {
  std::vector<double> ts = snapshot_times;
  std::sort(ts.begin(), ts.end());
  if (!ts.empty() && ts.front() < t0 - 1e-12)
    throw std::invalid_argument("snapshot time precedes the initial time");
  return ts;
}

}  // namespace

double upwind_grad_max(const ScalarField& f) {
  const GridSpec& g = f.grid;
  double mx = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      if (i + 1 < g.nx)
        mx = std::max(mx, std::abs(f.at(i + 1, j) - f.at(i, j)) / g.hx);
      if (j + 1 < g.ny)
        mx = std::max(mx, std::abs(f.at(i, j + 1) - f.at(i, j)) / g.hy);
    }
  return mx;
}

double min_second_difference(const ScalarField& f) {
  const GridSpec& g = f.grid;
  double mn = std::numeric_limits<double>::infinity();
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      if (i >= 1 && i + 1 < g.nx)
        mn = std::min(mn, (f.at(i + 1, j) - 2.0 * f.at(i, j) + f.at(i - 1, j)) / (g.hx * g.hx));
      if (j >= 1 && j + 1 < g.ny)
        mn = std::min(mn, (f.at(i, j + 1) - 2.0 * f.at(i, j) + f.at(i, j - 1)) / (g.hy * g.hy));
    }
  return mn;
}

LFSolver::LFSolver(SpeedTable table, GridSpec grid, double safety)
    : table_(std::move(table)), grid_(grid), safety_(safety) {
  table_.validate();
  grid_.validate();
  if (!(safety_ > 0.0 && safety_ <= 1.0))
    throw std::invalid_argument("LFSolver: safety must be in (0,1]");
  theta_ = table_.max_speed() + interp_slope_bound(table_);
}

double LFSolver::stable_dt() const {
  return safety_ * 0.9 / (theta_ / grid_.hx + theta_ / grid_.hy);
}

namespace {

inline double hamiltonian(const SpeedTable& table, double px, double py) {
  double s = std::hypot(px, py);
  if (s < 1e-14) return 0.0;
  return s * interp_speed(table, {px / s, py / s});
}

}  // namespace

void LFSolver::step(HJState& state, double dt) const {
  if (state.field.grid.nx != grid_.nx || state.field.grid.ny != grid_.ny)
    throw std::invalid_argument("LFSolver::step: grid mismatch");
  if (dt * (theta_ / grid_.hx + theta_ / grid_.hy) > 0.9 + 1e-12)
    throw std::invalid_argument("LFSolver::step: dt violates the LF stability bound");
  const GridSpec& g = grid_;
  const std::vector<double>& v = state.field.values;
  std::vector<double> out(v.size());
#pragma omp parallel for schedule(static) num_threads(workers())
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      double c = v[g.idx(i, j)];
      double xl = ghost(v, g, i - 1, j), xr = ghost(v, g, i + 1, j);
      double yl = ghost(v, g, i, j - 1), yr = ghost(v, g, i, j + 1);
      double pxm = (c - xl) / g.hx, pxp = (xr - c) / g.hx;
      double pym = (c - yl) / g.hy, pyp = (yr - c) / g.hy;
      double H = hamiltonian(table_, 0.5 * (pxm + pxp), 0.5 * (pym + pyp)) -
                 0.5 * theta_ * (pxp - pxm) - 0.5 * theta_ * (pyp - pym);
      out[g.idx(i, j)] = c - dt * H;
    }
  }
  state.field.values.swap(out);
  state.time += dt;
}

std::vector<HJState> LFSolver::run(const ScalarField& w0,
                                   const std::vector<double>& snapshot_times) const {
  if (w0.grid.nx != grid_.nx || w0.grid.ny != grid_.ny)
    throw std::invalid_argument("LFSolver::run: grid mismatch");
  HJState state{0.0, w0};
  std::vector<HJState> out;
  for (double target : run_targets(0.0, snapshot_times)) {
    double gap = target - state.time;
    if (gap > 1e-12) {
      long n = static_cast<long>(std::ceil(gap / stable_dt() - 1e-12));
      double dt = gap / n;
      for (long k = 0; k < n; ++k) step(state, dt);
    }
    state.time = target;
    state.field.check_finite();
    out.push_back(state);
  }
  return out;
}

void ViscousConfig::validate() const {
  table.validate();
  if (!(alpha > 0.0) || alpha >= table.min_speed())
    throw std::invalid_argument("ViscousConfig: alpha must lie in (0, min table speed)");
  if (!(sigma > 0.0 && sigma <= 0.1))
    throw std::invalid_argument("ViscousConfig: sigma must lie in (0, 0.1]");
  if (!(safety > 0.0 && safety <= 1.0))
    throw std::invalid_argument("ViscousConfig: safety must lie in (0,1]");
}

ViscousSolver::ViscousSolver(ViscousConfig cfg, GridSpec grid) : cfg_(std::move(cfg)), grid_(grid) {
  cfg_.validate();
  grid_.validate();
  // |dF/dp| <= max r' * (cmax - alpha) + slope margin; max r'_sigma < 1.1
  theta_ = 1.1 * (cfg_.table.max_speed() - cfg_.alpha) + interp_slope_bound(cfg_.table);
}

double ViscousSolver::stable_dt() const {
  double adv = theta_ / grid_.hx + theta_ / grid_.hy;
  double dif = 2.0 * cfg_.alpha * (1.0 / (grid_.hx * grid_.hx) + 1.0 / (grid_.hy * grid_.hy));
  return cfg_.safety * 0.9 / (adv + dif);
}

void ViscousSolver::step(HJState& state, double dt) const {
  if (state.field.grid.nx != grid_.nx || state.field.grid.ny != grid_.ny)
    throw std::invalid_argument("ViscousSolver::step: grid mismatch");
  double adv = theta_ / grid_.hx + theta_ / grid_.hy;
  double dif = 2.0 * cfg_.alpha * (1.0 / (grid_.hx * grid_.hx) + 1.0 / (grid_.hy * grid_.hy));
  if (dt * std::max(adv, dif) > 0.9 + 1e-12)
    throw std::invalid_argument("ViscousSolver::step: dt violates the stability bound");
  const GridSpec& g = grid_;
  double a = cfg_.alpha, sg = cfg_.sigma;
  const std::vector<double>& v = state.field.values;
  std::vector<double> out(v.size());
#pragma omp parallel for schedule(static) num_threads(workers())
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      double c = v[g.idx(i, j)];
      double xl = ghost(v, g, i - 1, j), xr = ghost(v, g, i + 1, j);
      double yl = ghost(v, g, i, j - 1), yr = ghost(v, g, i, j + 1);
      double pxm = (c - xl) / g.hx, pxp = (xr - c) / g.hx;
      double pym = (c - yl) / g.hy, pyp = (yr - c) / g.hy;
      double px = 0.5 * (pxm + pxp), py = 0.5 * (pym + pyp);
      double s = std::hypot(px, py);
      double F = 0.0;
      if (s >= 1e-14) {
        double ramp = s * s / std::sqrt(s * s + sg * sg);
        F = ramp * (interp_speed(cfg_.table, {px / s, py / s}) - a);
      }
      double Fhat = F - 0.5 * theta_ * (pxp - pxm) - 0.5 * theta_ * (pyp - pym);
      double lap = (xl - 2.0 * c + xr) / (g.hx * g.hx) + (yl - 2.0 * c + yr) / (g.hy * g.hy);
      out[g.idx(i, j)] = c - dt * Fhat + dt * a * lap;
    }
  }
  state.field.values.swap(out);
  state.time += dt;
}

HJState ViscousSolver::make_initial(const HopfEvaluator& ev) const {
  double a = cfg_.alpha;
  if (ev.delta() <= 2.0 * a + 1e-12)
    throw std::invalid_argument(
        "ViscousSolver::make_initial: need cutoff delta > 2*alpha so the zero level set of "
        "v0^alpha is nonempty");
  const GridSpec& g = grid_;
  double h = std::max(g.hx, g.hy);
  double rm = std::max(2.0 * h, 0.25 * a);

  auto axis_weights = [&](double spacing) {
    int W = static_cast<int>(std::ceil(rm / spacing - 1e-9));
    std::vector<double> w(2 * W + 1);
    double sum = 0.0;
    for (int k = -W; k <= W; ++k) {
      double s = k * spacing / rm;
      double val = s * s < 1.0 ? (1.0 - s * s) * (1.0 - s * s) : 0.0;
      w[k + W] = val;
      sum += val;
    }
    for (double& x : w) x /= sum;
    return w;
  };
  std::vector<double> wx = axis_weights(g.hx), wy = axis_weights(g.hy);
  int Wx = (static_cast<int>(wx.size()) - 1) / 2, Wy = (static_cast<int>(wy.size()) - 1) / 2;

  // cutoff on the extended grid; the kernel never truncates, keeping the
  // mollification an exact convex combination of shifted convex functions
  int enx = g.nx + 2 * Wx, eny = g.ny + 2 * Wy;
  std::vector<double> ext(static_cast<size_t>(enx) * eny);
#pragma omp parallel for schedule(static) num_threads(workers())
  for (int j = 0; j < eny; ++j)
    for (int i = 0; i < enx; ++i)
      ext[static_cast<size_t>(j) * enx + i] =
          ev.cutoff(0.0, {g.x(i - Wx), g.y(j - Wy)});

  // separable convolution: x pass then y pass
  std::vector<double> mid(static_cast<size_t>(g.nx) * eny);
#pragma omp parallel for schedule(static) num_threads(workers())
  for (int j = 0; j < eny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      double s = 0.0;
      for (int k = -Wx; k <= Wx; ++k)
        s += wx[k + Wx] * ext[static_cast<size_t>(j) * enx + (i + Wx + k)];
      mid[static_cast<size_t>(j) * g.nx + i] = s;
    }
  ScalarField v0(g);
#pragma omp parallel for schedule(static) num_threads(workers())
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      double s = 0.0;
      for (int k = -Wy; k <= Wy; ++k)
        s += wy[k + Wy] * mid[static_cast<size_t>(j + Wy + k) * g.nx + i];
      v0.at(i, j) = s;
    }

  const double gamma = 1.0 - 1e-3;  // gradient slack absorbing the convex bump
  double mu = 1e-3 * a;
  double cx = 0.5 * (g.x0 + g.x_max()), cy = 0.5 * (g.y0 + g.y_max());
  double diam2 = (g.x_max() - g.x0) * (g.x_max() - g.x0) + (g.y_max() - g.y0) * (g.y_max() - g.y0);
  double min_d = std::numeric_limits<double>::infinity(), max_d = -min_d;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      double x = g.x(i), y = g.y(j);
      double q = ((x - cx) * (x - cx) + (y - cy) * (y - cy)) / diam2;
      double base = gamma * v0.at(i, j) + mu * q;
      v0.at(i, j) = base;
      double d = base - ev.cutoff(0.0, {x, y});
      min_d = std::min(min_d, d);
      max_d = std::max(max_d, d);
    }
  if (0.5 * (max_d - min_d) > 0.5 * a - 1e-9)
    throw std::runtime_error(
        "ViscousSolver::make_initial: sandwich infeasible, mollification variation " +
        std::to_string(max_d - min_d) + " exceeds alpha = " + std::to_string(a));
  double offset = 1.5 * a - 0.5 * (min_d + max_d);
  for (double& x : v0.values) x += offset;

  // verify the constructed bounds instead of assuming them
  min_d += offset;
  max_d += offset;
  if (min_d < a - 1e-9 || max_d > 2.0 * a + 1e-9)
    throw std::runtime_error("ViscousSolver::make_initial: sandwich bound violated");
  double gm = upwind_grad_max(v0);
  if (gm > 1.0 + 1e-9)
    throw std::runtime_error("ViscousSolver::make_initial: gradient bound violated: " +
                             std::to_string(gm));
  if (min_second_difference(v0) < -1e-9)
    throw std::runtime_error("ViscousSolver::make_initial: discrete convexity violated");
  return {0.0, std::move(v0)};
}

std::vector<ViscousSnapshot> ViscousSolver::run(const HopfEvaluator& ev,
                                                const std::vector<double>& snapshot_times) const {
  HJState state = make_initial(ev);
  std::vector<ViscousSnapshot> out;
  for (double target : run_targets(0.0, snapshot_times)) {
    double gap = target - state.time;
    if (gap > 1e-12) {
      long n = static_cast<long>(std::ceil(gap / stable_dt() - 1e-12));
      double dt = gap / n;
      for (long k = 0; k < n; ++k) step(state, dt);
    }
    state.time = target;
    state.field.check_finite();

    std::vector<Contour> cs = extract_level_set(state.field, 0.0);
    if (cs.empty())
      throw std::runtime_error("ViscousSolver::run: zero level set empty at t=" +
                               std::to_string(target));
    std::vector<Vec2> pts;
    for (const Contour& c : cs) {
      if (!c.closed)
        throw std::runtime_error("ViscousSolver::run: zero level set touches the grid boundary");
      pts.insert(pts.end(), c.points.begin(), c.points.end());
    }
    ViscousSnapshot snap;
    snap.time = target;
    snap.field = state.field;
    snap.curve = convex_hull(pts);
    snap.grad_max = upwind_grad_max(state.field);
    snap.min_second_diff = min_second_difference(state.field);
    snap.hausdorff_to_hopf = hausdorff(snap.curve, ev.interface_at(target));
    out.push_back(std::move(snap));
  }
  return out;
}

}  // namespace frontlab
