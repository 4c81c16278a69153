#include "frontlab/rdsim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "frontlab/parallel.hpp"

namespace frontlab {

namespace {

bool is_period_multiple(double length, double period) {
  double k = length / period;
  return std::abs(k - std::round(k)) <= 1e-6 * std::max(1.0, k);
}

}  // namespace

double SolverConfig::cfl_bound() const {
  double hx2 = box.hx * box.hx, hy2 = box.hy * box.hy;
  return hx2 * hy2 / (2.0 * (hx2 + hy2));
}

double SolverConfig::effective_dt() const { return dt > 0.0 ? dt : cfl_fraction * cfl_bound(); }

void SolverConfig::validate(const PeriodicCell& cell) const {
  box.validate();
  if (!(cfl_fraction > 0.0 && cfl_fraction <= 0.9))
    throw std::invalid_argument("SolverConfig: cfl_fraction must be in (0, 0.9]");
  if (effective_dt() > 0.9 * cfl_bound() * (1.0 + 1e-12))
    throw std::invalid_argument("SolverConfig: dt violates the CFL bound");
  if (!is_period_multiple((box.nx - 1) * box.hx, cell.L1) ||
      !is_period_multiple((box.ny - 1) * box.hy, cell.L2))
    throw std::invalid_argument("SolverConfig: box sides must be integer multiples of the cell");
}

RDSolver::RDSolver(const Nonlinearity& nl, const SolverConfig& cfg) : nl_(nl), cfg_(cfg) {
  cfg_.validate(nl.cell());
  dt_ = cfg_.effective_dt();
  const GridSpec& g = cfg_.box;
  p_.resize(g.size());
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      p_[g.idx(i, j)] = nl.amplitude().value({g.x(i), g.y(j)}, nl.cell());
}

namespace {

template <class F>
void euler_step(const GridSpec& g, const std::vector<double>& src, std::vector<double>& dst,
                const std::vector<double>& p, double dt, F&& profile) {
  const double ax = dt / (g.hx * g.hx), ay = dt / (g.hy * g.hy);
  const int nx = g.nx, ny = g.ny;
#pragma omp parallel for schedule(static) num_threads(workers())
  for (int j = 0; j < ny; ++j) {
    std::size_t row = static_cast<std::size_t>(j) * nx;
    if (j == 0 || j == ny - 1) {
      std::fill(dst.begin() + row, dst.begin() + row + nx, 0.0);
      continue;
    }
    dst[row] = 0.0;
    dst[row + nx - 1] = 0.0;
    const double* um = src.data() + row - nx;
    const double* uc = src.data() + row;
    const double* up = src.data() + row + nx;
    const double* pc = p.data() + row;
    double* out = dst.data() + row;
    for (int i = 1; i < nx - 1; ++i) {
      double u = uc[i];
      out[i] = u + ax * (uc[i + 1] - 2.0 * u + uc[i - 1]) + ay * (up[i] - 2.0 * u + um[i]) +
               dt * pc[i] * profile(u);
    }
  }
}

}  // namespace

void RDSolver::step_into(const std::vector<double>& src, std::vector<double>& dst,
                         double dt) const {
  const GridSpec& g = cfg_.box;
  switch (nl_.profile().kind) {
    case ProfileKind::fisher_kpp:
      euler_step(g, src, dst, p_, dt, [](double u) { return u * (1.0 - u); });
      break;
    case ProfileKind::allee: {
      double r = nl_.profile().allee_r;
      euler_step(g, src, dst, p_, dt, [r](double u) { return std::pow(u, r) * (1.0 - u); });
      break;
    }
    case ProfileKind::arrhenius:
      euler_step(g, src, dst, p_, dt,
                 [](double u) { return u <= 0.0 ? 0.0 : std::exp(-1.0 / u) * (1.0 - u); });
      break;
    case ProfileKind::nicholson:
      euler_step(g, src, dst, p_, dt, [](double u) { return u * (std::exp(1.0 - u) - 1.0); });
      break;
    default: {
      const Profile& pr = nl_.profile();
      euler_step(g, src, dst, p_, dt, [&pr](double u) { return pr.value(u); });
    }
  }
}

ScalarField RDSolver::step(const ScalarField& state) const {
  ScalarField next(cfg_.box);
  step_into(state.values, next.values, dt_);
  return next;
}

Snapshot RDSolver::make_snapshot(double time, const std::vector<double>& u) const {
  const GridSpec& g = cfg_.box;
  Snapshot s;
  s.time = time;
  s.field.grid = g;
  s.field.values = u;
  // Row partials folded in index order keep the reduction deterministic.
  std::vector<double> row_min(g.ny), row_max(g.ny), row_sum(g.ny);
#pragma omp parallel for schedule(static) num_threads(workers())
  for (int j = 0; j < g.ny; ++j) {
    double mn = u[g.idx(0, j)], mx = mn, sum = 0.0;
    for (int i = 0; i < g.nx; ++i) {
      double v = u[g.idx(i, j)];
      mn = std::min(mn, v);
      mx = std::max(mx, v);
      sum += v;
    }
    row_min[j] = mn;
    row_max[j] = mx;
    row_sum[j] = sum;
  }
  s.min_value = row_min[0];
  s.max_value = row_max[0];
  s.mass = 0.0;
  for (int j = 0; j < g.ny; ++j) {
    s.min_value = std::min(s.min_value, row_min[j]);
    s.max_value = std::max(s.max_value, row_max[j]);
    s.mass += row_sum[j];
  }
  s.mass *= g.hx * g.hy;

  double ring_max = 0.0;
  for (int i = 0; i < g.nx; ++i)
    ring_max = std::max({ring_max, u[g.idx(i, 1)], u[g.idx(i, g.ny - 2)]});
  for (int j = 0; j < g.ny; ++j)
    ring_max = std::max({ring_max, u[g.idx(1, j)], u[g.idx(g.nx - 2, j)]});
  s.front_contact = ring_max > 1e-3;
  return s;
}

std::vector<Snapshot> RDSolver::run(const ScalarField& u0, const StepObserver& observer) const {
  const GridSpec& g = cfg_.box;
  if (u0.grid.nx != g.nx || u0.grid.ny != g.ny)
    throw std::invalid_argument("RDSolver::run: initial field grid mismatch");

  std::vector<double> times = cfg_.snapshot_times;
  std::sort(times.begin(), times.end());
  if (!times.empty() && times.front() < -1e-12)
    throw std::invalid_argument("RDSolver::run: negative snapshot time");

  std::vector<Snapshot> out;
  std::vector<double> cur = u0.values, nxt(g.size());
  if (observer && !observer(0, 0.0, cur)) return out;
  double t = 0.0;
  long step = 0;
  bool stopped = false;
  for (double target : times) {
    double gap = target - t;
    if (gap > 1e-12 && !stopped) {
      // dt shrunk per segment so snapshot times are hit exactly
      long n = static_cast<long>(std::ceil(gap / dt_ - 1e-12));
      double dt_seg = gap / n;
      for (long s = 0; s < n; ++s) {
        step_into(cur, nxt, dt_seg);
        cur.swap(nxt);
        ++step;
        t += dt_seg;
        if (observer && !observer(step, t, cur)) {
          stopped = true;
          break;
        }
      }
    }
    if (stopped) break;
    t = target;
    out.push_back(make_snapshot(t, cur));
  }
  return out;
}

double smoothstep(double r) {
  if (r <= 0.0) return 0.0;
  if (r >= 1.0) return 1.0;
  return r * r * r * (10.0 + r * (-15.0 + 6.0 * r));
}

ScalarField initial_bump(const ConvexCurve& gamma0, double m, double w, const GridSpec& grid) {
  if (!(m > 0.0 && m < 1.0)) throw std::invalid_argument("initial_bump: m must be in (0,1)");
  if (!(w > 0.0)) throw std::invalid_argument("initial_bump: w must be > 0");
  ScalarField g0(grid);
  // Quick reject outside the bounding box of the support.
  double bx0 = 1e300, bx1 = -1e300, by0 = 1e300, by1 = -1e300;
  for (const Vec2& v : gamma0.vertices) {
    bx0 = std::min(bx0, v.x);
    bx1 = std::max(bx1, v.x);
    by0 = std::min(by0, v.y);
    by1 = std::max(by1, v.y);
  }
#pragma omp parallel for schedule(static) num_threads(workers())
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      Vec2 x{grid.x(i), grid.y(j)};
      if (x.x < bx0 || x.x > bx1 || x.y < by0 || x.y > by1) continue;
      double d = signed_distance(gamma0, x);
      if (d >= 0.0) continue;
      g0.at(i, j) = m * smoothstep(-d / w);
    }
  }
  return g0;
}

ScalarField initial_planar(Vec2 n, double offset, double sigma, const GridSpec& grid) {
  if (!(sigma >= 0.0 && sigma < 1.0))
    throw std::invalid_argument("initial_planar: sigma must be in [0,1)");
  ScalarField u0(grid);
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i)
      if (Vec2{grid.x(i), grid.y(j)}.dot(n) <= offset) u0.at(i, j) = sigma;
  return u0;
}

void ScaledRunConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw std::invalid_argument("ScaledRunConfig: epsilon must be in (0,1]");
  if (!(m > 0.0 && m < 1.0)) throw std::invalid_argument("ScaledRunConfig: m must be in (0,1)");
  if (!(w > 0.0)) throw std::invalid_argument("ScaledRunConfig: w must be > 0");
  if (!(horizon > 0.0)) throw std::invalid_argument("ScaledRunConfig: horizon must be > 0");
  if (!(max_speed > 0.0)) throw std::invalid_argument("ScaledRunConfig: max_speed must be > 0");
}

GridSpec scaled_run_box(const ScaledRunConfig& cfg, const Nonlinearity& nl) {
  cfg.validate();
  const PeriodicCell& cell = nl.cell();
  Vec2 c = cfg.gamma0.centroid();
  double r0 = 0.0;
  for (const Vec2& v : cfg.gamma0.vertices) r0 = std::max(r0, (v - c).norm());
  // Scaled reach of the interface plus margin, then unscaled and snapped to
  // whole periods so the box-period invariant holds exactly.
  double reach = r0 + cfg.max_speed * cfg.horizon;
  double half_x = reach / cfg.epsilon + cfg.margin_periods * cell.L1;
  double half_y = reach / cfg.epsilon + cfg.margin_periods * cell.L2;
  double side_x = 2.0 * std::ceil(half_x / cell.L1) * cell.L1;
  double side_y = 2.0 * std::ceil(half_y / cell.L2) * cell.L2;
  // Spacing adjusted to divide the period exactly.
  double hx = cell.L1 / std::max(1.0, std::round(cell.L1 / cfg.h));
  double hy = cell.L2 / std::max(1.0, std::round(cell.L2 / cfg.h));

  GridSpec g;
  g.nx = static_cast<int>(std::llround(side_x / hx)) + 1;
  g.ny = static_cast<int>(std::llround(side_y / hy)) + 1;
  g.hx = hx;
  g.hy = hy;
  g.x0 = c.x / cfg.epsilon - side_x / 2.0;
  g.y0 = c.y / cfg.epsilon - side_y / 2.0;
  return g;
}

std::vector<Snapshot> run_scaled(const ScaledRunConfig& cfg, const Nonlinearity& nl,
                                 const StepObserver& observer) {
  GridSpec box = scaled_run_box(cfg, nl);
  if (static_cast<double>(box.nx) * box.ny > cfg.node_cap)
    throw std::invalid_argument("run_scaled: grid would exceed the node cap (" +
                                std::to_string(box.nx) + "x" + std::to_string(box.ny) + ")");

  SolverConfig scfg;
  scfg.box = box;
  scfg.cfl_fraction = cfg.cfl_fraction;
  scfg.snapshot_times.reserve(cfg.snapshot_times.size());
  for (double t : cfg.snapshot_times) scfg.snapshot_times.push_back(t / cfg.epsilon);

  RDSolver solver(nl, scfg);
  ConvexCurve gamma_unscaled = cfg.gamma0.scaled(1.0 / cfg.epsilon);
  ScalarField u0 = initial_bump(gamma_unscaled, cfg.m, cfg.w / cfg.epsilon, box);
  std::vector<Snapshot> snaps = solver.run(u0, observer);

  for (Snapshot& s : snaps) {
    s.time *= cfg.epsilon;
    s.field.grid.x0 *= cfg.epsilon;
    s.field.grid.y0 *= cfg.epsilon;
    s.field.grid.hx *= cfg.epsilon;
    s.field.grid.hy *= cfg.epsilon;
    s.mass *= cfg.epsilon * cfg.epsilon;
  }
  return snaps;
}

}  // namespace frontlab
