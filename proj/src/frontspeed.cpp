#include "frontlab/frontspeed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "frontlab/rdsim.hpp"

namespace frontlab {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

}  // namespace

std::string speed_method_name(SpeedMethod m) {
  return m == SpeedMethod::measured ? "measured" : "kpp_oracle";
}

void SpeedTable::validate() const {
  int n = static_cast<int>(entries.size());
  if (n < 8) throw std::invalid_argument("SpeedTable: need at least 8 angles");
  for (int k = 0; k < n; ++k) {
    const SpeedEntry& e = entries[k];
    if (!(e.c_star > 0.0)) throw std::invalid_argument("SpeedTable: speeds must be > 0");
    double expected = two_pi * k / n;
    if (std::abs(e.theta - expected) > 1e-9)
      throw std::invalid_argument("SpeedTable: angles must be uniform in [0,2pi)");
  }
}

double SpeedTable::max_adjacent_jump() const {
  int n = static_cast<int>(entries.size());
  double mx = 0.0;
  for (int k = 0; k < n; ++k)
    mx = std::max(mx, std::abs(entries[(k + 1) % n].c_star - entries[k].c_star));
  return mx;
}

double SpeedTable::median_adjacent_jump() const {
  int n = static_cast<int>(entries.size());
  std::vector<double> jumps(n);
  for (int k = 0; k < n; ++k)
    jumps[k] = std::abs(entries[(k + 1) % n].c_star - entries[k].c_star);
  std::nth_element(jumps.begin(), jumps.begin() + n / 2, jumps.end());
  return jumps[n / 2];
}

double SpeedTable::min_speed() const {
  double mn = entries.front().c_star;
  for (const SpeedEntry& e : entries) mn = std::min(mn, e.c_star);
  return mn;
}

double SpeedTable::max_speed() const {
  double mx = entries.front().c_star;
  for (const SpeedEntry& e : entries) mx = std::max(mx, e.c_star);
  return mx;
}

SpeedTable make_constant_table(double c, int n_theta) {
  if (!(c > 0.0)) throw std::invalid_argument("make_constant_table: c must be > 0");
  SpeedTable t;
  for (int k = 0; k < n_theta; ++k)
    t.entries.push_back({two_pi * k / n_theta, c, SpeedMethod::kpp_oracle, 0.0});
  t.validate();
  return t;
}

double interp_speed(const SpeedTable& table, Vec2 n) {
  int m = static_cast<int>(table.entries.size());
  double theta = std::atan2(n.y, n.x);
  if (theta < 0.0) theta += two_pi;
  double dth = two_pi / m;
  double f = theta / dth;
  int k = static_cast<int>(std::floor(f));
  double t = f - k;
  k %= m;
  if (k < 0) k += m;
  auto at = [&](int i) { return table.entries[((i % m) + m) % m].c_star; };
  double p0 = at(k - 1), p1 = at(k), p2 = at(k + 1), p3 = at(k + 2);
  // uniform Catmull-Rom, interpolating with slopes (p2-p0)/2
  double a0 = 2.0 * p1;
  double a1 = p2 - p0;
  double a2 = 2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3;
  double a3 = -p0 + 3.0 * p1 - 3.0 * p2 + p3;
  return 0.5 * (a0 + a1 * t + a2 * t * t + a3 * t * t * t);
}

double interp_slope_bound(const SpeedTable& table) {
  int m = static_cast<int>(table.entries.size());
  double dth = two_pi / m;
  // Catmull-Rom slope is bounded by 2x the largest divided difference
  return 2.0 * table.max_adjacent_jump() / dth;
}

void KPPOracleConfig::validate() const {
  if (cell_nx < 8 || cell_ny < 4)
    throw std::invalid_argument("KPPOracleConfig: cell grid too coarse (need >= 8x4)");
  if (!(lambda_min > 0.0) || !(lambda_max > lambda_min))
    throw std::invalid_argument("KPPOracleConfig: need 0 < lambda_min < lambda_max");
  if (!(golden_tol > 0.0) || !(growth_tol > 0.0) || max_steps < 1000)
    throw std::invalid_argument("KPPOracleConfig: bad tolerances");
}

namespace {

/// Linear periodic evolution d psi/dt = Lap psi - 2 lambda n.grad psi +
/// zeta psi on the cell; the principal growth rate is k(lambda,n) - lambda^2.
class CellEvolver {
 public:
  CellEvolver(Vec2 n, const Nonlinearity& nl, const KPPOracleConfig& cfg)
      : nx_(cfg.cell_nx), ny_(cfg.cell_ny), n_(n), cfg_(cfg) {
    hx_ = nl.cell().L1 / nx_;
    hy_ = nl.cell().L2 / ny_;
    zeta_.resize(static_cast<size_t>(nx_) * ny_);
    zeta_max_ = 0.0;
    for (int j = 0; j < ny_; ++j)
      for (int i = 0; i < nx_; ++i) {
        double z = nl.linearization_at_zero({i * hx_, j * hy_});
        zeta_[idx(i, j)] = z;
        zeta_max_ = std::max(zeta_max_, z);
      }
    psi_.assign(zeta_.size(), 1.0);  // positive start: overlaps the principal mode
    tmp_.resize(zeta_.size());
  }

  /// Growth rate of the evolution at this lambda, warm-started from the
  /// previous call's eigenfunction estimate.
  double growth_rate(double lambda) {
    double dt = 0.4 / (2.0 / (hx_ * hx_) + 2.0 / (hy_ * hy_) +
                       2.0 * lambda * (std::abs(n_.x) / hx_ + std::abs(n_.y) / hy_) +
                       std::max(zeta_max_, 0.0) + 1.0);
    const int window = 50;
    double k_prev = std::numeric_limits<double>::infinity();
    for (long step = 0; step < cfg_.max_steps; step += window) {
      double k = 0.0;
      for (int w = 0; w < window; ++w) {
        apply(lambda, dt);
        if (w == window - 1) {
          double s0 = 0.0, s1 = 0.0;
          for (size_t m = 0; m < psi_.size(); ++m) {
            s0 += psi_[m] * psi_[m];
            s1 += tmp_[m] * psi_[m];
          }
          k = (s1 / s0 - 1.0) / dt;
        }
        psi_.swap(tmp_);
      }
      double mx = 0.0;
      for (double v : psi_) mx = std::max(mx, std::abs(v));
      if (!(mx > 0.0) || !std::isfinite(mx))
        throw std::runtime_error("kpp_speed_oracle: power iteration degenerated");
      for (double& v : psi_) v /= mx;
      if (std::abs(k - k_prev) < cfg_.growth_tol) return k;
      k_prev = k;
    }
    throw std::runtime_error("kpp_speed_oracle: growth rate did not converge");
  }

 private:
  size_t idx(int i, int j) const { return static_cast<size_t>(j) * nx_ + i; }

  void apply(double lambda, double dt) {
    double ax = dt / (hx_ * hx_), ay = dt / (hy_ * hy_);
    double bx = dt * lambda * n_.x / hx_, by = dt * lambda * n_.y / hy_;
    for (int j = 0; j < ny_; ++j) {
      int jm = (j + ny_ - 1) % ny_, jp = (j + 1) % ny_;
      for (int i = 0; i < nx_; ++i) {
        int im = (i + nx_ - 1) % nx_, ip = (i + 1) % nx_;
        double c = psi_[idx(i, j)];
        double xl = psi_[idx(im, j)], xr = psi_[idx(ip, j)];
        double yl = psi_[idx(i, jm)], yr = psi_[idx(i, jp)];
        tmp_[idx(i, j)] = c + ax * (xl - 2.0 * c + xr) + ay * (yl - 2.0 * c + yr) -
                          bx * (xr - xl) - by * (yr - yl) + dt * zeta_[idx(i, j)] * c;
      }
    }
  }

  int nx_, ny_;
  double hx_, hy_;
  Vec2 n_;
  KPPOracleConfig cfg_;
  std::vector<double> zeta_;
  double zeta_max_;
  std::vector<double> psi_, tmp_;
};

}  // namespace

OracleResult kpp_speed_oracle(Vec2 n, const Nonlinearity& nl, const KPPOracleConfig& cfg) {
  cfg.validate();
  if (!nl.kpp())
    throw std::invalid_argument("kpp_speed_oracle: oracle valid only under KPP");
  if (!(n.norm() > 0.0)) throw std::invalid_argument("kpp_speed_oracle: zero direction");
  n = n.normalized();

  CellEvolver ev(n, nl, cfg);
  auto c_of = [&](double lam) { return (lam * lam + ev.growth_rate(lam)) / lam; };

  // coarse scan: the minimizer must land strictly inside the bounds
  const int scan = 9;
  double xs[scan], fs[scan];
  for (int k = 0; k < scan; ++k) {
    xs[k] = cfg.lambda_min + (cfg.lambda_max - cfg.lambda_min) * k / (scan - 1);
    fs[k] = c_of(xs[k]);
  }
  int best = 0;
  for (int k = 1; k < scan; ++k)
    if (fs[k] < fs[best]) best = k;
  if (best == 0 || best == scan - 1)
    throw std::invalid_argument("kpp_speed_oracle: minimizer at a lambda bound; widen bounds");

  double a = xs[best - 1], b = xs[best + 1];
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c1 = b - invphi * (b - a), c2 = a + invphi * (b - a);
  double f1 = c_of(c1), f2 = c_of(c2);
  while (b - a > cfg.golden_tol) {
    if (f1 < f2) {
      b = c2;
      c2 = c1;
      f2 = f1;
      c1 = b - invphi * (b - a);
      f1 = c_of(c1);
    } else {
      a = c1;
      c1 = c2;
      f1 = f2;
      c2 = a + invphi * (b - a);
      f2 = c_of(c2);
    }
  }
  OracleResult out;
  out.lambda_star = 0.5 * (a + b);
  out.k_star = out.lambda_star * out.lambda_star + ev.growth_rate(out.lambda_star);
  out.c_star = out.k_star / out.lambda_star;
  return out;
}

void SpeedMeasurementConfig::validate() const {
  if (!(sigma > 0.0 && sigma < 1.0))
    throw std::invalid_argument("SpeedMeasurementConfig: sigma must be in (0,1)");
  if (!(fit_t0 > 0.0 && fit_t1 > fit_t0))
    throw std::invalid_argument("SpeedMeasurementConfig: need 0 < fit_t0 < fit_t1");
  if (fit_t0 < 0.3 * fit_t1 - 1e-12)
    throw std::invalid_argument("SpeedMeasurementConfig: fit window must discard the transient (t_a >= 0.3 t_b)");
  if (!(level > 0.0 && level < 1.0))
    throw std::invalid_argument("SpeedMeasurementConfig: level must be in (0,1)");
  if (!(strip_length > 0.0) || !(strip_width > 0.0) || !(h > 0.0))
    throw std::invalid_argument("SpeedMeasurementConfig: strip and h must be > 0");
  if (transverse_samples < 3)
    throw std::invalid_argument("SpeedMeasurementConfig: need >= 3 transverse samples");
  if (!(snapshot_dt > 0.0) || !(cfl_fraction > 0.0 && cfl_fraction <= 0.9))
    throw std::invalid_argument("SpeedMeasurementConfig: bad snapshot_dt or cfl_fraction");
}

MeasuredSpeed measure_speed(Vec2 n, const Nonlinearity& nl, const SpeedMeasurementConfig& cfg) {
  cfg.validate();
  if (!(n.norm() > 0.0)) throw std::invalid_argument("measure_speed: zero direction");
  n = n.normalized();
  {
    MonostableReport rep = check_monostable(nl, 64);
    if (!rep.all_pass())
      throw std::invalid_argument("measure_speed: nonlinearity fails monostability checks:\n" +
                                  rep.to_text());
  }

  double L1 = nl.cell().L1, L2 = nl.cell().L2;
  double period = std::max(L1, L2);
  double len = cfg.strip_length, wid = cfg.strip_width;

  // axis-aligned box containing the n-oriented strip, whole cell periods
  double half_x = 0.5 * (len * std::abs(n.x) + wid * std::abs(n.y));
  double half_y = 0.5 * (len * std::abs(n.y) + wid * std::abs(n.x));
  auto snap_up = [](double half, double L) { return L * std::ceil(half / L - 1e-9); };
  half_x = snap_up(half_x, L1);
  half_y = snap_up(half_y, L2);
  double hx = L1 / std::max(1.0, std::round(L1 / cfg.h));
  double hy = L2 / std::max(1.0, std::round(L2 / cfg.h));

  SolverConfig scfg;
  scfg.box.nx = static_cast<int>(std::lround(2.0 * half_x / hx)) + 1;
  scfg.box.ny = static_cast<int>(std::lround(2.0 * half_y / hy)) + 1;
  scfg.box.x0 = -half_x;
  scfg.box.y0 = -half_y;
  scfg.box.hx = hx;
  scfg.box.hy = hy;
  scfg.cfl_fraction = cfg.cfl_fraction;
  for (double t = cfg.fit_t0; t <= cfg.fit_t1 + 1e-9; t += cfg.snapshot_dt)
    scfg.snapshot_times.push_back(t);

  double s_init = -0.5 * len + 4.0 * period;
  RDSolver solver(nl, scfg);
  ScalarField u0 = initial_planar(n, s_init, cfg.sigma, scfg.box);
  std::vector<Snapshot> snaps = solver.run(u0);

  double s_lo = -0.5 * len + 2.0 * period;
  double s_hi = 0.5 * len - 2.0 * period;
  Vec2 tr = n.perp();
  double step = 0.5 * std::min(hx, hy);

  std::vector<double> times, positions;
  for (const Snapshot& s : snaps) {
    std::vector<double> crossings;
    for (int l = 0; l < cfg.transverse_samples; ++l) {
      double tau = -0.25 * wid + 0.5 * wid * l / (cfg.transverse_samples - 1);
      double found = std::numeric_limits<double>::quiet_NaN();
      double prev_s = s_hi, prev_u = 0.0;
      bool first = true;
      for (double ss = s_hi; ss >= s_lo - 1e-9; ss -= step) {
        Vec2 p = n * ss + tr * tau;
        double u = s.field.bilinear(p.x, p.y);
        if (u >= cfg.level) {
          found = first ? ss
                        : ss + (prev_s - ss) * (u - cfg.level) / (u - prev_u);
          break;
        }
        prev_s = ss;
        prev_u = u;
        first = false;
      }
      if (std::isnan(found))
        throw std::runtime_error("measure_speed: level-" + std::to_string(cfg.level) +
                                 " crossing not found at t=" + std::to_string(s.time));
      crossings.push_back(found);
    }
    std::nth_element(crossings.begin(), crossings.begin() + crossings.size() / 2,
                     crossings.end());
    double X = crossings[crossings.size() / 2];
    if (X > s_hi - 2.0 * period + 1e-9 || X < s_lo + 1e-9)
      throw std::runtime_error("measure_speed: front reached the strip end inside the fit window");
    if (!positions.empty() && X < positions.back() - cfg.monotone_tol)
      throw std::runtime_error("measure_speed: front position non-monotone beyond tolerance");
    times.push_back(s.time);
    positions.push_back(X);
  }

  size_t m = times.size();
  if (m < 3) throw std::invalid_argument("measure_speed: fit window holds fewer than 3 snapshots");
  double st = 0, sx = 0, stt = 0, stx = 0;
  for (size_t k = 0; k < m; ++k) {
    st += times[k];
    sx += positions[k];
    stt += times[k] * times[k];
    stx += times[k] * positions[k];
  }
  double slope = (m * stx - st * sx) / (m * stt - st * st);
  double intercept = (sx - slope * st) / m;
  double rss = 0.0;
  for (size_t k = 0; k < m; ++k) {
    double r = positions[k] - (intercept + slope * times[k]);
    rss += r * r;
  }
  return {slope, std::sqrt(rss / m)};
}

SpeedTable build_speed_table(const Nonlinearity& nl, const SpeedTableConfig& cfg) {
  if (cfg.n_theta < 8) throw std::invalid_argument("build_speed_table: n_theta must be >= 8");
  bool use_oracle;
  switch (cfg.method) {
    case TableMethod::kpp_oracle:
      if (!nl.kpp())
        throw std::invalid_argument("build_speed_table: oracle method needs the KPP flag");
      use_oracle = true;
      break;
    case TableMethod::measured: use_oracle = false; break;
    case TableMethod::hybrid: use_oracle = nl.kpp(); break;
    default: throw std::invalid_argument("build_speed_table: bad method");
  }
  SpeedTable table;
  for (int k = 0; k < cfg.n_theta; ++k) {
    double theta = two_pi * k / cfg.n_theta;
    Vec2 n{std::cos(theta), std::sin(theta)};
    try {
      if (use_oracle) {
        OracleResult r = kpp_speed_oracle(n, nl, cfg.oracle);
        table.entries.push_back({theta, r.c_star, SpeedMethod::kpp_oracle, 0.0});
      } else {
        MeasuredSpeed r = measure_speed(n, nl, cfg.measurement);
        table.entries.push_back({theta, r.speed, SpeedMethod::measured, r.fit_residual});
      }
    } catch (const std::exception& e) {
      throw std::runtime_error("build_speed_table: direction theta=" + std::to_string(theta) +
                               " failed: " + e.what());
    }
  }
  table.validate();
  return table;
}

}  // namespace frontlab
