#include "frontlab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "frontlab/contour.hpp"
#include "frontlab/parallel.hpp"

namespace frontlab {

namespace {

const double nan_v = std::numeric_limits<double>::quiet_NaN();

/// Hausdorff distance between the union of extracted contours (as dense
/// point samples with segment resolution <= grid spacing) and a convex
/// curve.
double contours_hausdorff(const std::vector<Contour>& cs, const ConvexCurve& curve) {
  double d1 = 0.0;
  for (const Contour& c : cs)
    for (const Vec2& p : c.points) d1 = std::max(d1, boundary_distance(curve, p));
  double d2 = 0.0;
  for (const Vec2& v : curve.vertices) {
    double mn = std::numeric_limits<double>::infinity();
    for (const Contour& c : cs)
      for (const Vec2& p : c.points) mn = std::min(mn, (v - p).norm());
    d2 = std::max(d2, mn);
  }
  return std::max(d1, d2);
}

void require_decreasing(const std::vector<double>& xs, const char* what) {
  if (xs.empty()) throw std::invalid_argument(std::string(what) + ": empty list");
  for (size_t k = 0; k < xs.size(); ++k) {
    if (!(xs[k] > 0.0)) throw std::invalid_argument(std::string(what) + ": entries must be > 0");
    if (k > 0 && !(xs[k] < xs[k - 1]))
      throw std::invalid_argument(std::string(what) + ": entries must be strictly decreasing");
  }
}

}  // namespace

BandMetrics band_metrics(const ScalarField& u, const ConvexCurve& gamma_t, double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("band_metrics: beta must be > 0");
  gamma_t.validate();
  const GridSpec& g = u.grid;
  BandMetrics out;
  double m_in = 0.0, m_out = 0.0;
#pragma omp parallel for schedule(static) num_threads(workers()) reduction(max : m_in, m_out)
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      double d = signed_distance(gamma_t, {g.x(i), g.y(j)});
      if (d <= -beta)
        m_in = std::max(m_in, std::abs(1.0 - u.at(i, j)));
      else if (d >= beta)
        m_out = std::max(m_out, u.at(i, j));
    }
  }
  out.M_in = m_in;
  out.M_out = m_out;
  std::vector<Contour> cs = extract_level_set(u, 0.5);
  out.layer_hausdorff = cs.empty() ? 0.0 : contours_hausdorff(cs, gamma_t);
  return out;
}

void ConvergenceConfig::validate() const {
  require_decreasing(epsilons, "ConvergenceConfig: epsilons");
  if (!(beta > 0.0)) throw std::invalid_argument("ConvergenceConfig: beta must be > 0");
  for (double e : epsilons)
    if (!(e < beta / 2.0))
      throw std::invalid_argument("ConvergenceConfig: epsilons must all be < beta/2");
  if (!(eta > 0.0 && eta < 1.0))
    throw std::invalid_argument("ConvergenceConfig: eta must be in (0,1)");
  if (!(tau > 0.0 && tau < T))
    throw std::invalid_argument("ConvergenceConfig: need 0 < tau < T");
  if (sample_times.empty())
    throw std::invalid_argument("ConvergenceConfig: sample_times empty");
  for (double t : sample_times)
    if (t < tau - 1e-12 || t > T + 1e-12)
      throw std::invalid_argument("ConvergenceConfig: sample times must lie in [tau, T]");
}

std::vector<ConvergenceRecord> run_convergence(const ConvergenceConfig& cfg,
                                               const Nonlinearity& nl, const HopfEvaluator& ev) {
  cfg.validate();
  std::vector<ConvergenceRecord> out;
  for (double eps : cfg.epsilons) {
    ScaledRunConfig rc = cfg.scaled;
    rc.epsilon = eps;
    rc.horizon = cfg.T;
    rc.snapshot_times = cfg.sample_times;
    rc.gamma0 = ev.gamma0();
    rc.max_speed = std::max(rc.max_speed, 1.1 * ev.max_speed());
    rc.validate();
    double h_scaled = eps * nl.cell().L1 / std::max(1.0, std::round(nl.cell().L1 / rc.h));
    if (!(cfg.beta > 4.0 * h_scaled))
      throw std::invalid_argument(
          "run_convergence: beta must exceed 4x the scaled grid spacing at epsilon=" +
          std::to_string(eps));
    std::vector<Snapshot> snaps = run_scaled(rc, nl);
    for (const Snapshot& s : snaps) {
      if (s.front_contact)
        throw std::runtime_error("run_convergence: front contacted the box boundary at epsilon=" +
                                 std::to_string(eps) + ", t=" + std::to_string(s.time));
      ConvexCurve gamma_t = ev.interface_at(s.time);
      BandMetrics m = band_metrics(s.field, gamma_t, cfg.beta);
      out.push_back({eps, s.time, m.M_in, m.M_out, m.layer_hausdorff});
    }
  }
  return out;
}

void GenerationConfig::validate() const {
  require_decreasing(epsilons, "GenerationConfig: epsilons");
  if (!(eta > 0.0 && eta < 1.0))
    throw std::invalid_argument("GenerationConfig: eta must be in (0,1)");
  if (!(beta_gen > 0.0)) throw std::invalid_argument("GenerationConfig: beta_gen must be > 0");
  if (!(horizon > 0.0)) throw std::invalid_argument("GenerationConfig: horizon must be > 0");
}

GenerationResult run_generation(const GenerationConfig& cfg, const Nonlinearity& nl,
                                const HopfEvaluator& ev) {
  cfg.validate();
  GenerationResult result;
  for (double eps : cfg.epsilons) {
    ScaledRunConfig rc = cfg.scaled;
    rc.epsilon = eps;
    rc.horizon = cfg.horizon;
    rc.snapshot_times = {cfg.horizon};
    rc.gamma0 = ev.gamma0();
    rc.validate();

    GridSpec box = scaled_run_box(rc, nl);
    std::vector<std::size_t> probe;
    for (int j = 0; j < box.ny; ++j)
      for (int i = 0; i < box.nx; ++i)
        if (signed_distance(ev.gamma0(), {eps * box.x(i), eps * box.y(j)}) <= -cfg.beta_gen)
          probe.push_back(box.idx(i, j));
    if (probe.empty())
      throw std::invalid_argument("run_generation: probe region holds no grid nodes");

    double t_hit = nan_v;
    double threshold = 1.0 - cfg.eta;
    StepObserver obs = [&](long, double t, const std::vector<double>& u) {
      double mn = std::numeric_limits<double>::infinity();
      for (std::size_t idx : probe) mn = std::min(mn, u[idx]);
      if (mn >= threshold) {
        t_hit = eps * t;
        return false;
      }
      return true;
    };
    run_scaled(rc, nl, obs);
    GenerationRecord rec;
    rec.epsilon = eps;
    rec.reached = !std::isnan(t_hit);
    rec.t_gen = rec.reached ? t_hit : nan_v;
    result.records.push_back(rec);
  }

  double see = 0.0, set = 0.0;
  for (const GenerationRecord& r : result.records)
    if (r.reached) {
      see += r.epsilon * r.epsilon;
      set += r.epsilon * r.t_gen;
    }
  if (see > 0.0) {
    result.slope = set / see;
    double rss = 0.0, tss = 0.0;
    for (const GenerationRecord& r : result.records)
      if (r.reached) {
        double res = r.t_gen - result.slope * r.epsilon;
        rss += res * res;
        tss += r.t_gen * r.t_gen;
      }
    result.rel_residual = tss > 0.0 ? std::sqrt(rss / tss) : 0.0;
  } else {
    result.slope = nan_v;
    result.rel_residual = nan_v;
  }
  return result;
}

void ExpansionConfig::validate() const {
  if (!(eta > 0.0 && eta < 1.0))
    throw std::invalid_argument("ExpansionConfig: eta must be in (0,1)");
  if (!(sigma > 0.0 && sigma <= 1.0 - eta))
    throw std::invalid_argument("ExpansionConfig: need 0 < sigma <= 1 - eta");
  if (placements < 3) throw std::invalid_argument("ExpansionConfig: need >= 3 placements");
  if (!(horizon > 0.0) || !(h > 0.0))
    throw std::invalid_argument("ExpansionConfig: horizon and h must be > 0");
  region.validate();
}

ExpansionResult run_expansion(const ExpansionConfig& cfg, const Nonlinearity& nl) {
  cfg.validate();
  const PeriodicCell& cell = nl.cell();
  ExpansionResult result;
  for (int k = 0; k < cfg.placements; ++k) {
    Vec2 shift{cell.L1 * k / cfg.placements, cell.L2 * k / cfg.placements};
    ConvexCurve region = cfg.region;
    for (Vec2& v : region.vertices) v = v + shift;

    Vec2 c = region.centroid();
    double reach = 0.0;
    for (const Vec2& v : region.vertices) reach = std::max(reach, (v - c).norm());
    double half_x = reach + cfg.margin_periods * cell.L1;
    double half_y = reach + cfg.margin_periods * cell.L2;
    // center snapped to the lattice so the box stays period-aligned
    double cx = std::round(c.x / cell.L1) * cell.L1;
    double cy = std::round(c.y / cell.L2) * cell.L2;
    half_x += std::abs(c.x - cx);
    half_y += std::abs(c.y - cy);
    double side_x = 2.0 * std::ceil(half_x / cell.L1) * cell.L1;
    double side_y = 2.0 * std::ceil(half_y / cell.L2) * cell.L2;
    double hx = cell.L1 / std::max(1.0, std::round(cell.L1 / cfg.h));
    double hy = cell.L2 / std::max(1.0, std::round(cell.L2 / cfg.h));

    SolverConfig scfg;
    scfg.box.nx = static_cast<int>(std::llround(side_x / hx)) + 1;
    scfg.box.ny = static_cast<int>(std::llround(side_y / hy)) + 1;
    scfg.box.hx = hx;
    scfg.box.hy = hy;
    scfg.box.x0 = cx - side_x / 2.0;
    scfg.box.y0 = cy - side_y / 2.0;
    scfg.cfl_fraction = cfg.cfl_fraction;
    scfg.snapshot_times = {cfg.horizon};

    ScalarField u0(scfg.box);
    std::vector<std::size_t> nodes;
    for (int j = 0; j < scfg.box.ny; ++j)
      for (int i = 0; i < scfg.box.nx; ++i)
        if (signed_distance(region, {scfg.box.x(i), scfg.box.y(j)}) <= 0.0) {
          u0.at(i, j) = cfg.sigma;
          nodes.push_back(scfg.box.idx(i, j));
        }
    if (nodes.empty())
      throw std::invalid_argument("run_expansion: region holds no grid nodes");

    double threshold = 1.0 - cfg.eta;
    double t_hit = nan_v;
    StepObserver obs = [&](long, double t, const std::vector<double>& u) {
      double mn = std::numeric_limits<double>::infinity();
      for (std::size_t idx : nodes) mn = std::min(mn, u[idx]);
      if (mn >= threshold) {
        t_hit = t;
        return false;
      }
      return true;
    };
    RDSolver solver(nl, scfg);
    solver.run(u0, obs);
    result.times.push_back(t_hit);
  }
  result.all_reached = true;
  result.t_sigma = 0.0;
  for (double t : result.times) {
    if (std::isnan(t))
      result.all_reached = false;
    else
      result.t_sigma = std::max(result.t_sigma, t);
  }
  return result;
}

void RegularizationConfig::validate() const {
  require_decreasing(alphas, "RegularizationConfig: alphas");
  grid.validate();
  table.validate();
  if (snapshot_times.empty())
    throw std::invalid_argument("RegularizationConfig: snapshot_times empty");
  if (!(sigma_cap > 0.0 && sigma_cap <= 0.1))
    throw std::invalid_argument("RegularizationConfig: sigma_cap must be in (0, 0.1]");
}

std::vector<RegularizationRecord> run_regularization(const RegularizationConfig& cfg,
                                                     const HopfEvaluator& ev) {
  cfg.validate();
  std::vector<RegularizationRecord> out;
  for (double alpha : cfg.alphas) {
    ViscousConfig vc;
    vc.alpha = alpha;
    vc.sigma = std::min(alpha, cfg.sigma_cap);
    vc.table = cfg.table;
    ViscousSolver solver(vc, cfg.grid);
    RegularizationRecord rec;
    rec.alpha = alpha;
    rec.snapshots = solver.run(ev, cfg.snapshot_times);
    rec.sup_hausdorff = 0.0;
    for (const ViscousSnapshot& s : rec.snapshots)
      rec.sup_hausdorff = std::max(rec.sup_hausdorff, s.hausdorff_to_hopf);
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace frontlab
