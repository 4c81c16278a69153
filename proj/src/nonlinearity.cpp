#include "frontlab/nonlinearity.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace frontlab {

void PeriodicCell::validate() const {
  if (!(L1 > 0.0) || !(L2 > 0.0)) throw std::invalid_argument("PeriodicCell: periods must be > 0");
}

std::string profile_name(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::fisher_kpp: return "fisher_kpp";
    case ProfileKind::allee: return "allee";
    case ProfileKind::arrhenius: return "arrhenius";
    case ProfileKind::nicholson: return "nicholson";
    case ProfileKind::bistable_demo: return "bistable_demo";
  }
  return "?";
}

double Profile::value(double u) const {
  switch (kind) {
    case ProfileKind::fisher_kpp: return u * (1.0 - u);
    case ProfileKind::allee: return std::pow(u, allee_r) * (1.0 - u);
    case ProfileKind::arrhenius:
      // continuous extension: exp(-1/u) -> 0 as u -> 0+
      return u <= 0.0 ? 0.0 : std::exp(-1.0 / u) * (1.0 - u);
    case ProfileKind::nicholson: return u * (std::exp(1.0 - u) - 1.0);
    case ProfileKind::bistable_demo: return u * (1.0 - u) * (u - 0.3);
  }
  return 0.0;
}

double Profile::derivative_at_zero() const {
  switch (kind) {
    case ProfileKind::fisher_kpp: return 1.0;
    case ProfileKind::allee: return 0.0;      // u^r factor, r > 1
    case ProfileKind::arrhenius: return 0.0;  // exp(-1/u) flat at 0
    case ProfileKind::nicholson: return std::numbers::e - 1.0;
    case ProfileKind::bistable_demo: return -0.3;
  }
  return 0.0;
}

double Amplitude::value(Vec2 x, const PeriodicCell& cell) const {
  double p = base;
  for (const AmplitudeMode& m : modes)
    p += m.a * std::sin(2.0 * std::numbers::pi * (m.k1 * x.x / cell.L1 + m.k2 * x.y / cell.L2) +
                        m.phi);
  return p;
}

double Amplitude::min_on_cell(const PeriodicCell& cell, int n) const {
  if (n < 64) n = 64;
  double mn = value({0.0, 0.0}, cell);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      mn = std::min(mn, value({cell.L1 * i / n, cell.L2 * j / n}, cell));
  return mn;
}

Nonlinearity::Nonlinearity(PeriodicCell cell, Amplitude amplitude, Profile profile, bool kpp,
                           double rho)
    : cell_(cell), amplitude_(amplitude), profile_(profile), kpp_(kpp), rho_(rho) {
  cell_.validate();
  if (!(amplitude_.base > 0.0)) throw std::invalid_argument("Nonlinearity: p base must be > 0");
  if (amplitude_.min_on_cell(cell_) < 1e-6)
    throw std::invalid_argument("Nonlinearity: amplitude p(x) not positive on the cell");
  if (!(rho_ > 0.0 && rho_ < 1.0)) throw std::invalid_argument("Nonlinearity: rho must be in (0,1)");
  if (profile_.kind == ProfileKind::allee && !(profile_.allee_r > 1.0))
    throw std::invalid_argument("Nonlinearity: allee exponent must be > 1");
}

double Nonlinearity::eval(Vec2 x, double u) const {
  if (u < 0.0) throw std::invalid_argument("Nonlinearity::eval: u < 0");
  return amplitude_.value(x, cell_) * profile_.value(u);
}

double Nonlinearity::linearization_at_zero(Vec2 x) const {
  return amplitude_.value(x, cell_) * profile_.derivative_at_zero();
}

double Nonlinearity::max_amplitude_on_cell() const {
  int n = 128;
  double mx = amplitude_.value({0.0, 0.0}, cell_);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      mx = std::max(mx, amplitude_.value({cell_.L1 * i / n, cell_.L2 * j / n}, cell_));
  return mx;
}

bool MonostableReport::all_pass() const {
  for (const CheckItem& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string MonostableReport::to_text() const {
  std::ostringstream os;
  for (const CheckItem& c : checks)
    os << (c.pass ? "PASS" : "FAIL") << "  " << c.name << (c.detail.empty() ? "" : "  (" + c.detail + ")")
       << "\n";
  os << (all_pass() ? "all checks passed" : "some checks FAILED") << "\n";
  return os.str();
}

MonostableReport check_monostable(const Nonlinearity& nl, int n_samples) {
  if (n_samples < 64) throw std::invalid_argument("check_monostable: n_samples must be >= 64");
  MonostableReport rep;
  const PeriodicCell& cell = nl.cell();
  auto sample_x = [&](int i, int j) {
    return Vec2{cell.L1 * i / n_samples, cell.L2 * j / n_samples};
  };
  int nx_probe = 16;  // spatial probes combined with dense u sampling

  {
    double worst = 0.0;
    for (int i = 0; i < n_samples; ++i)
      for (int j = 0; j < n_samples; ++j) {
        worst = std::max(worst, std::abs(nl.eval(sample_x(i, j), 0.0)));
        worst = std::max(worst, std::abs(nl.eval(sample_x(i, j), 1.0)));
      }
    rep.checks.push_back({"steady states f(x,0)=f(x,1)=0", worst <= 1e-12,
                          "max |f| at u in {0,1}: " + std::to_string(worst)});
  }
  {
    double worst = 0.0;
    for (int k = 0; k <= n_samples; ++k) {
      double u = static_cast<double>(k) / n_samples;
      for (int i = 0; i < nx_probe; ++i)
        for (int j = 0; j < nx_probe; ++j) {
          double f = nl.eval({cell.L1 * i / nx_probe, cell.L2 * j / nx_probe}, u);
          worst = std::min(worst, f);
        }
    }
    rep.checks.push_back({"nonnegativity on [0,1]", worst >= -1e-12,
                          "min f: " + std::to_string(worst)});
  }
  {
    bool ok = true;
    double weakest = 1e300;
    for (int k = 1; k < n_samples; ++k) {
      double u = static_cast<double>(k) / n_samples;
      double best = 0.0;
      for (int i = 0; i < nx_probe; ++i)
        for (int j = 0; j < nx_probe; ++j)
          best = std::max(best, nl.eval({cell.L1 * i / nx_probe, cell.L2 * j / nx_probe}, u));
      weakest = std::min(weakest, best);
      if (best <= 0.0) ok = false;
    }
    rep.checks.push_back({"positivity somewhere for u in (0,1)", ok,
                          "weakest max_x f: " + std::to_string(weakest)});
  }
  {
    // f(x,.) nonincreasing on (1-rho, 1]: sampled finite differences.
    bool ok = true;
    double worst = 0.0;
    for (int k = 0; k < n_samples; ++k) {
      double u0 = 1.0 - nl.rho() + nl.rho() * k / n_samples;
      double u1 = 1.0 - nl.rho() + nl.rho() * (k + 1) / n_samples;
      for (int i = 0; i < nx_probe; ++i)
        for (int j = 0; j < nx_probe; ++j) {
          Vec2 x{cell.L1 * i / nx_probe, cell.L2 * j / nx_probe};
          double d = nl.eval(x, u1) - nl.eval(x, u0);
          worst = std::max(worst, d);
          if (d > 1e-12) ok = false;
        }
    }
    rep.checks.push_back({"monotone band near u=1 (width rho)", ok,
                          "max increase: " + std::to_string(worst)});
  }
  if (nl.kpp()) {
    double worst = -1e300;
    for (int k = 0; k <= n_samples; ++k) {
      double u = static_cast<double>(k) / n_samples;
      for (int i = 0; i < nx_probe; ++i)
        for (int j = 0; j < nx_probe; ++j) {
          Vec2 x{cell.L1 * i / nx_probe, cell.L2 * j / nx_probe};
          worst = std::max(worst, nl.eval(x, u) - nl.linearization_at_zero(x) * u);
        }
    }
    rep.checks.push_back({"KPP inequality f(x,u) <= du_f(x,0) u", worst <= 1e-12,
                          "max excess: " + std::to_string(worst)});
  }
  return rep;
}

}  // namespace frontlab
