#pragma once

#include <string>
#include <vector>

#include "frontlab/geometry.hpp"

namespace frontlab {

struct PeriodicCell {
  double L1 = 1.0, L2 = 1.0;
  void validate() const;
};

enum class ProfileKind { fisher_kpp, allee, arrhenius, nicholson, bistable_demo };

std::string profile_name(ProfileKind kind);

/// Reaction profile f~(u). bistable_demo is u(1-u)(u-0.3), kept only so the
/// monostability checker has a failing specimen to report on.
struct Profile {
  ProfileKind kind = ProfileKind::fisher_kpp;
  double allee_r = 2.0;  // only for kind == allee; must be > 1

  double value(double u) const;
  double derivative_at_zero() const;
};

struct AmplitudeMode {
  int k1 = 0, k2 = 0;
  double a = 0.0, phi = 0.0;
};

/// p(x) = base + sum a*sin(2*pi*(k1 x1/L1 + k2 x2/L2) + phi); exactly
/// periodic on the cell.
struct Amplitude {
  double base = 1.0;
  std::vector<AmplitudeMode> modes;

  double value(Vec2 x, const PeriodicCell& cell) const;
  /// Minimum over an n-by-n sampling of the cell (n >= 64 enforced).
  double min_on_cell(const PeriodicCell& cell, int n = 64) const;
};

/// Periodic monostable reaction term f(x,u) = p(x) * f~(u).
class Nonlinearity {
 public:
  Nonlinearity(PeriodicCell cell, Amplitude amplitude, Profile profile, bool kpp, double rho);

  double eval(Vec2 x, double u) const;               // throws for u < 0
  double linearization_at_zero(Vec2 x) const;        // p(x) * f~'(0)
  double profile_value(double u) const { return profile_.value(u); }

  const PeriodicCell& cell() const { return cell_; }
  const Amplitude& amplitude() const { return amplitude_; }
  const Profile& profile() const { return profile_; }
  bool kpp() const { return kpp_; }
  double rho() const { return rho_; }
  double max_amplitude_on_cell() const;

 private:
  PeriodicCell cell_;
  Amplitude amplitude_;
  Profile profile_;
  bool kpp_ = false;
  double rho_ = 0.1;
};

struct CheckItem {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct MonostableReport {
  std::vector<CheckItem> checks;
  bool all_pass() const;
  std::string to_text() const;
};

/// Samples the structural assumptions: steady states at 0 and 1,
/// nonnegativity on [0,1], positivity somewhere for each interior u, a
/// monotone band of width rho near 1, and (when flagged) the KPP
/// inequality f(x,u) <= du_f(x,0) * u.
MonostableReport check_monostable(const Nonlinearity& nl, int n_samples);

}  // namespace frontlab
