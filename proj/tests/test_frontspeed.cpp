#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "frontlab/frontspeed.hpp"

using namespace frontlab;

namespace {

Nonlinearity homogeneous_kpp(double p0 = 1.0) {
  return Nonlinearity({1.0, 1.0}, Amplitude{p0, {}}, Profile{ProfileKind::fisher_kpp}, true, 0.1);
}

// p(x) = 1 + 0.5 sin(2 pi x1), the stock heterogeneous medium.
Nonlinearity striped_kpp() {
  return Nonlinearity({1.0, 1.0}, Amplitude{1.0, {{1, 0, 0.5, 0.0}}},
                      Profile{ProfileKind::fisher_kpp}, true, 0.1);
}

KPPOracleConfig striped_oracle_cfg() {
  KPPOracleConfig cfg;
  cfg.cell_nx = 64;
  cfg.cell_ny = 8;  // x1-only medium: principal eigenfunction is x1-only
  return cfg;
}

}  // namespace

TEST_CASE("constant table validates and interpolates exactly") {
  SpeedTable t = make_constant_table(1.7, 16);
  CHECK_NOTHROW(t.validate());
  CHECK(t.min_speed() == doctest::Approx(1.7));
  CHECK(t.max_speed() == doctest::Approx(1.7));
  CHECK(t.max_adjacent_jump() == doctest::Approx(0.0));
  for (double a : {0.0, 0.3, 1.9, 4.4})
    CHECK(interp_speed(t, {std::cos(a), std::sin(a)}) == doctest::Approx(1.7).epsilon(1e-12));
  CHECK(interp_slope_bound(t) == doctest::Approx(0.0));
}

TEST_CASE("table validation rejects bad inputs") {
  SpeedTable few;
  for (int i = 0; i < 4; ++i)
    few.entries.push_back({2.0 * std::numbers::pi * i / 4, 1.0, SpeedMethod::kpp_oracle, 0.0});
  CHECK_THROWS_AS(few.validate(), std::invalid_argument);
  SpeedTable neg = make_constant_table(1.0, 16);
  neg.entries[3].c_star = -0.5;
  CHECK_THROWS_AS(neg.validate(), std::invalid_argument);
  SpeedTable skew = make_constant_table(1.0, 16);
  skew.entries[5].theta += 0.1;  // nonuniform angles
  CHECK_THROWS_AS(skew.validate(), std::invalid_argument);
}

TEST_CASE("interpolation is exact at nodes and on linear data") {
  int n = 16;
  double dth = 2.0 * std::numbers::pi / n;
  SpeedTable t = make_constant_table(1.0, n);
  for (int i = 0; i < n; ++i) t.entries[i].c_star = 2.0 + 0.03 * i;
  for (int i = 0; i < n; ++i) {
    double th = t.entries[i].theta;
    CHECK(interp_speed(t, {std::cos(th), std::sin(th)}) ==
          doctest::Approx(t.entries[i].c_star).epsilon(1e-12));
  }
  // Catmull-Rom reproduces data linear in theta at interior midpoints
  for (int i = 2; i < n - 2; ++i) {
    double th = (i + 0.5) * dth;
    CHECK(interp_speed(t, {std::cos(th), std::sin(th)}) ==
          doctest::Approx(2.0 + 0.03 * (i + 0.5)).epsilon(1e-10));
  }
}

TEST_CASE("oracle on the homogeneous medium gives the classical 2 sqrt(p)") {
  KPPOracleConfig cfg;
  cfg.cell_nx = cfg.cell_ny = 16;  // constant coefficients: any cell grid works
  OracleResult r1 = kpp_speed_oracle({1.0, 0.0}, homogeneous_kpp(1.0), cfg);
  CHECK(r1.c_star == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(r1.lambda_star == doctest::Approx(1.0).epsilon(5e-2));
  OracleResult r4 = kpp_speed_oracle({0.0, 1.0}, homogeneous_kpp(4.0), cfg);
  CHECK(r4.c_star == doctest::Approx(4.0).epsilon(1e-3));
}

TEST_CASE("oracle regression on the striped medium") {
  // frozen reference values for p = 1 + 0.5 sin(2 pi x1)
  OracleResult e2 = kpp_speed_oracle({0.0, 1.0}, striped_kpp(), striped_oracle_cfg());
  CHECK(e2.c_star == doctest::Approx(2.00316357).epsilon(5e-4));
  OracleResult e1 = kpp_speed_oracle({1.0, 0.0}, striped_kpp(), striped_oracle_cfg());
  CHECK(e1.c_star == doctest::Approx(2.00287195).epsilon(5e-4));
  CHECK(e2.c_star > e1.c_star);  // propagation across the stripes is faster
}

TEST_CASE("oracle refuses non-KPP nonlinearities") {
  Nonlinearity allee({1.0, 1.0}, Amplitude{1.0, {}}, Profile{ProfileKind::allee, 2.0}, false, 0.1);
  CHECK_THROWS_AS(kpp_speed_oracle({1.0, 0.0}, allee, {}), std::invalid_argument);
}

TEST_CASE("oracle config validation") {
  KPPOracleConfig bad;
  bad.lambda_min = -0.1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = {};
  bad.lambda_max = bad.lambda_min;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = {};
  bad.cell_nx = 3;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("measurement config validation") {
  SpeedMeasurementConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.fit_t0 = 1.0;  // below 0.3 * fit_t1
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.sigma = 1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.transverse_samples = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("measured speed matches the oracle on a short homogeneous run") {
  // reduced strip: the Dirichlet sides and the log drift cost a few percent
  SpeedMeasurementConfig cfg;
  cfg.strip_length = 80.0;
  cfg.strip_width = 16.0;
  cfg.fit_t0 = 12.0;
  cfg.fit_t1 = 30.0;
  cfg.h = 0.25;
  cfg.transverse_samples = 3;
  MeasuredSpeed m = measure_speed({1.0, 0.0}, homogeneous_kpp(), cfg);
  CHECK(m.speed == doctest::Approx(2.0).epsilon(0.08));
  CHECK(m.fit_residual < 0.2);
}

TEST_CASE("hybrid table picks the oracle for KPP media") {
  SpeedTableConfig cfg;
  cfg.n_theta = 8;
  cfg.method = TableMethod::hybrid;
  cfg.oracle = striped_oracle_cfg();
  SpeedTable t = build_speed_table(striped_kpp(), cfg);
  CHECK_NOTHROW(t.validate());
  CHECK(t.entries.size() == 8);
  for (const SpeedEntry& e : t.entries) {
    CHECK(e.method == SpeedMethod::kpp_oracle);
    CHECK(e.fit_residual == 0.0);
    CHECK(e.c_star > 1.9);
    CHECK(e.c_star < 2.1);
  }
}
