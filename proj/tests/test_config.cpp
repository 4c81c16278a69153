#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "frontlab/config.hpp"

using namespace frontlab;

TEST_CASE("minimal config parses with defaults") {
  RunConfig c = RunConfig::parse_string("{}");
  CHECK(c.workers == 1);
  CHECK(c.output_dir == ".");
  CHECK_FALSE(c.has_nonlinearity);
  CHECK_FALSE(c.has_speed);
  CHECK_THROWS_AS(c.make_nonlinearity(), std::invalid_argument);
}

TEST_CASE("unknown keys are rejected at every level") {
  CHECK_THROWS_WITH_AS(RunConfig::parse_string(R"({"bogus": 1})"),
                       "config: top level: unknown key 'bogus'", std::invalid_argument);
  CHECK_THROWS_AS(RunConfig::parse_string(R"({"nonlinearity": {"prof": "fisher_kpp"}})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      RunConfig::parse_string(R"({"nonlinearity": {"amplitude": {"bias": 1.0}}})"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      RunConfig::parse_string(
          R"({"nonlinearity": {"amplitude": {"modes": [{"k1": 1, "amp": 0.5}]}}})"),
      std::invalid_argument);
  CHECK_THROWS_AS(RunConfig::parse_string(R"({"speed": {"oracle": {"tol": 1e-4}}})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(RunConfig::parse_string(R"({"hopf": {"grid": {"spacing": 0.1}}})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(RunConfig::parse_string(R"({"converge": {"eps": [0.1]}})"),
                  std::invalid_argument);
}

TEST_CASE("malformed JSON and wrong types are flagged") {
  CHECK_THROWS_AS(RunConfig::parse_string("{"), std::invalid_argument);
  CHECK_THROWS_AS(RunConfig::parse_string(R"({"workers": "four"})"), std::invalid_argument);
  CHECK_THROWS_AS(RunConfig::parse_string(R"({"workers": 2.5})"), std::invalid_argument);
  CHECK_THROWS_AS(RunConfig::parse_string(R"({"hopf": {"times": 1.0}})"), std::invalid_argument);
  CHECK_THROWS_AS(RunConfig::parse_string(R"({"geometry": {"center": [1.0]}})"),
                  std::invalid_argument);
}

TEST_CASE("nonlinearity section round-trips") {
  RunConfig c = RunConfig::parse_string(R"({
    "nonlinearity": {
      "cell": [1.0, 2.0],
      "profile": "nicholson",
      "kpp": true,
      "rho": 0.05,
      "amplitude": {"base": 1.5, "modes": [{"k1": 2, "k2": -1, "a": 0.3, "phi": 0.7}]}
    }
  })");
  REQUIRE(c.has_nonlinearity);
  CHECK(c.cell.L1 == doctest::Approx(1.0));
  CHECK(c.cell.L2 == doctest::Approx(2.0));
  CHECK(c.profile.kind == ProfileKind::nicholson);
  CHECK(c.kpp);
  CHECK(c.rho == doctest::Approx(0.05));
  CHECK(c.amplitude.base == doctest::Approx(1.5));
  REQUIRE(c.amplitude.modes.size() == 1);
  CHECK(c.amplitude.modes[0].k1 == 2);
  CHECK(c.amplitude.modes[0].k2 == -1);
  CHECK(c.amplitude.modes[0].a == doctest::Approx(0.3));
  CHECK(c.amplitude.modes[0].phi == doctest::Approx(0.7));
  CHECK_NOTHROW(c.make_nonlinearity());
}

TEST_CASE("bad profile and bad enum values are rejected") {
  CHECK_THROWS_AS(RunConfig::parse_string(R"({"nonlinearity": {"profile": "cubic"}})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(RunConfig::parse_string(R"({"speed": {"method": "guess"}})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(RunConfig::parse_string(R"({"hj": {"scheme": "godunov"}})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(RunConfig::parse_string(R"({"geometry": {"type": "blob"}})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(RunConfig::parse_string(R"({"geometry": {"type": "polygon"}})"),
                  std::invalid_argument);
}

TEST_CASE("geometry builds circles and ellipses") {
  RunConfig c = RunConfig::parse_string(
      R"({"geometry": {"type": "circle", "center": [1.0, -0.5], "radius": 2.0, "n_vertices": 64}})");
  REQUIRE(c.has_geometry);
  CHECK(c.gamma0.vertices.size() == 64);
  Vec2 cen = c.gamma0.centroid();
  CHECK(cen.x == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(cen.y == doctest::Approx(-0.5).epsilon(1e-6));
  RunConfig e = RunConfig::parse_string(R"({"geometry": {"type": "ellipse", "a": 2.0, "b": 1.0}})");
  CHECK(e.gamma0.area() == doctest::Approx(2.0 * std::acos(-1.0)).epsilon(1e-3));
}

TEST_CASE("speed section fills measurement, oracle, and constant") {
  RunConfig c = RunConfig::parse_string(R"({
    "speed": {
      "n_theta": 32, "method": "kpp_oracle",
      "fit_window": [20.0, 50.0], "strip_length": 120.0,
      "oracle": {"cell_grid": [64, 8], "lambda_bounds": [0.1, 4.0], "golden_tol": 1e-5},
      "constant": 2.0
    }
  })");
  REQUIRE(c.has_speed);
  CHECK(c.speed.n_theta == 32);
  CHECK(c.speed.method == TableMethod::kpp_oracle);
  CHECK(c.speed.measurement.fit_t0 == doctest::Approx(20.0));
  CHECK(c.speed.measurement.fit_t1 == doctest::Approx(50.0));
  CHECK(c.speed.measurement.strip_length == doctest::Approx(120.0));
  CHECK(c.speed.oracle.cell_nx == 64);
  CHECK(c.speed.oracle.cell_ny == 8);
  CHECK(c.speed.oracle.lambda_min == doctest::Approx(0.1));
  CHECK(c.speed.oracle.golden_tol == doctest::Approx(1e-5));
  CHECK(c.speed_constant == doctest::Approx(2.0));
}

TEST_CASE("grid sections become centered grids") {
  GridSection s;
  s.center = {1.0, -1.0};
  s.half = {2.0, 1.0};
  s.h = 0.25;
  GridSpec g = s.to_grid();
  CHECK(g.nx == 17);
  CHECK(g.ny == 9);
  CHECK(g.x0 == doctest::Approx(-1.0));
  CHECK(g.y0 == doctest::Approx(-2.0));
  CHECK(g.x_max() == doctest::Approx(3.0));
  CHECK(g.y_max() == doctest::Approx(0.0));
  s.h = -1.0;
  CHECK_THROWS_AS(s.to_grid(), std::invalid_argument);
}

TEST_CASE("converge and generation copy the simulate template") {
  RunConfig c = RunConfig::parse_string(R"({
    "simulate": {"h": 0.2, "max_speed": 2.5, "margin_periods": 5.0},
    "converge": {"epsilons": [0.04, 0.02], "beta": 0.25, "tau": 0.3, "T": 0.9,
                 "sample_times": [0.5, 0.9]},
    "generation": {"epsilons": [0.1, 0.05], "eta": 0.05, "beta_gen": 0.3, "horizon": 0.4}
  })");
  REQUIRE(c.has_converge);
  CHECK(c.converge.beta == doctest::Approx(0.25));
  CHECK(c.converge.scaled.h == doctest::Approx(0.2));
  CHECK(c.converge.scaled.max_speed == doctest::Approx(2.5));
  REQUIRE(c.has_generation);
  CHECK(c.generation.scaled.margin_periods == doctest::Approx(5.0));
  CHECK(c.generation.horizon == doctest::Approx(0.4));
}

TEST_CASE("hj and regularization sections parse") {
  RunConfig c = RunConfig::parse_string(R"({
    "hj": {"scheme": "viscous", "alpha": 0.15, "times": [0.5, 1.0],
           "grid": {"half": [7.0, 7.0], "h": 0.05}},
    "regularization": {"alphas": [0.2, 0.1, 0.05], "times": [0.5], "sigma_cap": 0.1}
  })");
  REQUIRE(c.has_hj);
  CHECK(c.hj_scheme == "viscous");
  CHECK(c.hj_alpha == doctest::Approx(0.15));
  CHECK(c.hj_sigma < 0.0);  // default: derive from alpha
  CHECK(c.hj_times.size() == 2);
  CHECK(c.hj_grid.half.x == doctest::Approx(7.0));
  REQUIRE(c.has_regularization);
  CHECK(c.reg_alphas.size() == 3);
  CHECK(c.reg_sigma_cap == doctest::Approx(0.1));
}
