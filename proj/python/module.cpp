#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "frontlab/config.hpp"
#include "frontlab/frontspeed.hpp"
#include "frontlab/harness.hpp"
#include "frontlab/hj.hpp"
#include "frontlab/hopf.hpp"
#include "frontlab/nonlinearity.hpp"
#include "frontlab/parallel.hpp"
#include "frontlab/rdsim.hpp"

namespace py = pybind11;
using namespace frontlab;

PYBIND11_MODULE(_frontlab, m) {
  m.doc() = "periodic monostable front laboratory";

  py::class_<Vec2>(m, "Vec2")
      .def(py::init<double, double>(), py::arg("x"), py::arg("y"))
      .def_readwrite("x", &Vec2::x)
      .def_readwrite("y", &Vec2::y)
      .def("__repr__", [](const Vec2& v) {
        return "Vec2(" + std::to_string(v.x) + ", " + std::to_string(v.y) + ")";
      });

  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init([](int nx, int ny, double x0, double y0, double hx, double hy) {
             return GridSpec{nx, ny, x0, y0, hx, hy};
           }),
           py::arg("nx"), py::arg("ny"), py::arg("x0"), py::arg("y0"), py::arg("hx"),
           py::arg("hy"))
      .def_readonly("nx", &GridSpec::nx)
      .def_readonly("ny", &GridSpec::ny)
      .def_readonly("x0", &GridSpec::x0)
      .def_readonly("y0", &GridSpec::y0)
      .def_readonly("hx", &GridSpec::hx)
      .def_readonly("hy", &GridSpec::hy);

  py::class_<ScalarField>(m, "ScalarField")
      .def_readonly("grid", &ScalarField::grid)
      .def_readonly("values", &ScalarField::values)
      .def("at", [](const ScalarField& f, int i, int j) { return f.at(i, j); })
      .def("bilinear", [](const ScalarField& f, double x, double y) { return f.bilinear(x, y); });

  py::class_<ConvexCurve>(m, "ConvexCurve")
      .def_static("from_vertices", &ConvexCurve::from_vertices)
      .def_readonly("vertices", &ConvexCurve::vertices)
      .def("area", &ConvexCurve::area)
      .def("centroid", &ConvexCurve::centroid)
      .def("min_curvature_radius", &ConvexCurve::min_curvature_radius);

  m.def("make_circle", &make_circle, py::arg("center"), py::arg("radius"),
        py::arg("n_vertices"));
  m.def("make_ellipse", &make_ellipse, py::arg("a"), py::arg("b"), py::arg("n_vertices"));
  m.def("signed_distance", &signed_distance);
  m.def("hausdorff", &hausdorff);

  py::enum_<ProfileKind>(m, "ProfileKind")
      .value("fisher_kpp", ProfileKind::fisher_kpp)
      .value("allee", ProfileKind::allee)
      .value("arrhenius", ProfileKind::arrhenius)
      .value("nicholson", ProfileKind::nicholson)
      .value("bistable_demo", ProfileKind::bistable_demo);

  py::class_<PeriodicCell>(m, "PeriodicCell")
      .def(py::init([](double L1, double L2) { return PeriodicCell{L1, L2}; }), py::arg("L1"),
           py::arg("L2"))
      .def_readonly("L1", &PeriodicCell::L1)
      .def_readonly("L2", &PeriodicCell::L2);

  py::class_<AmplitudeMode>(m, "AmplitudeMode")
      .def(py::init([](int k1, int k2, double a, double phi) {
             return AmplitudeMode{k1, k2, a, phi};
           }),
           py::arg("k1"), py::arg("k2"), py::arg("a"), py::arg("phi") = 0.0);

  py::class_<Amplitude>(m, "Amplitude")
      .def(py::init([](double base, std::vector<AmplitudeMode> modes) {
             return Amplitude{base, std::move(modes)};
           }),
           py::arg("base") = 1.0, py::arg("modes") = std::vector<AmplitudeMode>{})
      .def("value", &Amplitude::value);

  py::class_<Profile>(m, "Profile")
      .def(py::init([](ProfileKind kind, double allee_r) { return Profile{kind, allee_r}; }),
           py::arg("kind"), py::arg("allee_r") = 2.0)
      .def("value", &Profile::value)
      .def("derivative_at_zero", &Profile::derivative_at_zero);

  py::class_<Nonlinearity>(m, "Nonlinearity")
      .def(py::init<PeriodicCell, Amplitude, Profile, bool, double>(), py::arg("cell"),
           py::arg("amplitude"), py::arg("profile"), py::arg("kpp"), py::arg("rho") = 0.1)
      .def("eval", &Nonlinearity::eval)
      .def("linearization_at_zero", &Nonlinearity::linearization_at_zero)
      .def_property_readonly("kpp", &Nonlinearity::kpp);

  py::class_<CheckItem>(m, "CheckItem")
      .def_readonly("name", &CheckItem::name)
      .def_readonly("pass_", &CheckItem::pass)
      .def_readonly("detail", &CheckItem::detail);

  py::class_<MonostableReport>(m, "MonostableReport")
      .def_readonly("checks", &MonostableReport::checks)
      .def("all_pass", &MonostableReport::all_pass)
      .def("to_text", &MonostableReport::to_text);

  m.def("check_monostable", &check_monostable, py::arg("nl"), py::arg("n_samples") = 128);

  py::enum_<SpeedMethod>(m, "SpeedMethod")
      .value("measured", SpeedMethod::measured)
      .value("kpp_oracle", SpeedMethod::kpp_oracle);

  py::class_<SpeedEntry>(m, "SpeedEntry")
      .def_readonly("theta", &SpeedEntry::theta)
      .def_readonly("c_star", &SpeedEntry::c_star)
      .def_readonly("method", &SpeedEntry::method)
      .def_readonly("fit_residual", &SpeedEntry::fit_residual);

  py::class_<SpeedTable>(m, "SpeedTable")
      .def_readonly("entries", &SpeedTable::entries)
      .def("validate", &SpeedTable::validate)
      .def("max_adjacent_jump", &SpeedTable::max_adjacent_jump)
      .def("median_adjacent_jump", &SpeedTable::median_adjacent_jump)
      .def("min_speed", &SpeedTable::min_speed)
      .def("max_speed", &SpeedTable::max_speed);

  m.def("make_constant_table", &make_constant_table, py::arg("c"), py::arg("n_theta"));
  m.def("interp_speed", &interp_speed);

  py::class_<KPPOracleConfig>(m, "KPPOracleConfig")
      .def(py::init<>())
      .def_readwrite("cell_nx", &KPPOracleConfig::cell_nx)
      .def_readwrite("cell_ny", &KPPOracleConfig::cell_ny)
      .def_readwrite("lambda_min", &KPPOracleConfig::lambda_min)
      .def_readwrite("lambda_max", &KPPOracleConfig::lambda_max)
      .def_readwrite("golden_tol", &KPPOracleConfig::golden_tol)
      .def_readwrite("growth_tol", &KPPOracleConfig::growth_tol)
      .def_readwrite("max_steps", &KPPOracleConfig::max_steps);

  py::class_<OracleResult>(m, "OracleResult")
      .def_readonly("c_star", &OracleResult::c_star)
      .def_readonly("lambda_star", &OracleResult::lambda_star)
      .def_readonly("k_star", &OracleResult::k_star);

  m.def("kpp_speed_oracle", &kpp_speed_oracle, py::arg("n"), py::arg("nl"),
        py::arg("cfg") = KPPOracleConfig{});

  py::class_<SpeedMeasurementConfig>(m, "SpeedMeasurementConfig")
      .def(py::init<>())
      .def_readwrite("sigma", &SpeedMeasurementConfig::sigma)
      .def_readwrite("fit_t0", &SpeedMeasurementConfig::fit_t0)
      .def_readwrite("fit_t1", &SpeedMeasurementConfig::fit_t1)
      .def_readwrite("strip_length", &SpeedMeasurementConfig::strip_length)
      .def_readwrite("strip_width", &SpeedMeasurementConfig::strip_width)
      .def_readwrite("transverse_samples", &SpeedMeasurementConfig::transverse_samples)
      .def_readwrite("h", &SpeedMeasurementConfig::h)
      .def_readwrite("cfl_fraction", &SpeedMeasurementConfig::cfl_fraction);

  py::class_<MeasuredSpeed>(m, "MeasuredSpeed")
      .def_readonly("speed", &MeasuredSpeed::speed)
      .def_readonly("fit_residual", &MeasuredSpeed::fit_residual);

  m.def("measure_speed", &measure_speed, py::arg("n"), py::arg("nl"), py::arg("cfg"));

  py::enum_<TableMethod>(m, "TableMethod")
      .value("measured", TableMethod::measured)
      .value("kpp_oracle", TableMethod::kpp_oracle)
      .value("hybrid", TableMethod::hybrid);

  py::class_<SpeedTableConfig>(m, "SpeedTableConfig")
      .def(py::init<>())
      .def_readwrite("n_theta", &SpeedTableConfig::n_theta)
      .def_readwrite("method", &SpeedTableConfig::method)
      .def_readwrite("oracle", &SpeedTableConfig::oracle)
      .def_readwrite("measurement", &SpeedTableConfig::measurement);

  m.def("build_speed_table", &build_speed_table, py::arg("nl"), py::arg("cfg"));

  py::class_<HopfEvaluator>(m, "HopfEvaluator")
      .def(py::init<ConvexCurve, const SpeedTable&, double>(), py::arg("gamma0"),
           py::arg("table"), py::arg("delta") = -1.0)
      .def_static("constant_speed", &HopfEvaluator::constant_speed, py::arg("gamma0"),
                  py::arg("c"), py::arg("delta") = -1.0)
      .def("value", &HopfEvaluator::value)
      .def("cutoff", &HopfEvaluator::cutoff)
      .def("interface_at", &HopfEvaluator::interface_at)
      .def("signed_distance_t", &HopfEvaluator::signed_distance_t)
      .def_property_readonly("delta", &HopfEvaluator::delta)
      .def_property_readonly("min_speed", &HopfEvaluator::min_speed)
      .def_property_readonly("max_speed", &HopfEvaluator::max_speed);

  py::class_<HJState>(m, "HJState")
      .def_readonly("time", &HJState::time)
      .def_readonly("field", &HJState::field);

  py::class_<LFSolver>(m, "LFSolver")
      .def(py::init<SpeedTable, GridSpec, double>(), py::arg("table"), py::arg("grid"),
           py::arg("safety") = 0.9)
      .def("stable_dt", &LFSolver::stable_dt)
      .def("run", &LFSolver::run, py::arg("w0"), py::arg("snapshot_times"));

  py::class_<ViscousConfig>(m, "ViscousConfig")
      .def(py::init<>())
      .def_readwrite("alpha", &ViscousConfig::alpha)
      .def_readwrite("sigma", &ViscousConfig::sigma)
      .def_readwrite("table", &ViscousConfig::table)
      .def_readwrite("safety", &ViscousConfig::safety);

  py::class_<ViscousSnapshot>(m, "ViscousSnapshot")
      .def_readonly("time", &ViscousSnapshot::time)
      .def_readonly("field", &ViscousSnapshot::field)
      .def_readonly("curve", &ViscousSnapshot::curve)
      .def_readonly("grad_max", &ViscousSnapshot::grad_max)
      .def_readonly("min_second_diff", &ViscousSnapshot::min_second_diff)
      .def_readonly("hausdorff_to_hopf", &ViscousSnapshot::hausdorff_to_hopf);

  py::class_<ViscousSolver>(m, "ViscousSolver")
      .def(py::init<ViscousConfig, GridSpec>(), py::arg("cfg"), py::arg("grid"))
      .def("stable_dt", &ViscousSolver::stable_dt)
      .def("run", &ViscousSolver::run, py::arg("ev"), py::arg("snapshot_times"));

  py::class_<Snapshot>(m, "Snapshot")
      .def_readonly("time", &Snapshot::time)
      .def_readonly("field", &Snapshot::field)
      .def_readonly("front_contact", &Snapshot::front_contact)
      .def_readonly("min_value", &Snapshot::min_value)
      .def_readonly("max_value", &Snapshot::max_value)
      .def_readonly("mass", &Snapshot::mass);

  py::class_<ScaledRunConfig>(m, "ScaledRunConfig")
      .def(py::init<>())
      .def_readwrite("epsilon", &ScaledRunConfig::epsilon)
      .def_readwrite("horizon", &ScaledRunConfig::horizon)
      .def_readwrite("gamma0", &ScaledRunConfig::gamma0)
      .def_readwrite("m", &ScaledRunConfig::m)
      .def_readwrite("w", &ScaledRunConfig::w)
      .def_readwrite("h", &ScaledRunConfig::h)
      .def_readwrite("max_speed", &ScaledRunConfig::max_speed)
      .def_readwrite("margin_periods", &ScaledRunConfig::margin_periods)
      .def_readwrite("node_cap", &ScaledRunConfig::node_cap)
      .def_readwrite("snapshot_times", &ScaledRunConfig::snapshot_times);

  m.def(
      "run_scaled",
      [](const ScaledRunConfig& cfg, const Nonlinearity& nl) { return run_scaled(cfg, nl); },
      py::arg("cfg"), py::arg("nl"));

  py::class_<BandMetrics>(m, "BandMetrics")
      .def_readonly("M_in", &BandMetrics::M_in)
      .def_readonly("M_out", &BandMetrics::M_out)
      .def_readonly("layer_hausdorff", &BandMetrics::layer_hausdorff);

  m.def("band_metrics", &band_metrics, py::arg("u"), py::arg("gamma_t"), py::arg("beta"));

  py::class_<ConvergenceConfig>(m, "ConvergenceConfig")
      .def(py::init<>())
      .def_readwrite("epsilons", &ConvergenceConfig::epsilons)
      .def_readwrite("beta", &ConvergenceConfig::beta)
      .def_readwrite("eta", &ConvergenceConfig::eta)
      .def_readwrite("tau", &ConvergenceConfig::tau)
      .def_readwrite("T", &ConvergenceConfig::T)
      .def_readwrite("sample_times", &ConvergenceConfig::sample_times)
      .def_readwrite("scaled", &ConvergenceConfig::scaled);

  py::class_<ConvergenceRecord>(m, "ConvergenceRecord")
      .def_readonly("epsilon", &ConvergenceRecord::epsilon)
      .def_readonly("t", &ConvergenceRecord::t)
      .def_readonly("M_in", &ConvergenceRecord::M_in)
      .def_readonly("M_out", &ConvergenceRecord::M_out)
      .def_readonly("layer_hausdorff", &ConvergenceRecord::layer_hausdorff);

  m.def("run_convergence", &run_convergence, py::arg("cfg"), py::arg("nl"), py::arg("ev"));

  py::class_<RunConfig>(m, "RunConfig")
      .def_static("parse_string", &RunConfig::parse_string)
      .def_static("parse_file", &RunConfig::parse_file)
      .def_readonly("workers", &RunConfig::workers)
      .def_readonly("output_dir", &RunConfig::output_dir);

  m.def("set_workers", &set_workers);
  m.def("workers", &workers);
}
