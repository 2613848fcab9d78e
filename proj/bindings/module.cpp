// Python bindings for the polynomial term-structure toolkit.

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "polyterm/calib.hpp"
#include "polyterm/errors.hpp"
#include "polyterm/feller.hpp"
#include "polyterm/io.hpp"
#include "polyterm/linalg.hpp"
#include "polyterm/model.hpp"
#include "polyterm/pricing.hpp"
#include "polyterm/sim.hpp"
#include "polyterm/spectral.hpp"

namespace py = pybind11;
using namespace polyterm;

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

PYBIND11_MODULE(_core, m) {
    m.doc() = "Scalar polynomial term-structure models: feasibility, bond "
              "pricing via the coefficient ODE system, spectral analysis, "
              "Monte Carlo and yield-curve calibration";

    py::register_exception<Error>(m, "DomainError");

    py::class_<Polynomial>(m, "Polynomial")
        .def(py::init<std::vector<double>>(), py::arg("coeffs"))
        .def("__call__", &Polynomial::operator(), py::arg("z"))
        .def_property_readonly("degree", &Polynomial::degree)
        .def_property_readonly("coeffs",
                               [](const Polynomial& p) { return p.coeffs(); })
        .def("derivative", &Polynomial::derivative)
        .def("compose_affine", &Polynomial::compose_affine, py::arg("scale"),
             py::arg("shift"))
        .def("__repr__", [](const Polynomial& p) {
            std::string s = "Polynomial([";
            for (std::size_t k = 0; k < p.coeffs().size(); ++k)
                s += (k ? ", " : "") + std::to_string(p.coeffs()[k]);
            return s + "])";
        });

    py::class_<Interval>(m, "Interval")
        .def(py::init<double, double>(), py::arg("lo"), py::arg("hi"))
        .def_readonly("lo", &Interval::lo)
        .def_readonly("hi", &Interval::hi);

    py::class_<CanonicalParams>(m, "CanonicalParams")
        .def(py::init([](int n, std::array<double, 3> R, std::array<double, 4> b,
                         std::array<double, 3> c) {
                 return CanonicalParams{n, R, b, c};
             }),
             py::arg("n"), py::arg("R"), py::arg("b"), py::arg("c"))
        .def_readwrite("n", &CanonicalParams::n)
        .def_readwrite("R", &CanonicalParams::R)
        .def_readwrite("b", &CanonicalParams::b)
        .def_readwrite("c", &CanonicalParams::c);

    py::class_<GeneralParams>(m, "GeneralParams")
        .def(py::init([](int n, Interval interval, Polynomial R, Polynomial b,
                         Polynomial a) {
                 return GeneralParams{n, interval, std::move(R), std::move(b),
                                      std::move(a)};
             }),
             py::arg("n"), py::arg("interval"), py::arg("R"), py::arg("b"),
             py::arg("a"))
        .def_readwrite("n", &GeneralParams::n)
        .def_readwrite("interval", &GeneralParams::interval)
        .def_readwrite("R", &GeneralParams::R)
        .def_readwrite("b", &GeneralParams::b)
        .def_readwrite("a", &GeneralParams::a);

    // model: feasible sets and parametrization changes
    m.def("vol_factor_positive", &vol_factor_positive, py::arg("c"),
          "c0 + c1 z + c2 z^2 > 0 on (-1, 1)");
    m.def("drift_admissible", &drift_admissible, py::arg("b"), py::arg("c"),
          "endpoint inequalities 2b(-1) - a'(-1) >= 0 >= 2b(1) - a'(1)");
    m.def("is_feasible", &is_feasible, py::arg("params"));
    m.def(
        "check_feasibility",
        [](const CanonicalParams& p) {
            const FeasibilityReport rep = check_feasibility(p);
            py::dict out;
            out["in_C"] = rep.c_ok;
            out["in_B"] = rep.b_ok;
            out["R1_residual"] = rep.r1_residual;
            out["R2_b3_residual"] = rep.r2_b3_residual;
            out["R2_c2_residual"] = rep.r2_c2_residual;
            out["feasible"] = rep.feasible;
            return out;
        },
        py::arg("params"));
    m.def("to_general", &to_general, py::arg("params"));
    m.def("to_canonical", &to_canonical, py::arg("params"));

    // feller
    py::enum_<Verdict>(m, "Verdict")
        .value("NonExplosive", Verdict::NonExplosive)
        .value("Explosive", Verdict::Explosive);
    py::enum_<Side>(m, "Side").value("Left", Side::Left).value("Right", Side::Right);
    py::class_<BoundaryOrders>(m, "BoundaryOrders")
        .def_readonly("alpha", &BoundaryOrders::alpha)
        .def_readonly("A", &BoundaryOrders::A)
        .def_readonly("beta", &BoundaryOrders::beta)
        .def_readonly("B", &BoundaryOrders::B)
        .def_readonly("vanishing_b", &BoundaryOrders::vanishing_b);
    py::class_<EndpointTest>(m, "EndpointTest")
        .def_readonly("left_value", &EndpointTest::left_value)
        .def_readonly("right_value", &EndpointTest::right_value);
    m.def("classify_simple", &classify_simple, py::arg("params"));
    m.def("endpoint_test_values", &endpoint_test_values, py::arg("params"));
    m.def("boundary_orders", &boundary_orders, py::arg("a"), py::arg("b"),
          py::arg("endpoint"), py::arg("side"));
    m.def("classify_from_orders", &classify_from_orders, py::arg("left"),
          py::arg("right"));

    // pricing
    py::class_<CompanionMatrix>(m, "CompanionMatrix")
        .def_readonly("n", &CompanionMatrix::n)
        .def_readonly("entries", &CompanionMatrix::entries);
    m.def("companion_matrix", &companion_matrix, py::arg("params"));
    m.def("bond_coefficients", &bond_coefficients, py::arg("matrix"),
          py::arg("maturity"));
    m.def("bond_price", &bond_price, py::arg("params"), py::arg("maturity"),
          py::arg("state"));
    m.def("bond_yield", &bond_yield, py::arg("params"), py::arg("maturity"),
          py::arg("state"));
    m.def(
        "pde_residual",
        [](const GeneralParams& g, const std::vector<std::pair<double, double>>& grid) {
            return pde_residual(g, grid);
        },
        py::arg("params"), py::arg("grid"));
    m.def("expm", &expm, py::arg("matrix"));

    // spectral
    py::class_<InvariantDensity>(m, "InvariantDensity")
        .def(py::init<const GeneralParams&>(), py::arg("params"))
        .def("__call__", &InvariantDensity::operator(), py::arg("z"))
        .def("log_density", &InvariantDensity::log_density, py::arg("z"))
        .def("integrate_against", &InvariantDensity::integrate_against,
             py::arg("fn"), py::arg("abs_tol") = 1e-12, py::arg("scale") = 1.0)
        .def_property_readonly("boundary_case", &InvariantDensity::boundary_case)
        .def_property_readonly("left_orders", &InvariantDensity::left_orders)
        .def_property_readonly("right_orders", &InvariantDensity::right_orders);
    m.def("moment_matrix", &moment_matrix, py::arg("density"), py::arg("n"));
    py::class_<SpectralData>(m, "SpectralData")
        .def_readonly("lambdas", &SpectralData::lambdas)
        .def_readonly("U", &SpectralData::U)
        .def_readonly("V", &SpectralData::V)
        .def_readonly("M", &SpectralData::M)
        .def_readonly("Q", &SpectralData::Q)
        .def_readonly("top_weight_degenerate", &SpectralData::top_weight_degenerate);
    m.def("eigendecompose", &eigendecompose, py::arg("matrix"), py::arg("moments"));
    m.def("weight_polynomials", &weight_polynomials, py::arg("spectral_data"));
    m.def("long_rate", &long_rate, py::arg("spectral_data"));
    m.def("analyze_spectrum", &analyze_spectrum, py::arg("params"));

    // simulation
    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init([](double dt, double horizon, std::int64_t n_paths,
                         std::uint64_t seed) {
                 return SimConfig{dt, horizon, n_paths, seed};
             }),
             py::arg("dt") = 1e-3, py::arg("horizon") = 1.0, py::arg("n_paths") = 1,
             py::arg("seed") = 0)
        .def_readwrite("dt", &SimConfig::dt)
        .def_readwrite("horizon", &SimConfig::horizon)
        .def_readwrite("n_paths", &SimConfig::n_paths)
        .def_readwrite("seed", &SimConfig::seed);
    py::class_<MCEstimate>(m, "MCEstimate")
        .def_readonly("mean", &MCEstimate::mean)
        .def_readonly("std_error", &MCEstimate::std_error)
        .def_readonly("n_paths", &MCEstimate::n_paths);
    m.def("simulate_path", &simulate_path, py::arg("params"), py::arg("z0"),
          py::arg("config"), py::arg("path_index") = 0);
    m.def("mc_price", &mc_price, py::arg("params"), py::arg("maturity"),
          py::arg("z0"), py::arg("config"),
          py::call_guard<py::gil_scoped_release>());
    m.def("sample_states", &sample_states, py::arg("params"), py::arg("z0"),
          py::arg("config"), py::arg("sample_times"),
          py::call_guard<py::gil_scoped_release>());
    m.def("unbounded_example_price", &unbounded_example_price, py::arg("maturity"),
          py::arg("state"));
    m.def("unbounded_example_path", &unbounded_example_path, py::arg("z0"),
          py::arg("config"), py::arg("path_index") = 0);
    m.def("unbounded_example_mc", &unbounded_example_mc, py::arg("maturity"),
          py::arg("state"), py::arg("config"),
          py::call_guard<py::gil_scoped_release>());

    // calibration
    py::class_<ExampleModelParams>(m, "ExampleModelParams")
        .def(py::init([](double alpha, double beta, double gamma, int n) {
                 return ExampleModelParams{alpha, beta, gamma, n};
             }),
             py::arg("alpha"), py::arg("beta"), py::arg("gamma"), py::arg("n") = 2)
        .def_readwrite("alpha", &ExampleModelParams::alpha)
        .def_readwrite("beta", &ExampleModelParams::beta)
        .def_readwrite("gamma", &ExampleModelParams::gamma)
        .def_readwrite("n", &ExampleModelParams::n)
        .def("feasible", &ExampleModelParams::feasible)
        .def("feasibility_violation", &ExampleModelParams::feasibility_violation)
        .def_property_readonly("state_upper", &ExampleModelParams::state_upper);
    m.def("example_to_general", &example_to_general, py::arg("params"));
    py::class_<YieldDataset>(m, "YieldDataset")
        .def_readonly("dates", &YieldDataset::dates)
        .def_readonly("maturities", &YieldDataset::maturities)
        .def_readonly("yields", &YieldDataset::yields)
        .def_readonly("implied_spots", &YieldDataset::implied_spots)
        .def_readonly("dropped_rows", &YieldDataset::dropped_rows);
    m.def("implied_spot", &implied_spot, py::arg("maturities"), py::arg("yields_row"));
    m.def("make_dataset", &make_dataset, py::arg("maturities"), py::arg("dates"),
          py::arg("yields"));
    m.def("load_fred_csv", &load_fred_csv_file, py::arg("path"));
    m.def("objective", &objective, py::arg("params"), py::arg("data"));
    py::class_<CalibrationResult>(m, "CalibrationResult")
        .def_readonly("params", &CalibrationResult::params)
        .def_readonly("objective", &CalibrationResult::objective)
        .def_readonly("evaluations", &CalibrationResult::evaluations)
        .def_readonly("clamped_spots", &CalibrationResult::clamped_spots)
        .def_readonly("per_maturity_rms", &CalibrationResult::per_maturity_rms);
    m.def("calibrate", &calibrate, py::arg("data"), py::arg("init"),
          py::call_guard<py::gil_scoped_release>());

    // params files (same schemas as the CLI)
    m.def(
        "load_params",
        [](const std::string& path) { return load_params_file(path).general; },
        py::arg("path"),
        "Load a canonical/general/example params JSON file as GeneralParams");

#ifdef VERSION_INFO
    m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
    m.attr("__version__") = "dev";
#endif
}
