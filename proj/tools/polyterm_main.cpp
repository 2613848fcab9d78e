// polyterm: feasibility checks, bond pricing, spectral analysis, simulation
// and calibration for bounded-factor polynomial short-rate models.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "polyterm/calib.hpp"
#include "polyterm/errors.hpp"
#include "polyterm/feller.hpp"
#include "polyterm/io.hpp"
#include "polyterm/model.hpp"
#include "polyterm/pricing.hpp"
#include "polyterm/sim.hpp"
#include "polyterm/spectral.hpp"

namespace {

using nlohmann::json;
using namespace polyterm;

constexpr int kExitOk = 0;
constexpr int kExitDomainError = 1;
constexpr int kExitUsage = 2;

std::vector<double> parse_number_list(const std::string& csv, const char* what) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        try {
            out.push_back(std::stod(cell));
        } catch (const std::exception&) {
            throw Error("invalid_argument",
                        std::string("cannot parse ") + what + " entry: " + cell);
        }
    }
    if (out.empty()) throw Error("invalid_argument", std::string(what) + " list is empty");
    return out;
}

json boundary_to_json(const BoundaryOrders& o) {
    return json{{"alpha", o.alpha},
                {"A", o.A},
                {"beta", o.beta},
                {"B", o.B},
                {"vanishing_b", o.vanishing_b}};
}

void run_feasibility(const std::string& params_path) {
    const LoadedParams loaded = load_params_file(params_path);
    const CanonicalParams canonical =
        loaded.canonical ? *loaded.canonical : to_canonical(loaded.general);
    const FeasibilityReport rep = check_feasibility(canonical);
    const json out{{"feasible", rep.feasible},
                   {"checks",
                    json{{"in_C", rep.c_ok},
                         {"in_B", rep.b_ok},
                         {"R1_residual", rep.r1_residual},
                         {"R2_b3_residual", rep.r2_b3_residual},
                         {"R2_c2_residual", rep.r2_c2_residual},
                         {"n", canonical.n}}}};
    std::cout << out.dump() << "\n";
}

void run_feller(const std::string& params_path) {
    const GeneralParams g = load_params_file(params_path).general;
    const Verdict verdict = classify_simple(g);
    const BoundaryOrders left = boundary_orders(g.a, g.b, g.interval.lo, Side::Left);
    const BoundaryOrders right = boundary_orders(g.a, g.b, g.interval.hi, Side::Right);
    const EndpointTest test = endpoint_test_values(g);
    const json out{{"verdict", to_string(verdict)},
                   {"left", boundary_to_json(left)},
                   {"right", boundary_to_json(right)},
                   {"simple_test",
                    json{{"left_value", test.left_value},
                         {"right_value", test.right_value}}}};
    std::cout << out.dump() << "\n";
}

void run_price(const std::string& params_path, double maturity, double state) {
    const GeneralParams g = load_params_file(params_path).general;
    const json out{{"price", bond_price(g, maturity, state)}};
    std::cout << out.dump() << "\n";
}

void run_curve(const std::string& params_path, const std::string& maturities_csv,
               double state) {
    const GeneralParams g = load_params_file(params_path).general;
    if (!g.interval.contains_closed(state))
        throw Error("invalid_argument", "state lies outside the closed state interval");
    const std::vector<double> maturities = parse_number_list(maturities_csv, "maturity");
    const CompanionMatrix S = companion_matrix(g);
    std::cout << "maturity,price,yield\r\n";
    for (const double x : maturities) {
        const Eigen::VectorXd coeffs = bond_coefficients(S, x);
        double price = 0.0;
        for (Eigen::Index k = coeffs.size(); k-- > 0;) price = price * state + coeffs(k);
        double yield_value;
        if (x <= kMinYieldMaturity) {
            yield_value = g.R(state);
        } else {
            if (!(price > 0.0))
                throw Error("nonpositive_price", "bond price non-positive; yield undefined");
            yield_value = -std::log(price) / x;
        }
        std::printf("%.12g,%.12g,%.12g\r\n", x, price, yield_value);
    }
}

void run_spectrum(const std::string& params_path) {
    const GeneralParams g = load_params_file(params_path).general;
    const SpectralData sd = analyze_spectrum(g);
    json lambdas = json::array();
    for (Eigen::Index i = 0; i < sd.lambdas.size(); ++i) lambdas.push_back(sd.lambdas(i));
    json q = json::array();
    for (const Polynomial& qi : sd.Q) q.push_back(qi.coeffs());
    json out{{"lambdas", lambdas}, {"long_rate", long_rate(sd)}, {"Q", q}};
    if (sd.top_weight_degenerate)
        out["warning"] = "weight of the top eigenvalue is numerically zero; "
                         "long_rate may not be the asymptotic yield";
    std::cout << out.dump() << "\n";
}

void run_density(const std::string& params_path, int points) {
    if (points < 2) throw Error("invalid_argument", "--points must be at least 2");
    const GeneralParams g = load_params_file(params_path).general;
    const InvariantDensity f(g);
    std::cout << "z,f\r\n";
    for (int i = 1; i <= points; ++i) {
        const double z =
            g.interval.lo + g.interval.width() * i / static_cast<double>(points + 1);
        std::printf("%.12g,%.12g\r\n", z, f(z));
    }
}

void run_simulate(const std::string& params_path, double z0, const SimConfig& cfg,
                  bool has_price, double price_maturity) {
    const GeneralParams g = load_params_file(params_path).general;
    if (has_price) {
        const MCEstimate est = mc_price(g, price_maturity, z0, cfg);
        const json out{
            {"mean", est.mean}, {"stderr", est.std_error}, {"n_paths", est.n_paths}};
        std::cout << out.dump() << "\n";
        return;
    }
    std::cout << "path,t,z\r\n";
    for (std::int64_t p = 0; p < cfg.n_paths; ++p) {
        const auto path = simulate_path(g, z0, cfg, static_cast<std::uint64_t>(p));
        for (const auto& [t, z] : path)
            std::printf("%lld,%.12g,%.12g\r\n", static_cast<long long>(p), t, z);
    }
}

void run_calibrate(const std::string& data_path, const std::string& init_csv, int n) {
    const YieldDataset data = load_fred_csv_file(data_path);
    const std::vector<double> init_values = parse_number_list(init_csv, "init");
    if (init_values.size() != 3)
        throw Error("invalid_argument", "--init expects alpha,beta,gamma");
    const ExampleModelParams init{init_values[0], init_values[1], init_values[2], n};
    const CalibrationResult result = calibrate(data, init);

    json rms = json::object();
    for (std::size_t i = 0; i < data.maturities.size(); ++i) {
        std::ostringstream key;
        key << data.maturities[i];
        rms[key.str()] = result.per_maturity_rms[i];
    }
    const json out{{"alpha", result.params.alpha},
                   {"beta", result.params.beta},
                   {"gamma", result.params.gamma},
                   {"n", result.params.n},
                   {"objective", result.objective},
                   {"evaluations", result.evaluations},
                   {"clamped_spots", result.clamped_spots},
                   {"dropped_rows", data.dropped_rows},
                   {"per_maturity_rms", rms}};
    std::cout << out.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Polynomial term-structure models: feasibility, pricing, spectra, "
                 "simulation, calibration"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string params_path;
    std::string output_format = "json";
    std::uint64_t seed = 0;
    app.add_option("--params", params_path, "Model parameter JSON file")->expected(1);
    app.add_option("--output", output_format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--seed", seed, "RNG seed");

    auto* feasibility = app.add_subcommand("feasibility", "Check parameter feasibility");

    auto* feller = app.add_subcommand("feller", "Classify the factor SDE (non-explosion)");

    double maturity = 0.0, state = 0.0;
    auto* price = app.add_subcommand("price", "Zero-coupon bond price");
    price->add_option("--maturity", maturity, "Maturity in years")->required();
    price->add_option("--state", state, "Factor state z")->required();

    std::string maturities_csv;
    double curve_state = 0.0;
    auto* curve = app.add_subcommand("curve", "Price/yield curve as CSV");
    curve->add_option("--maturities", maturities_csv, "Comma-separated maturities")
        ->required();
    curve->add_option("--state", curve_state, "Factor state z")->required();

    auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues and weight polynomials");

    int density_points = 200;
    auto* density = app.add_subcommand("density", "Invariant density as CSV");
    density->add_option("--points", density_points, "Number of interior sample points");

    double z0 = 0.0;
    SimConfig cfg;
    double price_maturity = 0.0;
    auto* simulate = app.add_subcommand("simulate", "Euler paths or Monte Carlo pricing");
    simulate->add_option("--z0", z0, "Initial state")->required();
    simulate->add_option("--dt", cfg.dt, "Time step");
    simulate->add_option("--horizon", cfg.horizon, "Simulation horizon");
    simulate->add_option("--paths", cfg.n_paths, "Number of paths");
    auto* price_opt = simulate->add_option(
        "--price", price_maturity, "Monte Carlo bond price at this maturity");

    std::string data_path, init_csv;
    int calib_n = 2;
    auto* calibrate_cmd = app.add_subcommand("calibrate", "Fit alpha,beta,gamma to yields");
    calibrate_cmd->add_option("--data", data_path, "FRED-format CSV file")->required();
    calibrate_cmd->add_option("--init", init_csv, "Initial alpha,beta,gamma")->required();
    calibrate_cmd->add_option("--n", calib_n, "Polynomial degree (>= 2)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    const auto need_params = [&params_path]() {
        if (params_path.empty())
            throw Error("invalid_argument", "--params <file> is required for this command");
    };
    // Output formats are fixed per subcommand (JSON everywhere except the
    // tabular curve/density/path outputs); an explicit --output that
    // contradicts the subcommand is a usage error.
    const auto check_output = [&](const CLI::App& sub, const std::string& natural) {
        if (app.count("--output") > 0 && output_format != natural) {
            std::fprintf(stderr, "%s emits %s output\n", sub.get_name().c_str(),
                         natural.c_str());
            std::exit(kExitUsage);
        }
    };

    try {
        if (feasibility->parsed()) {
            need_params();
            check_output(*feasibility, "json");
            run_feasibility(params_path);
        } else if (feller->parsed()) {
            need_params();
            check_output(*feller, "json");
            run_feller(params_path);
        } else if (price->parsed()) {
            need_params();
            check_output(*price, "json");
            run_price(params_path, maturity, state);
        } else if (curve->parsed()) {
            need_params();
            check_output(*curve, "csv");
            run_curve(params_path, maturities_csv, curve_state);
        } else if (spectrum->parsed()) {
            need_params();
            check_output(*spectrum, "json");
            run_spectrum(params_path);
        } else if (density->parsed()) {
            need_params();
            check_output(*density, "csv");
            run_density(params_path, density_points);
        } else if (simulate->parsed()) {
            need_params();
            check_output(*simulate, price_opt->count() > 0 ? "json" : "csv");
            cfg.seed = seed;
            run_simulate(params_path, z0, cfg, price_opt->count() > 0, price_maturity);
        } else if (calibrate_cmd->parsed()) {
            check_output(*calibrate_cmd, "json");
            run_calibrate(data_path, init_csv, calib_n);
        }
    } catch (const Error& e) {
        const json err{{"error", json{{"code", e.code()}, {"message", e.what()}}}};
        std::cerr << err.dump() << "\n";
        return kExitDomainError;
    } catch (const std::exception& e) {
        const json err{{"error", json{{"code", "internal"}, {"message", e.what()}}}};
        std::cerr << err.dump() << "\n";
        return kExitDomainError;
    }
    return kExitOk;
}
