#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "polyterm/calib.hpp"
#include "polyterm/errors.hpp"
#include "polyterm/pricing.hpp"
#include "polyterm/rng.hpp"

using namespace polyterm;

namespace {

const std::vector<double> kMaturities = {1.0 / 12, 3.0 / 12, 6.0 / 12, 1, 2, 3,
                                         5,        7,        10,       20, 30};

/// Model-generated dataset: spots spread over the rate interval, optional
/// gaussian yield noise. With matching_spots the dataset carries the exact
/// generating spots instead of re-extrapolating them from the two shortest
/// (possibly noisy) yields, which makes the zero-noise objective vanish
/// identically.
YieldDataset synthetic_dataset(const ExampleModelParams& p, int n_dates,
                               double noise_sd, std::uint64_t seed,
                               bool matching_spots = false) {
    const GeneralParams g = example_to_general(p);
    const CompanionMatrix S = companion_matrix(g);
    PathRng rng(seed, 0);
    std::vector<std::string> dates;
    std::vector<std::vector<double>> rows;
    std::vector<double> spots;
    for (int d = 0; d < n_dates; ++d) {
        const double spot =
            0.005 + (0.030 - 0.005) * d / std::max(1, n_dates - 1);
        spots.push_back(spot);
        std::vector<double> row;
        for (const double x : kMaturities) {
            const Eigen::VectorXd coeffs = bond_coefficients(S, x);
            double h = 0.0;
            for (Eigen::Index k = coeffs.size(); k-- > 0;) h = h * spot + coeffs(k);
            row.push_back(-std::log(h) / x + noise_sd * rng.normal());
        }
        std::ostringstream date;
        date << "2020-01-" << (d % 28 + 1);
        dates.push_back(date.str());
        rows.push_back(std::move(row));
    }
    YieldDataset data = make_dataset(kMaturities, std::move(dates), std::move(rows));
    if (matching_spots) data.implied_spots = spots;
    return data;
}

}  // namespace

TEST_CASE("example model feasibility") {
    CHECK(ExampleModelParams{0.3, 0.02, 0.1, 2}.feasible());
    // n=2 chain 0 <= beta <= gamma <= sqrt(2 alpha beta)
    CHECK_FALSE(ExampleModelParams{0.3, 0.02, 0.13, 2}.feasible());  // gamma^2 > 2ab
    CHECK_FALSE(ExampleModelParams{0.5, 0.12, 0.1, 2}.feasible());   // beta > gamma
    // the 2015-16 FRED reference fit sits marginally outside the chain:
    // sqrt(2 * 0.248 * 0.031) = 0.1240 < gamma = 0.129
    const ExampleModelParams reference_fit{0.248, 0.031, 0.129, 2};
    CHECK_FALSE(reference_fit.feasible());
    CHECK(reference_fit.feasibility_violation() < 1.3e-3);
    CHECK(std::sqrt(2 * 0.248 * 0.031) < 0.129);
    CHECK(0.129 - std::sqrt(2 * 0.248 * 0.031) < 0.006);
}

TEST_CASE("example model expansion") {
    SUBCASE("n=2 coefficients") {
        const GeneralParams g = example_to_general({0.248, 0.031, 0.129, 2});
        CHECK(g.interval.lo == 0.0);
        CHECK(g.interval.hi == doctest::Approx(0.129));
        CHECK(g.a.coeff(0) == 0.0);
        CHECK(g.a.coeff(1) == doctest::Approx(0.129 * 0.129));
        CHECK(g.a.coeff(2) == doctest::Approx(-2.0 * 0.129));
        CHECK(g.a.coeff(3) == doctest::Approx(1.0));
        CHECK(g.a.coeff(4) == 0.0);
        CHECK(g.b.coeff(0) == doctest::Approx(0.248 * 0.031));
        CHECK(g.b.coeff(1) == doctest::Approx(-0.248));
        CHECK(g.R.coeffs() == std::vector<double>{0.0, 1.0});
    }
    SUBCASE("large n approaches square-root dynamics") {
        const double alpha = 0.3, beta = 0.02, gamma = 0.1;
        const GeneralParams g = example_to_general({alpha, beta, gamma, 10000});
        CHECK(g.b.coeff(0) == doctest::Approx(alpha * beta));
        CHECK(g.b.coeff(1) == doctest::Approx(-alpha));
        CHECK(g.a.coeff(1) == doctest::Approx(gamma * gamma));
        CHECK(std::abs(g.a.coeff(2)) < 3.1e-4 * gamma);  // ~ gamma (2/n + 1/(n-1))
        CHECK(std::abs(g.a.coeff(3)) < 1e-7);
        CHECK(g.interval.hi == doctest::Approx(0.5 * gamma * 10000));
    }
    SUBCASE("positivity required") {
        CHECK_THROWS_AS(example_to_general({-0.1, 0.02, 0.1, 2}), Error);
        CHECK_THROWS_AS(example_to_general({0.3, 0.0, 0.1, 2}), Error);
    }
}

TEST_CASE("implied spot") {
    std::vector<double> row(kMaturities.size(), 0.0);
    row[0] = 0.005;
    row[1] = 0.007;
    CHECK(implied_spot(kMaturities, row) == doctest::Approx(0.004).epsilon(1e-15));
    for (auto& y : row) y = 0.0123;
    CHECK(implied_spot(kMaturities, row) == doctest::Approx(0.0123).epsilon(1e-15));
    row[0] = 0.002;
    row[1] = 0.010;
    // linear extrapolation to x = 0: 1.5*0.002 - 0.5*0.010 = -0.002
    CHECK(implied_spot(kMaturities, row) == doctest::Approx(-0.002).epsilon(1e-12));
    CHECK_THROWS_AS(implied_spot({1.0, 2.0}, {0.01, 0.02}), Error);
}

TEST_CASE("fred csv ingestion") {
    std::istringstream csv(
        "DATE,DGS1MO,DGS3MO,DGS6MO,DGS1,DGS2,DGS3,DGS5,DGS7,DGS10,DGS20,DGS30\n"
        "2015-08-19,0.05,0.08,0.23,0.38,0.66,0.95,1.46,1.84,2.13,2.53,2.82\n"
        "2015-08-20,.,0.07,0.22,0.36,0.61,0.89,1.39,1.77,2.07,2.47,2.78\n"
        "2015-08-21,0.02,0.06,0.21,0.36,0.62,0.88,1.35,1.71,2.05,2.44,2.74\n");
    const YieldDataset data = load_fred_csv(csv);
    CHECK(data.dates.size() == 2);
    CHECK(data.dropped_rows == 1);
    CHECK(data.maturities.size() == 11);
    CHECK(data.yields[0][0] == doctest::Approx(0.0005));  // percent to fraction
    CHECK(data.yields[1][10] == doctest::Approx(0.0274));
    CHECK(data.implied_spots[0] ==
          doctest::Approx(1.5 * 0.0005 - 0.5 * 0.0008).epsilon(1e-12));

    std::istringstream bad("DATE,DGS1MO\n2015-08-19,0.05\n");
    CHECK_THROWS_AS(load_fred_csv(bad), Error);
}

TEST_CASE("objective") {
    const ExampleModelParams truth{0.3, 0.02, 0.1, 2};
    SUBCASE("self-consistency at the generating parameters") {
        const YieldDataset data = synthetic_dataset(truth, 8, 0.0, 5, true);
        CHECK(objective(truth, data) < 1e-16);
    }
    SUBCASE("single-observation perturbation adds its square") {
        YieldDataset data = synthetic_dataset(truth, 5, 0.0, 5, true);
        const double delta = 3e-4;
        data.yields[2][4] += delta;
        CHECK(objective(truth, data) == doctest::Approx(delta * delta).epsilon(1e-10));
    }
    SUBCASE("invariant under date permutations") {
        YieldDataset data = synthetic_dataset(truth, 6, 1e-4, 6);
        const double base = objective(truth, data);
        std::swap(data.dates[0], data.dates[3]);
        std::swap(data.yields[0], data.yields[3]);
        std::swap(data.implied_spots[0], data.implied_spots[3]);
        std::swap(data.dates[1], data.dates[5]);
        std::swap(data.yields[1], data.yields[5]);
        std::swap(data.implied_spots[1], data.implied_spots[5]);
        CHECK(objective(truth, data) == doctest::Approx(base).epsilon(1e-14));
    }
    SUBCASE("spots outside the state interval are clamped and counted") {
        YieldDataset data = synthetic_dataset(truth, 3, 0.0, 5);
        data.implied_spots[0] = -0.01;
        const ObjectiveBreakdown d = objective_breakdown(truth, data);
        CHECK(d.clamped_spots == 1);
        CHECK(std::isfinite(d.value));
    }
}

TEST_CASE("calibration") {
    SUBCASE("requires a feasible start") {
        const YieldDataset data = synthetic_dataset({0.3, 0.02, 0.1, 2}, 4, 0.0, 5);
        CHECK_THROWS_AS(calibrate(data, {0.3, 0.02, 0.13, 2}), Error);
        // gamma = 0.12 > sqrt(2 * 0.2 * 0.03) = 0.1095: also infeasible
        CHECK_THROWS_AS(calibrate(data, {0.2, 0.03, 0.12, 2}), Error);
    }
    SUBCASE("noise-free round trip recovers the generator") {
        const ExampleModelParams truth{0.3, 0.02, 0.1, 2};
        const YieldDataset data = synthetic_dataset(truth, 10, 0.0, 5);
        const CalibrationResult fit = calibrate(data, {0.2, 0.03, 0.105, 2});
        CHECK(fit.params.feasible());
        CHECK(fit.params.alpha == doctest::Approx(truth.alpha).epsilon(0.02));
        CHECK(fit.params.beta == doctest::Approx(truth.beta).epsilon(0.02));
        CHECK(fit.params.gamma == doctest::Approx(truth.gamma).epsilon(0.02));
    }
    SUBCASE("flat curves land near the constant rate") {
        // y = R0 for every maturity: a strongly mean-reverting fit should put
        // its long rate near R0.
        const double r0 = 0.0175;
        std::vector<std::string> dates;
        std::vector<std::vector<double>> rows;
        PathRng rng(11, 0);
        for (int d = 0; d < 6; ++d) {
            dates.push_back("2020-02-0" + std::to_string(d + 1));
            std::vector<double> row(kMaturities.size());
            for (auto& y : row) y = r0 + 1e-5 * rng.normal();
            rows.push_back(std::move(row));
        }
        const YieldDataset data = make_dataset(kMaturities, dates, rows);
        const CalibrationResult fit = calibrate(data, {0.5, 0.02, 0.1, 2});
        // a flat target should keep the fitted long end near r0
        const GeneralParams g = example_to_general(fit.params);
        const double y30 = bond_yield(g, 30.0, data.implied_spots[0] > 0
                                                   ? data.implied_spots[0]
                                                   : 0.0175);
        CHECK(y30 == doctest::Approx(r0).epsilon(0.10));
    }
}
