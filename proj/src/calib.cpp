#include "polyterm/calib.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "polyterm/errors.hpp"
#include "polyterm/pricing.hpp"

namespace polyterm {

namespace {

constexpr double kSpotClamp = 1e-6;
constexpr double kPenaltyWeight = 1e6;
constexpr long kMaxEvaluations = 10000;
constexpr double kSimplexDiameterTol = 1e-8;

const std::array<std::pair<const char*, double>, 11> kFredColumns = {{
    {"DGS1MO", 1.0 / 12.0},
    {"DGS3MO", 3.0 / 12.0},
    {"DGS6MO", 6.0 / 12.0},
    {"DGS1", 1.0},
    {"DGS2", 2.0},
    {"DGS3", 3.0},
    {"DGS5", 5.0},
    {"DGS7", 7.0},
    {"DGS10", 10.0},
    {"DGS20", 20.0},
    {"DGS30", 30.0},
}};

}  // namespace

bool ExampleModelParams::feasible() const {
    return feasibility_violation() == 0.0;
}

double ExampleModelParams::feasibility_violation() const {
    double v = 0.0;
    v += std::max(0.0, -alpha);
    v += std::max(0.0, -beta);
    v += std::max(0.0, -gamma);
    v += std::max(0.0, gamma * gamma - 2.0 * alpha * beta);
    const double rhs = gamma * gamma * (n - 2.0) / (2.0 * (n - 1.0));
    v += std::max(0.0, rhs - alpha * (gamma * n - 2.0 * beta));
    return v;
}

GeneralParams example_to_general(const ExampleModelParams& p) {
    if (!(p.alpha > 0.0) || !(p.beta > 0.0) || !(p.gamma > 0.0))
        throw Error("invalid_argument", "alpha, beta, gamma must be positive");
    if (p.n < 2) throw Error("invalid_argument", "example model needs n >= 2");

    GeneralParams g;
    g.n = p.n;
    g.interval = Interval{0.0, p.state_upper()};
    g.R = Polynomial::variable();
    g.b = Polynomial{{p.alpha * p.beta, -p.alpha}};
    // r (gamma - 2r/n)(gamma - r/(n-1)) expanded in r.
    const double n_ = p.n;
    const double q2 = 2.0 / (n_ * (n_ - 1.0));
    const double q1 = -p.gamma * (1.0 / (n_ - 1.0) + 2.0 / n_);
    g.a = Polynomial{{0.0, p.gamma * p.gamma, q1, q2}};
    return g;
}

double implied_spot(const std::vector<double>& maturities,
                    const std::vector<double>& yields_row) {
    const auto find = [&maturities](double target) {
        for (std::size_t i = 0; i < maturities.size(); ++i)
            if (std::abs(maturities[i] - target) < 1e-9) return static_cast<long>(i);
        return -1L;
    };
    const long i1 = find(1.0 / 12.0);
    const long i3 = find(3.0 / 12.0);
    if (i1 < 0 || i3 < 0)
        throw Error("missing_maturity",
                    "implied spot needs the 1-month and 3-month maturities");
    return 1.5 * yields_row[static_cast<std::size_t>(i1)] -
           0.5 * yields_row[static_cast<std::size_t>(i3)];
}

YieldDataset make_dataset(std::vector<double> maturities, std::vector<std::string> dates,
                          std::vector<std::vector<double>> yields) {
    for (std::size_t i = 1; i < maturities.size(); ++i)
        if (!(maturities[i - 1] < maturities[i]))
            throw Error("invalid_argument", "maturities must be strictly increasing");
    if (dates.size() != yields.size())
        throw Error("invalid_argument", "one yield row per date required");
    for (const auto& row : yields) {
        if (row.size() != maturities.size())
            throw Error("invalid_argument", "yield row length mismatch");
        for (const double y : row)
            if (!std::isfinite(y)) throw Error("invalid_argument", "non-finite yield");
    }
    YieldDataset out;
    out.maturities = std::move(maturities);
    out.dates = std::move(dates);
    out.yields = std::move(yields);
    out.implied_spots.reserve(out.yields.size());
    for (const auto& row : out.yields)
        out.implied_spots.push_back(implied_spot(out.maturities, row));
    return out;
}

YieldDataset load_fred_csv(std::istream& input) {
    std::string line;
    if (!std::getline(input, line))
        throw Error("invalid_argument", "empty yield data file");
    // Strip BOM / CR.
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    if (!line.empty() && line.back() == '\r') line.pop_back();

    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) header.push_back(cell);
    }
    if (header.empty() || header[0] != "DATE")
        throw Error("invalid_argument", "expected FRED header starting with DATE");

    // Map CSV columns to maturities; all 11 constant-maturity columns must be
    // present (order taken from the file).
    std::vector<double> maturities;
    for (std::size_t j = 1; j < header.size(); ++j) {
        bool known = false;
        for (const auto& [name, years] : kFredColumns) {
            if (header[j] == name) {
                maturities.push_back(years);
                known = true;
                break;
            }
        }
        if (!known)
            throw Error("invalid_argument", "unknown column in yield data: " + header[j]);
    }
    if (maturities.size() != kFredColumns.size())
        throw Error("invalid_argument", "yield data must contain all 11 maturity columns");

    std::vector<std::string> dates;
    std::vector<std::vector<double>> yields;
    long dropped = 0;
    while (std::getline(input, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != header.size())
            throw Error("invalid_argument", "malformed row in yield data: " + line);
        bool missing = false;
        std::vector<double> row;
        row.reserve(maturities.size());
        for (std::size_t j = 1; j < cells.size(); ++j) {
            if (cells[j] == "." || cells[j].empty()) {
                missing = true;
                break;
            }
            row.push_back(std::stod(cells[j]) / 100.0);  // percent -> fraction
        }
        if (missing) {
            ++dropped;
            continue;
        }
        dates.push_back(cells[0]);
        yields.push_back(std::move(row));
    }
    YieldDataset out = make_dataset(std::move(maturities), std::move(dates), std::move(yields));
    out.dropped_rows = dropped;
    return out;
}

YieldDataset load_fred_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("invalid_argument", "cannot open yield data file: " + path);
    return load_fred_csv(in);
}

ObjectiveBreakdown objective_breakdown(const ExampleModelParams& p,
                                       const YieldDataset& data) {
    const GeneralParams g = example_to_general(p);
    const CompanionMatrix S = companion_matrix(g);

    // Bond coefficients depend on maturity only; evaluate them once.
    std::vector<Eigen::VectorXd> coeffs;
    coeffs.reserve(data.maturities.size());
    for (const double x : data.maturities) coeffs.push_back(bond_coefficients(S, x));

    const double r_lo = kSpotClamp;
    const double r_hi = p.state_upper() - kSpotClamp;
    if (!(r_lo < r_hi))
        throw Error("bad_params", "state interval too narrow for spot clamping");

    ObjectiveBreakdown out;
    out.per_maturity_rms.assign(data.maturities.size(), 0.0);
    for (std::size_t d = 0; d < data.dates.size(); ++d) {
        double spot = data.implied_spots[d];
        if (spot < r_lo || spot > r_hi) {
            spot = std::clamp(spot, r_lo, r_hi);
            ++out.clamped_spots;
        }
        for (std::size_t i = 0; i < data.maturities.size(); ++i) {
            const Eigen::VectorXd& gk = coeffs[i];
            double h = 0.0;
            for (Eigen::Index k = gk.size(); k-- > 0;) h = h * spot + gk(k);
            if (!(h > 0.0))
                throw Error("nonpositive_price",
                            "bond price non-positive during objective evaluation");
            const double model_yield = data.maturities[i] <= kMinYieldMaturity
                                           ? g.R(spot)
                                           : -std::log(h) / data.maturities[i];
            const double diff = data.yields[d][i] - model_yield;
            out.value += diff * diff;
            out.per_maturity_rms[i] += diff * diff;
        }
    }
    const double n_dates = std::max<std::size_t>(data.dates.size(), 1);
    for (double& rms : out.per_maturity_rms) rms = std::sqrt(rms / n_dates);
    return out;
}

double objective(const ExampleModelParams& p, const YieldDataset& data) {
    return objective_breakdown(p, data).value;
}

namespace {

/// Penalized objective used inside the simplex loop; infeasible or failing
/// evaluations are driven away smoothly.
double penalized_objective(const ExampleModelParams& p, const YieldDataset& data) {
    const double violation = p.feasibility_violation();
    double base;
    try {
        base = objective(p, data);
    } catch (const Error&) {
        base = 1e12;
    }
    return base + kPenaltyWeight * violation * violation;
}

}  // namespace

CalibrationResult calibrate(const YieldDataset& data, const ExampleModelParams& init) {
    if (!init.feasible())
        throw Error("infeasible", "calibration requires a feasible starting point");
    if (data.dates.empty())
        throw Error("invalid_argument", "calibration requires at least one date");

    using Point = std::array<double, 3>;
    const auto to_params = [&init](const Point& x) {
        return ExampleModelParams{x[0], x[1], x[2], init.n};
    };

    long evaluations = 0;
    ExampleModelParams best = init;
    double best_value = std::numeric_limits<double>::infinity();
    const auto evaluate = [&](const Point& x) {
        const ExampleModelParams p = to_params(x);
        const double f = penalized_objective(p, data);
        ++evaluations;
        if (p.feasible() && f < best_value) {
            best_value = f;
            best = p;
        }
        return f;
    };

    // Initial simplex: vertex at the start plus 10% bumps per coordinate.
    std::array<Point, 4> simplex;
    simplex[0] = {init.alpha, init.beta, init.gamma};
    for (int i = 0; i < 3; ++i) {
        simplex[i + 1] = simplex[0];
        const double step = 0.1 * std::abs(simplex[0][i]);
        simplex[i + 1][i] += step > 0.0 ? step : 0.01;
    }
    std::array<double, 4> values;
    for (int i = 0; i < 4; ++i) values[i] = evaluate(simplex[i]);

    const auto diameter = [&simplex]() {
        double d = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                for (int k = 0; k < 3; ++k)
                    d = std::max(d, std::abs(simplex[i][k] - simplex[j][k]));
        return d;
    };

    while (evaluations < kMaxEvaluations && diameter() >= kSimplexDiameterTol) {
        std::array<int, 4> order{0, 1, 2, 3};
        std::sort(order.begin(), order.end(),
                  [&values](int i, int j) { return values[i] < values[j]; });
        const int lo = order[0], hi = order[3], second_hi = order[2];

        Point centroid{0, 0, 0};
        for (int i = 0; i < 4; ++i) {
            if (i == hi) continue;
            for (int k = 0; k < 3; ++k) centroid[k] += simplex[i][k] / 3.0;
        }
        const auto affine = [&](double t) {
            Point x;
            for (int k = 0; k < 3; ++k)
                x[k] = centroid[k] + t * (simplex[hi][k] - centroid[k]);
            return x;
        };

        const Point reflected = affine(-1.0);
        const double f_reflected = evaluate(reflected);
        if (f_reflected < values[lo]) {
            const Point expanded = affine(-2.0);
            const double f_expanded = evaluate(expanded);
            if (f_expanded < f_reflected) {
                simplex[hi] = expanded;
                values[hi] = f_expanded;
            } else {
                simplex[hi] = reflected;
                values[hi] = f_reflected;
            }
        } else if (f_reflected < values[second_hi]) {
            simplex[hi] = reflected;
            values[hi] = f_reflected;
        } else {
            const Point contracted = affine(f_reflected < values[hi] ? -0.5 : 0.5);
            const double f_contracted = evaluate(contracted);
            if (f_contracted < std::min(values[hi], f_reflected)) {
                simplex[hi] = contracted;
                values[hi] = f_contracted;
            } else {
                // Shrink toward the best vertex.
                for (int i = 0; i < 4; ++i) {
                    if (i == lo) continue;
                    for (int k = 0; k < 3; ++k)
                        simplex[i][k] = simplex[lo][k] + 0.5 * (simplex[i][k] - simplex[lo][k]);
                    values[i] = evaluate(simplex[i]);
                }
            }
        }
    }

    if (!std::isfinite(best_value))
        throw Error("infeasible", "no feasible point was found during calibration");

    const ObjectiveBreakdown detail = objective_breakdown(best, data);
    CalibrationResult result;
    result.params = best;
    result.objective = detail.value;
    result.evaluations = evaluations;
    result.clamped_spots = detail.clamped_spots;
    result.per_maturity_rms = detail.per_maturity_rms;
    return result;
}

}  // namespace polyterm
