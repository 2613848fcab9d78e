#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "polyterm/model.hpp"

namespace polyterm {

/// Mean-reverting bounded-rate model
///   dr = alpha (beta - r) dt
///        + sqrt(r (gamma - 2r/n)(gamma - r/(n-1))) dW
/// on (0, gamma n / 2); recovers the square-root (CIR) dynamics as n grows.
struct ExampleModelParams {
    double alpha = 0.0;  // mean-reversion speed, 1/years
    double beta = 0.0;   // long-run level, fraction
    double gamma = 0.0;  // volatility scale, fraction
    int n = 2;

    double state_upper() const { return 0.5 * gamma * n; }

    /// Non-explosion conditions: 2 alpha beta >= gamma^2 and
    /// alpha (gamma n - 2 beta) >= gamma^2 (n-2) / (2(n-1)); for n = 2 this is
    /// 0 <= beta <= gamma <= sqrt(2 alpha beta). (The right-endpoint constant
    /// follows from the endpoint derivative test; see README.)
    bool feasible() const;

    /// Sum of positive parts of the constraint violations (0 when feasible),
    /// used as the exterior penalty during calibration.
    double feasibility_violation() const;
};

/// Expand into explicit polynomials: R(r) = r, b(r) = alpha beta - alpha r,
/// a(r) = r (gamma - 2r/n)(gamma - r/(n-1)) on (0, gamma n / 2).
/// Rejects non-positive alpha, beta, gamma.
GeneralParams example_to_general(const ExampleModelParams& p);

/// Dated constant-maturity yield observations (decimal fractions).
struct YieldDataset {
    std::vector<std::string> dates;
    std::vector<double> maturities;            // strictly increasing, years
    std::vector<std::vector<double>> yields;   // [date][maturity]
    std::vector<double> implied_spots;         // per date
    long dropped_rows = 0;                     // rows with missing cells
};

/// Spot rate extrapolated from the two shortest maturities:
/// r = 3/2 Y(1/12) - 1/2 Y(3/12). Requires both maturities present.
double implied_spot(const std::vector<double>& maturities,
                    const std::vector<double>& yields_row);

/// Build a dataset from already-parsed rows; computes implied spots.
YieldDataset make_dataset(std::vector<double> maturities,
                          std::vector<std::string> dates,
                          std::vector<std::vector<double>> yields);

/// Parse a FRED constant-maturity CSV export: header
/// DATE,DGS1MO,DGS3MO,DGS6MO,DGS1,DGS2,DGS3,DGS5,DGS7,DGS10,DGS20,DGS30,
/// values in percent, "." marking missing cells (such rows are dropped and
/// counted).
YieldDataset load_fred_csv(std::istream& input);
YieldDataset load_fred_csv_file(const std::string& path);

struct ObjectiveBreakdown {
    double value = 0.0;
    long clamped_spots = 0;
    std::vector<double> per_maturity_rms;
};

/// Least-squares yield objective: sum over (date, maturity) of squared
/// differences between observed and model yields, the model yield evaluated
/// at each date's implied spot (clamped into the open state interval by
/// 1e-6 when necessary, with a count).
ObjectiveBreakdown objective_breakdown(const ExampleModelParams& p,
                                       const YieldDataset& data);
double objective(const ExampleModelParams& p, const YieldDataset& data);

struct CalibrationResult {
    ExampleModelParams params;
    double objective = 0.0;
    long evaluations = 0;
    long clamped_spots = 0;
    std::vector<double> per_maturity_rms;
};

/// Derivative-free least-squares fit of (alpha, beta, gamma) by Nelder-Mead
/// with an exterior penalty 1e6 * violation^2 outside the feasible set.
/// Stops when the simplex diameter drops below 1e-8 or after 1e4 evaluations;
/// returns the best feasible point visited. Requires a feasible start.
CalibrationResult calibrate(const YieldDataset& data, const ExampleModelParams& init);

}  // namespace polyterm
