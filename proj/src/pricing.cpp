#include "polyterm/pricing.hpp"

#include <cmath>
#include <sstream>

#include "polyterm/errors.hpp"
#include "polyterm/linalg.hpp"

namespace polyterm {

namespace {

// Entry that the ODE system assigns to (row j+k, column j).
double system_entry(const GeneralParams& g, int j, int k) {
    const double jd = j;
    return jd * g.b.coeff(static_cast<std::size_t>(k + 1)) +
           0.5 * jd * (jd - 1.0) * g.a.coeff(static_cast<std::size_t>(k + 2)) -
           (k >= 0 ? g.R.coeff(static_cast<std::size_t>(k)) : 0.0);
}

}  // namespace

CompanionMatrix companion_matrix(const GeneralParams& g) {
    if (g.n < 1) throw Error("invalid_argument", "model degree n must be >= 1");
    if (g.R.degree() > 2 || g.b.degree() > 3 || g.a.degree() > 4)
        throw Error("bad_params", "coefficient degrees exceed the classification bounds");

    const int n = g.n;
    const double scale = std::max(
        {1.0, g.R.max_abs_coeff(), g.b.max_abs_coeff(), g.a.max_abs_coeff()});

    CompanionMatrix S;
    S.n = n;
    S.entries = Eigen::MatrixXd::Zero(n + 1, n + 1);
    for (int j = 0; j <= n; ++j) {
        for (int k = -2; k <= 2; ++k) {
            const int row = j + k;
            const double value = system_entry(g, j, k);
            if (row < 0) continue;  // identically zero by construction
            if (row > n) {
                if (std::abs(value) > 1e-10 * scale) {
                    std::ostringstream msg;
                    msg << "coefficient constraints violated: the z^" << row
                        << " term of the degree-" << j
                        << " image does not vanish (value " << value << ")";
                    throw Error("constraint_violation", msg.str());
                }
                continue;
            }
            S.entries(row, j) += value;
        }
    }
    return S;
}

Eigen::VectorXd bond_coefficients(const CompanionMatrix& S, double maturity) {
    if (!(maturity >= 0.0))
        throw Error("invalid_argument", "maturity must be non-negative");
    Eigen::VectorXd g0 = Eigen::VectorXd::Zero(S.n + 1);
    g0(0) = 1.0;
    if (maturity == 0.0) return g0;
    return expm(S.entries * maturity) * g0;
}

double bond_price(const GeneralParams& g, double maturity, double state) {
    if (!g.interval.contains_closed(state))
        throw Error("invalid_argument", "state lies outside the closed state interval");
    const Eigen::VectorXd coeffs = bond_coefficients(companion_matrix(g), maturity);
    double acc = 0.0;
    for (Eigen::Index k = coeffs.size(); k-- > 0;) acc = acc * state + coeffs(k);
    return acc;
}

double bond_yield(const GeneralParams& g, double maturity, double state) {
    if (maturity <= kMinYieldMaturity) return g.R(state);
    const double price = bond_price(g, maturity, state);
    if (!(price > 0.0))
        throw Error("nonpositive_price",
                    "bond price is non-positive; yield undefined (infeasible parameters?)");
    return -std::log(price) / maturity;
}

double pde_residual(const GeneralParams& g,
                    std::span<const std::pair<double, double>> grid) {
    const CompanionMatrix S = companion_matrix(g);
    double worst = 0.0;
    for (const auto& [x, z] : grid) {
        const Eigen::VectorXd coeffs = bond_coefficients(S, x);
        const Eigen::VectorXd dcoeffs = S.entries * coeffs;

        double h = 0.0, dh_dx = 0.0;
        for (Eigen::Index k = coeffs.size(); k-- > 0;) {
            h = h * z + coeffs(k);
            dh_dx = dh_dx * z + dcoeffs(k);
        }
        double dh_dz = 0.0, d2h_dz2 = 0.0;
        for (Eigen::Index k = coeffs.size(); k-- > 1;) {
            dh_dz = dh_dz * z + static_cast<double>(k) * coeffs(k);
            if (k >= 2)
                d2h_dz2 = d2h_dz2 * z + static_cast<double>(k) * static_cast<double>(k - 1) * coeffs(k);
        }

        const double residual =
            dh_dx - g.b(z) * dh_dz - 0.5 * g.a(z) * d2h_dz2 + g.R(z) * h;
        worst = std::max(worst, std::abs(residual));
    }
    return worst;
}

}  // namespace polyterm
