#pragma once

#include <Eigen/Dense>
#include <span>
#include <utility>

#include "polyterm/model.hpp"

namespace polyterm {

/// Generator of the linear ODE system for the bond-price coefficients:
/// gdot = S g with g(0) = (1, 0, ..., 0). Entry (j+k, j) holds
/// j b_{k+1} + j(j-1)/2 a_{k+2} - R_k for k in {-2, ..., 2}.
struct CompanionMatrix {
    int n = 0;
    Eigen::MatrixXd entries;
};

/// Build the companion matrix, verifying that every entry that would fall
/// below row 0 or beyond row n vanishes (these are exactly the coefficient
/// constraints of the degree-n classification). Tolerance 1e-10 relative to
/// the coefficient scale.
CompanionMatrix companion_matrix(const GeneralParams& g);

/// g(x) = e^{Sx} (1, 0, ..., 0)^T for maturity x >= 0.
Eigen::VectorXd bond_coefficients(const CompanionMatrix& S, double maturity);

/// H(x, z) = sum_k g_k(x) z^k. Requires z in the closed state interval and
/// x >= 0.
double bond_price(const GeneralParams& g, double maturity, double state);

/// Below this maturity the yield switches to its analytic limit R(z).
inline constexpr double kMinYieldMaturity = 1e-8;

/// -log(H)/x, with the x -> 0 limit R(z) below kMinYieldMaturity.
/// Signals non-positive H instead of clamping.
double bond_yield(const GeneralParams& g, double maturity, double state);

/// Max over the grid of |dH/dx - b dH/dz - a/2 d2H/dz2 + R H|, all derivatives
/// taken exactly (dH/dx through S g, z-derivatives through the polynomial
/// form), so the result measures only the companion-matrix / exponential
/// algebra.
double pde_residual(const GeneralParams& g,
                    std::span<const std::pair<double, double>> grid);

}  // namespace polyterm
