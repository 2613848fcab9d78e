#pragma once

#include <array>
#include <string>

#include "polyterm/poly.hpp"

namespace polyterm {

/// Model on the canonical state space (-1, 1):
///   spot rate      R(z) = R[0] + R[1] z + R[2] z^2        [1/time]
///   drift          b(z) = b[0] + ... + b[3] z^3           [1/time]
///   squared vol    a(z) = (1 - z^2)(c[0] + c[1] z + c[2] z^2)
struct CanonicalParams {
    int n = 2;
    std::array<double, 3> R{};
    std::array<double, 4> b{};
    std::array<double, 3> c{};
};

/// Model on an arbitrary bounded interval with explicit polynomial
/// coefficients; a = sigma^2 must vanish at the endpoints and be positive
/// inside for the probabilistic modules (checked by diffusion_ok, not by
/// construction, so purely algebraic uses stay permissive).
struct GeneralParams {
    int n = 2;
    Interval interval{-1.0, 1.0};
    Polynomial R;  // degree <= 2
    Polynomial b;  // degree <= 3
    Polynomial a;  // degree <= 4
};

/// Relative tolerance used for the feasibility equality constraints.
inline constexpr double kFeasibilityTol = 1e-10;

/// True iff c0 + c1 z + c2 z^2 > 0 on all of (-1, 1), via the explicit union
///   {c0 > 0, -c0 <= c2 <= c0, |c1| <= c0 + c2}
///   union {c0 > 0, c2 > c0, |c1| < 2 sqrt(c0 c2)}.
bool vol_factor_positive(const std::array<double, 3>& c);

/// True iff the drift satisfies the endpoint inequalities
/// 2b(-1) - a'(-1) >= 0 >= 2b(1) - a'(1) with a = (1-z^2) c(z); explicitly
/// |b0 + b2 + c1| <= -(b1 + b3 + c0 + c2).
bool drift_admissible(const std::array<double, 4>& b, const std::array<double, 3>& c);

struct FeasibilityReport {
    bool c_ok = false;
    bool b_ok = false;
    // Equality-constraint residuals (should vanish):
    double r1_residual = 0.0;     // R1 - (n b2 - n(n-1)/2 c1)
    double r2_b3_residual = 0.0;  // R2 - (n/2) b3
    double r2_c2_residual = 0.0;  // R2 - n(n-1)/2 c2
    bool feasible = false;
};

/// Membership of the full parameter vector in the feasible set: coefficient
/// constraints from the degree-n classification plus the two set conditions
/// above. For n == 1 the classification requires R quadratic-term and drift
/// cubic-term to vanish and R1 == b2; the set conditions are still imposed so
/// that the diffusion is well-defined (see README). Rejects n < 1.
FeasibilityReport check_feasibility(const CanonicalParams& p);
bool is_feasible(const CanonicalParams& p);

/// Expand the canonical parameters into explicit polynomials on (-1, 1).
GeneralParams to_general(const CanonicalParams& p);

/// Map a general-interval model back to the canonical state space via the
/// affine change of variables zhat = (2z - lo - hi)/(hi - lo), with the
/// chain-rule scalings on b and a. Requires a to vanish at both endpoints
/// (relative tolerance 1e-10) and the quartic/cubic coefficients of the
/// mapped a to be consistent with the (1 - z^2) * quadratic factorization.
CanonicalParams to_canonical(const GeneralParams& g);

/// Endpoint-vanishing and interior-positivity check for a = sigma^2.
/// Returns an empty string when fine, otherwise a description of the defect.
std::string diffusion_defect(const GeneralParams& g);
bool diffusion_ok(const GeneralParams& g);

}  // namespace polyterm
