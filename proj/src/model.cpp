#include "polyterm/model.hpp"

#include <cmath>

#include "polyterm/errors.hpp"

namespace polyterm {

namespace {

bool rel_eq(double x, double y, double scale) {
    return std::abs(x - y) <= kFeasibilityTol * std::max(1.0, scale);
}

}  // namespace

bool vol_factor_positive(const std::array<double, 3>& c) {
    const double c0 = c[0], c1 = c[1], c2 = c[2];
    if (!(c0 > 0.0)) return false;
    if (c2 <= c0) return c2 >= -c0 && std::abs(c1) <= c0 + c2;
    return std::abs(c1) < 2.0 * std::sqrt(c0 * c2);
}

bool drift_admissible(const std::array<double, 4>& b, const std::array<double, 3>& c) {
    return std::abs(b[0] + b[2] + c[1]) <= -(b[1] + b[3] + c[0] + c[2]);
}

FeasibilityReport check_feasibility(const CanonicalParams& p) {
    if (p.n < 1) throw Error("invalid_argument", "model degree n must be >= 1");

    FeasibilityReport rep;
    rep.c_ok = vol_factor_positive(p.c);
    rep.b_ok = drift_admissible(p.b, p.c);

    const double n = p.n;
    double scale = 0.0;
    for (double v : p.R) scale = std::max(scale, std::abs(v));
    for (double v : p.b) scale = std::max(scale, std::abs(v));
    for (double v : p.c) scale = std::max(scale, std::abs(v));

    bool eqs_ok;
    if (p.n == 1) {
        // Degree-1 classification: R affine, b quadratic, R1 = b2.
        rep.r1_residual = p.R[1] - p.b[2];
        rep.r2_b3_residual = p.b[3];
        rep.r2_c2_residual = p.R[2];
        eqs_ok = rel_eq(p.R[1], p.b[2], scale) && rel_eq(p.b[3], 0.0, scale) &&
                 rel_eq(p.R[2], 0.0, scale);
    } else {
        // a3 = -c1 and a4 = -c2 from expanding (1 - z^2)(c0 + c1 z + c2 z^2).
        const double r1_target = n * p.b[2] - 0.5 * n * (n - 1.0) * p.c[1];
        const double r2_b3 = 0.5 * n * p.b[3];
        const double r2_c2 = 0.5 * n * (n - 1.0) * p.c[2];
        rep.r1_residual = p.R[1] - r1_target;
        rep.r2_b3_residual = p.R[2] - r2_b3;
        rep.r2_c2_residual = p.R[2] - r2_c2;
        eqs_ok = rel_eq(p.R[1], r1_target, scale) && rel_eq(p.R[2], r2_b3, scale) &&
                 rel_eq(p.R[2], r2_c2, scale);
    }
    rep.feasible = rep.c_ok && rep.b_ok && eqs_ok;
    return rep;
}

bool is_feasible(const CanonicalParams& p) {
    return check_feasibility(p).feasible;
}

GeneralParams to_general(const CanonicalParams& p) {
    if (p.n < 1) throw Error("invalid_argument", "model degree n must be >= 1");
    GeneralParams g;
    g.n = p.n;
    g.interval = Interval{-1.0, 1.0};
    g.R = Polynomial{{p.R[0], p.R[1], p.R[2]}};
    g.b = Polynomial{{p.b[0], p.b[1], p.b[2], p.b[3]}};
    const Polynomial one_minus_z2{{1.0, 0.0, -1.0}};
    g.a = one_minus_z2 * Polynomial{{p.c[0], p.c[1], p.c[2]}};
    return g;
}

CanonicalParams to_canonical(const GeneralParams& g) {
    const double lo = g.interval.lo, hi = g.interval.hi;
    const double width = hi - lo;
    const double a_scale = std::max(1.0, g.a.max_abs_coeff());
    if (std::abs(g.a(lo)) > 1e-10 * a_scale || std::abs(g.a(hi)) > 1e-10 * a_scale)
        throw Error("bad_params", "sigma^2 does not vanish at the interval endpoints");

    // Inverse of zhat = (2z - lo - hi)/width is z = (width zhat + lo + hi)/2.
    const double s = 0.5 * width;
    const double t = 0.5 * (lo + hi);
    const Polynomial r_hat = g.R.compose_affine(s, t);
    Polynomial b_hat = g.b.compose_affine(s, t);
    b_hat *= 2.0 / width;
    Polynomial a_hat = g.a.compose_affine(s, t);
    a_hat *= (2.0 / width) * (2.0 / width);

    if (r_hat.degree() > 2 || b_hat.degree() > 3 || a_hat.degree() > 4)
        throw Error("bad_params", "coefficient degrees exceed the classification bounds");

    // a_hat = (1 - z^2)(c0 + c1 z + c2 z^2) expands to
    // (c0, c1, c2 - c0, -c1, -c2); recover c and check consistency.
    CanonicalParams p;
    p.n = g.n;
    p.R = {r_hat.coeff(0), r_hat.coeff(1), r_hat.coeff(2)};
    p.b = {b_hat.coeff(0), b_hat.coeff(1), b_hat.coeff(2), b_hat.coeff(3)};
    const double c0 = a_hat.coeff(0);
    const double c1 = a_hat.coeff(1);
    const double c2 = a_hat.coeff(2) + c0;
    const double hat_scale = std::max(1.0, a_hat.max_abs_coeff());
    if (std::abs(a_hat.coeff(3) + c1) > 1e-10 * hat_scale ||
        std::abs(a_hat.coeff(4) + c2) > 1e-10 * hat_scale)
        throw Error("bad_params",
                    "sigma^2 is not of the form (1 - z^2) * quadratic on the canonical interval");
    p.c = {c0, c1, c2};
    return p;
}

std::string diffusion_defect(const GeneralParams& g) {
    const double scale = std::max(1.0, g.a.max_abs_coeff());
    if (std::abs(g.a(g.interval.lo)) > 1e-10 * scale)
        return "sigma^2 does not vanish at the left endpoint";
    if (std::abs(g.a(g.interval.hi)) > 1e-10 * scale)
        return "sigma^2 does not vanish at the right endpoint";
    constexpr int kGridPoints = 2001;
    for (int i = 1; i < kGridPoints - 1; ++i) {
        const double z =
            g.interval.lo + g.interval.width() * i / static_cast<double>(kGridPoints - 1);
        if (!(g.a(z) > 0.0)) return "sigma^2 is not strictly positive inside the interval";
    }
    return {};
}

bool diffusion_ok(const GeneralParams& g) {
    return diffusion_defect(g).empty();
}

}  // namespace polyterm
