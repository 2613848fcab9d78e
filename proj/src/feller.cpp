#include "polyterm/feller.hpp"

#include <algorithm>
#include <cmath>

#include "polyterm/errors.hpp"

namespace polyterm {

namespace {

double coefficient_scale(const GeneralParams& g) {
    return std::max({g.a.max_abs_coeff(), g.b.max_abs_coeff(), 1e-300});
}

void require_valid_diffusion(const GeneralParams& g) {
    const std::string defect = diffusion_defect(g);
    if (!defect.empty()) throw Error("bad_params", defect);
}

}  // namespace

EndpointTest endpoint_test_values(const GeneralParams& g) {
    const Polynomial da = g.a.derivative();
    return {2.0 * g.b(g.interval.lo) - da(g.interval.lo),
            2.0 * g.b(g.interval.hi) - da(g.interval.hi)};
}

Verdict classify_simple(const GeneralParams& g) {
    require_valid_diffusion(g);
    const EndpointTest t = endpoint_test_values(g);
    const double tie = kBoundaryTieTol * coefficient_scale(g);
    const bool ok = t.left_value >= -tie && t.right_value <= tie;
    return ok ? Verdict::NonExplosive : Verdict::Explosive;
}

BoundaryOrders boundary_orders(const Polynomial& a, const Polynomial& b,
                               double endpoint, Side side) {
    // Shift to the inward variable t: left side t = z - endpoint, right side
    // t = endpoint - z; the drift flips sign on the right so that beta > 0
    // points into the interval.
    const double direction = side == Side::Left ? 1.0 : -1.0;
    const Polynomial a_in = a.compose_affine(direction, endpoint);
    Polynomial b_in = b.compose_affine(direction, endpoint);
    if (side == Side::Right) b_in *= -1.0;

    const double a_zero_tol = 1e-9 * std::max(1.0, a_in.max_abs_coeff());
    const double b_zero_tol = 1e-9 * std::max(1.0, b_in.max_abs_coeff());

    BoundaryOrders orders;

    int first_a = -1;
    for (int k = 0; k <= a_in.degree(); ++k) {
        if (std::abs(a_in.coeff(k)) > a_zero_tol) {
            first_a = k;
            break;
        }
    }
    if (first_a < 0)
        throw Error("bad_params", "sigma^2 vanishes identically near the endpoint");
    if (first_a == 0)
        throw Error("bad_params", "sigma^2 does not vanish at the endpoint");
    orders.A = first_a - 1;
    orders.alpha = a_in.coeff(first_a);
    if (orders.alpha <= 0.0)
        throw Error("bad_params",
                    "sigma^2 has non-positive leading coefficient at the endpoint");

    int first_b = -1;
    for (int k = 0; k <= b_in.degree(); ++k) {
        if (std::abs(b_in.coeff(k)) > b_zero_tol) {
            first_b = k;
            break;
        }
    }
    if (first_b < 0) {
        orders.vanishing_b = true;
    } else {
        orders.B = first_b;
        orders.beta = b_in.coeff(first_b);
    }
    return orders;
}

namespace {

bool endpoint_nonexplosive(const BoundaryOrders& o) {
    if (o.vanishing_b) return o.A > 0;  // B -> infinity limit of {A > 0, B > 0}
    if (o.A > 0) return o.B > 0 || o.beta > 0.0;
    if (o.B > 0) return false;
    const double tie = kBoundaryTieTol * std::max({o.alpha, std::abs(o.beta), 1e-300});
    return 2.0 * o.beta >= o.alpha - tie;
}

}  // namespace

Verdict classify_from_orders(const BoundaryOrders& left, const BoundaryOrders& right) {
    return endpoint_nonexplosive(left) && endpoint_nonexplosive(right)
               ? Verdict::NonExplosive
               : Verdict::Explosive;
}

const char* to_string(Verdict v) {
    return v == Verdict::NonExplosive ? "NonExplosive" : "Explosive";
}

}  // namespace polyterm
