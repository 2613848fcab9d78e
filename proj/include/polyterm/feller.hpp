#pragma once

#include "polyterm/model.hpp"
#include "polyterm/poly.hpp"

namespace polyterm {

enum class Verdict { NonExplosive, Explosive };

enum class Side { Left, Right };

/// Leading orders of a and b at an endpoint, in the inward variable t >= 0:
///   a(endpoint -+ t) = alpha t^{A+1} + O(t^{A+2}),   alpha > 0,
///   b -> beta t^B + O(t^{B+1}) with the sign flipped at the right endpoint
/// so that beta > 0 always means drift pointing into the interval.
struct BoundaryOrders {
    double alpha = 0.0;
    int A = 0;
    double beta = 0.0;
    int B = 0;
    bool vanishing_b = false;  // b identically zero near the endpoint
};

/// Values of the endpoint derivative test, 2b - a' evaluated at lo and hi.
struct EndpointTest {
    double left_value = 0.0;
    double right_value = 0.0;
};

/// Tie tolerance on the endpoint inequalities, per unit of coefficient scale.
inline constexpr double kBoundaryTieTol = 1e-12;

EndpointTest endpoint_test_values(const GeneralParams& g);

/// Non-explosion test for the diffusion dZ = b dt + sqrt(a) dW on the open
/// interval: NonExplosive iff 2b(lo) - a'(lo) >= 0 >= 2b(hi) - a'(hi), with
/// ties within kBoundaryTieTol * coefficient scale counted as satisfied.
/// Requires a to vanish at both endpoints and be positive inside.
Verdict classify_simple(const GeneralParams& g);

/// Extract boundary orders of (a, b) at one endpoint. Requires a to vanish
/// there with positive inward leading coefficient.
BoundaryOrders boundary_orders(const Polynomial& a, const Polynomial& b,
                               double endpoint, Side side);

/// Classification from the order case table: an endpoint is non-explosive on
///   {A > 0, B = 0, beta > 0} u {A > 0, B > 0} u {A = 0, B = 0, 2 beta >= alpha};
/// a vanishing drift counts as the B -> infinity limit (non-explosive iff
/// A > 0). Both endpoints must pass.
Verdict classify_from_orders(const BoundaryOrders& left, const BoundaryOrders& right);

const char* to_string(Verdict v);

}  // namespace polyterm
