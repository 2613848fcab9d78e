#pragma once

#include <functional>

namespace polyterm {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
    bool converged = true;
};

/// Adaptive Gauss(7)/Kronrod(15) integration of f over [a, b]. A panel is
/// accepted once its error estimate drops below its length-proportional share
/// of abs_tol or below rel_tol times its own magnitude (values far above the
/// absolute scale cannot beat machine precision). Gives up on panels past
/// max_depth and stops refining past max_evals, flagging converged = false.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double abs_tol,
                                    int max_depth = 60, double rel_tol = 1e-14,
                                    long max_evals = 2000000);

/// Integrate f over (lo, hi) where f behaves like (z - lo)^p_lo near lo and
/// (hi - z)^p_hi near hi with p > -1 (integrable singularities allowed).
/// Splits at the midpoint and substitutes z = endpoint +/- u^q with q picked
/// so the transformed integrand vanishes at the endpoint. Exponents >= 1 need
/// no substitution; pass a large value for endpoints where f is flat.
///
/// f is evaluated in absolute coordinates, so mass closer to a nonzero
/// endpoint than one ulp is invisible: the result misses O(ulp(end)^{p+1}).
/// That is far below tolerance for p >= 0 (and for any p when the endpoint is
/// exactly 0, where subnormals resolve the approach), but a singularity with
/// p near -1 placed at a nonzero abscissa is resolved to ~ulp^{p+1} only.
QuadratureResult integrate_endpoint_singular(const std::function<double(double)>& f,
                                             double lo, double hi,
                                             double p_lo, double p_hi,
                                             double abs_tol);

}  // namespace polyterm
