#include "polyterm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "polyterm/errors.hpp"

namespace polyterm {

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
constexpr double kKronrodNodes[8] = {
    0.000000000000000000000000000000000e+00,
    2.077849550078984676006894037732449e-01,
    4.058451513773971669066064120769615e-01,
    5.860872354676911302941448382587296e-01,
    7.415311855993944398638647732807884e-01,
    8.648644233597690727897127886409262e-01,
    9.491079123427585245261896840478513e-01,
    9.914553711208126392068546975263285e-01};

constexpr double kKronrodWeights[8] = {
    2.094821410847278280129991748917143e-01,
    2.044329400752988924141619992346491e-01,
    1.903505780647854099132564024210137e-01,
    1.690047266392679028265834265985503e-01,
    1.406532597155259187451895905102379e-01,
    1.047900103222501838398763225415180e-01,
    6.309209262997855329070066318920429e-02,
    2.293532201052922496373200805896959e-02};

// Gauss-7 weights aligned with the even-index Kronrod nodes (0, 2, 4, 6).
constexpr double kGaussWeights[4] = {
    4.179591836734693877551020408163265e-01,
    3.818300505051189449503697754889751e-01,
    2.797053914892766679014677714237796e-01,
    1.294849661688696932706114326790820e-01};

struct PanelResult {
    double value;
    double error;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double f0 = f(center);
    double kronrod = kKronrodWeights[0] * f0;
    double gauss = kGaussWeights[0] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kKronrodNodes[i];
        const double fi = f(center + dx) + f(center - dx);
        kronrod += kKronrodWeights[i] * fi;
        if (i % 2 == 0) gauss += kGaussWeights[i / 2] * fi;
    }
    kronrod *= half;
    gauss *= half;

    // QUADPACK-style sharpened estimate: (200|K-G|)^{3/2}, capped by 200|K-G|.
    const double diff = std::abs(kronrod - gauss);
    const double scaled = 200.0 * diff;
    const double err = scaled < 1.0 ? scaled * std::sqrt(scaled) : scaled;
    return {kronrod, err};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double abs_tol,
                                    int max_depth, double rel_tol, long max_evals) {
    QuadratureResult out;
    if (a == b) return out;

    struct Segment {
        double a, b;
        int depth;
    };
    std::vector<Segment> stack{{a, b, 0}};
    while (!stack.empty()) {
        const Segment seg = stack.back();
        stack.pop_back();
        const PanelResult panel = gk15(f, seg.a, seg.b);
        out.evaluations += 15;
        const double local_tol =
            std::max(abs_tol * std::max(1e-3, std::abs(seg.b - seg.a) / std::abs(b - a)),
                     rel_tol * std::abs(panel.value));
        const bool accepted = panel.error <= local_tol;
        if (accepted || seg.depth >= max_depth || out.evaluations >= max_evals) {
            if (!accepted) out.converged = false;
            out.value += panel.value;
            out.error_estimate += panel.error;
            continue;
        }
        const double mid = 0.5 * (seg.a + seg.b);
        stack.push_back({seg.a, mid, seg.depth + 1});
        stack.push_back({mid, seg.b, seg.depth + 1});
    }
    return out;
}

QuadratureResult integrate_endpoint_singular(const std::function<double(double)>& f,
                                             double lo, double hi,
                                             double p_lo, double p_hi,
                                             double abs_tol) {
    if (!(lo < hi))
        throw Error("invalid_argument", "integrate_endpoint_singular: lo < hi required");
    if (p_lo <= -1.0 || p_hi <= -1.0)
        throw Error("quadrature_failure",
                    "endpoint exponent <= -1: integrand is not integrable");

    const double mid = 0.5 * (lo + hi);

    // Substitution power: z = endpoint ± u^q turns t^p into q*u^{q(p+1)-1},
    // which vanishes at u = 0 once q(p+1) >= 2.
    const auto power_for = [](double p) -> int {
        if (p >= 1.0) return 1;
        const int q = static_cast<int>(std::ceil(2.0 / (p + 1.0)));
        return std::clamp(q, 1, 64);
    };

    QuadratureResult total;
    const auto accumulate = [&total](const QuadratureResult& part) {
        total.value += part.value;
        total.error_estimate += part.error_estimate;
        total.evaluations += part.evaluations;
        total.converged = total.converged && part.converged;
    };

    // Distances below one ulp of the endpoint round onto it; the true mass
    // there is O(t^{p+1}) at t ~ ulp, far below tolerance, so those
    // evaluations count as zero.
    {
        const int q = power_for(p_lo);
        if (q == 1) {
            accumulate(integrate_adaptive(f, lo, mid, 0.5 * abs_tol));
        } else {
            const double umax = std::pow(mid - lo, 1.0 / q);
            auto sub = [&f, lo, q](double u) {
                const double uq1 = std::pow(u, q - 1);
                const double z = lo + uq1 * u;
                if (!(z > lo)) return 0.0;
                return f(z) * q * uq1;
            };
            accumulate(integrate_adaptive(sub, 0.0, umax, 0.5 * abs_tol));
        }
    }
    {
        const int q = power_for(p_hi);
        if (q == 1) {
            accumulate(integrate_adaptive(f, mid, hi, 0.5 * abs_tol));
        } else {
            const double umax = std::pow(hi - mid, 1.0 / q);
            auto sub = [&f, hi, q](double u) {
                const double uq1 = std::pow(u, q - 1);
                const double z = hi - uq1 * u;
                if (!(z < hi)) return 0.0;
                return f(z) * q * uq1;
            };
            accumulate(integrate_adaptive(sub, 0.0, umax, 0.5 * abs_tol));
        }
    }
    return total;
}

}  // namespace polyterm
