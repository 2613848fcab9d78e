#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "polyterm/model.hpp"

namespace polyterm {

/// Full-truncation Euler configuration. A (seed, path index) pair fully
/// determines a path, so results are independent of execution order and
/// thread count.
struct SimConfig {
    double dt = 1e-3;
    double horizon = 1.0;
    std::int64_t n_paths = 1;
    std::uint64_t seed = 0;
};

void validate(const SimConfig& cfg);

struct MCEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t n_paths = 0;
};

/// Per-path boundary diagnostics from a full-truncation run.
struct PathStats {
    double terminal = 0.0;
    double min_dist_lo = 0.0;  // closest approach to the left endpoint
    double min_dist_hi = 0.0;  // closest approach to the right endpoint
    std::int64_t projections = 0;  // steps clipped back into the interval
    std::int64_t steps = 0;
};

/// One Euler path of dZ = b dt + sqrt(max(a, 0)) dW started at z0 strictly
/// inside the interval; the state is projected onto
/// [lo + eps, hi - eps], eps = 1e-12 (hi - lo), after every step.
std::vector<std::pair<double, double>> simulate_path(const GeneralParams& g,
                                                     double z0, const SimConfig& cfg,
                                                     std::uint64_t path_index = 0);

/// Boundary diagnostics for one path (no trajectory storage).
PathStats simulate_path_stats(const GeneralParams& g, double z0,
                              const SimConfig& cfg, std::uint64_t path_index = 0);

/// Diagnostics for all cfg.n_paths paths, evaluated in parallel.
std::vector<PathStats> simulate_ensemble_stats(const GeneralParams& g, double z0,
                                               const SimConfig& cfg);

/// Terminal states of all paths at the given sampling times (each must be a
/// multiple of dt up to rounding); used for ergodic-law checks.
std::vector<double> sample_states(const GeneralParams& g, double z0,
                                  const SimConfig& cfg,
                                  const std::vector<double>& sample_times);

/// Monte Carlo estimate of E[exp(-int_0^x R(Z_s) ds)], the discounted payoff
/// of a unit zero-coupon bond; the time integral uses the trapezoidal rule on
/// the simulation grid. Requires x <= cfg.horizon. Mean and standard error
/// are reduced by pairwise summation, so they do not depend on thread count.
MCEstimate mc_price(const GeneralParams& g, double x, double z0, const SimConfig& cfg);

/// Closed-form bond price of the unbounded-state example
///   a = z^2, b = -z^2/2, R = -z on (0, inf):
/// H(x, z) = 1 + x z + (e^x - x - 1) z^2 / 2. Rejects z <= 0.
double unbounded_example_price(double x, double z);

/// Explicit solution Z_t = z e^{W_t - t/2} / (1 + z/2 int_0^t e^{W_s - s/2} ds)
/// driven by a simulated Brownian path (trapezoidal time integral).
std::vector<std::pair<double, double>> unbounded_example_path(double z0,
                                                              const SimConfig& cfg,
                                                              std::uint64_t path_index = 0);

/// Monte Carlo of (1 + z/2 int_0^x e^{W_s - s/2} ds)^2, whose expectation
/// equals the closed-form H(x, z).
MCEstimate unbounded_example_mc(double x, double z, const SimConfig& cfg);

}  // namespace polyterm
