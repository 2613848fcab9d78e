#include "polyterm/sim.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>

#include "polyterm/errors.hpp"
#include "polyterm/rng.hpp"

namespace polyterm {

namespace {

/// Coefficients unpacked into scalars; hot loops copy this by value so the
/// optimizer can keep everything in registers.
struct Stepper {
    double b0, b1, b2, b3;
    double a0, a1, a2, a3, a4;
    double r0, r1, r2;
    double lo, hi;
    double lo_eps, hi_eps;
    double dt, sqrt_dt;

    Stepper(const GeneralParams& g, double dt_)
        : b0(g.b.coeff(0)), b1(g.b.coeff(1)), b2(g.b.coeff(2)), b3(g.b.coeff(3)),
          a0(g.a.coeff(0)), a1(g.a.coeff(1)), a2(g.a.coeff(2)), a3(g.a.coeff(3)),
          a4(g.a.coeff(4)),
          r0(g.R.coeff(0)), r1(g.R.coeff(1)), r2(g.R.coeff(2)),
          lo(g.interval.lo), hi(g.interval.hi) {
        const double eps = 1e-12 * (hi - lo);
        lo_eps = lo + eps;
        hi_eps = hi - eps;
        dt = dt_;
        sqrt_dt = std::sqrt(dt_);
    }

    double rate(double z) const { return (r2 * z + r1) * z + r0; }

    /// One full-truncation Euler step: the diffusion argument is clamped at
    /// zero before the square root, and the result is projected onto
    /// [lo + eps, hi - eps].
    double step(double z, double xi) const {
        const double drift = ((b3 * z + b2) * z + b1) * z + b0;
        double var = (((a4 * z + a3) * z + a2) * z + a1) * z + a0;
        var = var > 0.0 ? var : 0.0;
        double next = z + drift * dt + std::sqrt(var) * sqrt_dt * xi;
        next = next < lo_eps ? lo_eps : next;
        next = next > hi_eps ? hi_eps : next;
        return next;
    }

    /// Whether a freshly stepped state sits on the projection boundary.
    bool clipped(double z) const { return z == lo_eps || z == hi_eps; }
};

void run_parallel(std::int64_t count, const std::function<void(std::int64_t)>& body) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers =
        static_cast<unsigned>(std::min<std::int64_t>(hw, std::max<std::int64_t>(1, count)));
    if (workers == 1) {
        for (std::int64_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            for (std::int64_t i = w; i < count; i += workers) body(i);
        });
    }
    for (auto& t : threads) t.join();
}

/// Order-insensitive reduction.
double pairwise_sum(const double* data, std::size_t size) {
    if (size <= 8) {
        double acc = 0.0;
        for (std::size_t i = 0; i < size; ++i) acc += data[i];
        return acc;
    }
    const std::size_t half = size / 2;
    return pairwise_sum(data, half) + pairwise_sum(data + half, size - half);
}

MCEstimate reduce_estimate(const std::vector<double>& values) {
    MCEstimate est;
    est.n_paths = static_cast<std::int64_t>(values.size());
    if (values.empty()) return est;
    est.mean = pairwise_sum(values.data(), values.size()) / static_cast<double>(values.size());
    if (values.size() > 1) {
        std::vector<double> sq(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) {
            const double d = values[i] - est.mean;
            sq[i] = d * d;
        }
        const double var = pairwise_sum(sq.data(), sq.size()) /
                           static_cast<double>(values.size() - 1);
        est.std_error = std::sqrt(var / static_cast<double>(values.size()));
    }
    return est;
}

void check_start(const GeneralParams& g, double z0) {
    if (!g.interval.contains(z0))
        throw Error("invalid_argument", "initial state must lie strictly inside the interval");
}

std::int64_t full_steps(double span, double dt) {
    return static_cast<std::int64_t>(std::floor(span / dt + 1e-9));
}

}  // namespace

void validate(const SimConfig& cfg) {
    if (!(cfg.dt > 0.0)) throw Error("invalid_argument", "dt must be positive");
    if (!(cfg.horizon >= 0.0)) throw Error("invalid_argument", "horizon must be non-negative");
    if (cfg.n_paths < 1) throw Error("invalid_argument", "n_paths must be >= 1");
}

std::vector<std::pair<double, double>> simulate_path(const GeneralParams& g, double z0,
                                                     const SimConfig& cfg,
                                                     std::uint64_t path_index) {
    validate(cfg);
    check_start(g, z0);
    const Stepper stepper(g, cfg.dt);
    PathRng rng(cfg.seed, path_index);

    const std::int64_t steps = full_steps(cfg.horizon, cfg.dt);
    std::vector<std::pair<double, double>> path;
    path.reserve(static_cast<std::size_t>(steps) + 1);
    double z = z0;
    path.emplace_back(0.0, z);
    for (std::int64_t i = 1; i <= steps; ++i) {
        z = stepper.step(z, rng.normal());
        path.emplace_back(static_cast<double>(i) * cfg.dt, z);
    }
    return path;
}

PathStats simulate_path_stats(const GeneralParams& g, double z0, const SimConfig& cfg,
                              std::uint64_t path_index) {
    validate(cfg);
    check_start(g, z0);
    const Stepper s(g, cfg.dt);
    PathRng rng(cfg.seed, path_index);

    PathStats stats;
    stats.steps = full_steps(cfg.horizon, cfg.dt);
    double z = z0;
    double min_lo = z - s.lo, min_hi = s.hi - z;
    for (std::int64_t i = 0; i < stats.steps; ++i) {
        z = s.step(z, rng.normal());
        if (s.clipped(z)) ++stats.projections;
        min_lo = std::min(min_lo, z - s.lo);
        min_hi = std::min(min_hi, s.hi - z);
    }
    stats.terminal = z;
    stats.min_dist_lo = min_lo;
    stats.min_dist_hi = min_hi;
    return stats;
}

std::vector<PathStats> simulate_ensemble_stats(const GeneralParams& g, double z0,
                                               const SimConfig& cfg) {
    validate(cfg);
    check_start(g, z0);
    std::vector<PathStats> stats(static_cast<std::size_t>(cfg.n_paths));
    run_parallel(cfg.n_paths, [&](std::int64_t i) {
        stats[static_cast<std::size_t>(i)] =
            simulate_path_stats(g, z0, cfg, static_cast<std::uint64_t>(i));
    });
    return stats;
}

std::vector<double> sample_states(const GeneralParams& g, double z0, const SimConfig& cfg,
                                  const std::vector<double>& sample_times) {
    validate(cfg);
    check_start(g, z0);
    std::vector<std::int64_t> sample_steps;
    sample_steps.reserve(sample_times.size());
    for (const double t : sample_times) {
        if (t < 0.0 || t > cfg.horizon + 1e-9)
            throw Error("invalid_argument", "sample time outside the simulation horizon");
        sample_steps.push_back(full_steps(t, cfg.dt));
    }
    std::sort(sample_steps.begin(), sample_steps.end());

    const Stepper stepper(g, cfg.dt);
    std::vector<double> samples(
        static_cast<std::size_t>(cfg.n_paths) * sample_steps.size());
    run_parallel(cfg.n_paths, [&](std::int64_t p) {
        const Stepper s = stepper;
        PathRng rng(cfg.seed, static_cast<std::uint64_t>(p));
        double z = z0;
        std::int64_t step = 0;
        std::size_t out = static_cast<std::size_t>(p) * sample_steps.size();
        for (const std::int64_t target : sample_steps) {
            for (; step < target; ++step) z = s.step(z, rng.normal());
            samples[out++] = z;
        }
    });
    return samples;
}

MCEstimate mc_price(const GeneralParams& g, double x, double z0, const SimConfig& cfg) {
    validate(cfg);
    check_start(g, z0);
    if (!(x >= 0.0)) throw Error("invalid_argument", "maturity must be non-negative");
    if (x > cfg.horizon + 1e-9)
        throw Error("invalid_argument", "maturity exceeds the simulation horizon");

    const std::int64_t steps = full_steps(x, cfg.dt);
    const double remainder = x - static_cast<double>(steps) * cfg.dt;
    const bool has_tail = remainder > 1e-12 * cfg.dt;

    const Stepper stepper(g, cfg.dt);
    const Stepper tail_stepper(g, has_tail ? remainder : cfg.dt);

    // Four interleaved paths per block keep the per-path sqrt/normal latency
    // chains overlapped; each path still consumes its own (seed, index) RNG
    // stream, so results do not depend on the batching.
    constexpr std::int64_t kLanes = 4;
    const std::int64_t blocks = (cfg.n_paths + kLanes - 1) / kLanes;

    std::vector<double> discounts(static_cast<std::size_t>(cfg.n_paths));
    run_parallel(blocks, [&](std::int64_t blk) {
        const Stepper s = stepper;
        const std::int64_t base = blk * kLanes;
        PathRng rng[kLanes] = {
            {cfg.seed, static_cast<std::uint64_t>(base + 0)},
            {cfg.seed, static_cast<std::uint64_t>(base + 1)},
            {cfg.seed, static_cast<std::uint64_t>(base + 2)},
            {cfg.seed, static_cast<std::uint64_t>(base + 3)}};
        double z[kLanes], rate_prev[kLanes], rate_sum[kLanes];
        for (int l = 0; l < kLanes; ++l) {
            z[l] = z0;
            rate_prev[l] = s.rate(z0);
            rate_sum[l] = 0.0;
        }
        for (std::int64_t i = 0; i < steps; ++i) {
            for (int l = 0; l < kLanes; ++l) {
                z[l] = s.step(z[l], rng[l].normal());
                const double rate_next = s.rate(z[l]);
                rate_sum[l] += rate_prev[l] + rate_next;
                rate_prev[l] = rate_next;
            }
        }
        for (int l = 0; l < kLanes; ++l) {
            const std::int64_t p = base + l;
            if (p >= cfg.n_paths) break;
            double integral = 0.5 * s.dt * rate_sum[l];
            if (has_tail) {
                const double zt = tail_stepper.step(z[l], rng[l].normal());
                integral += 0.5 * (rate_prev[l] + tail_stepper.rate(zt)) * tail_stepper.dt;
            }
            discounts[static_cast<std::size_t>(p)] = std::exp(-integral);
        }
    });
    return reduce_estimate(discounts);
}

double unbounded_example_price(double x, double z) {
    if (!(z > 0.0)) throw Error("invalid_argument", "state must be positive");
    if (!(x >= 0.0)) throw Error("invalid_argument", "maturity must be non-negative");
    return 1.0 + x * z + 0.5 * (std::exp(x) - x - 1.0) * z * z;
}

std::vector<std::pair<double, double>> unbounded_example_path(double z0,
                                                              const SimConfig& cfg,
                                                              std::uint64_t path_index) {
    validate(cfg);
    if (!(z0 > 0.0)) throw Error("invalid_argument", "state must be positive");
    PathRng rng(cfg.seed, path_index);

    const std::int64_t steps = full_steps(cfg.horizon, cfg.dt);
    const double sqrt_dt = std::sqrt(cfg.dt);
    std::vector<std::pair<double, double>> path;
    path.reserve(static_cast<std::size_t>(steps) + 1);

    double w = 0.0;
    double integ = 0.0;  // trapezoidal int_0^t e^{W_s - s/2} ds
    double prev = 1.0;   // e^{W_0 - 0}
    path.emplace_back(0.0, z0);
    for (std::int64_t i = 1; i <= steps; ++i) {
        const double t = static_cast<double>(i) * cfg.dt;
        w += sqrt_dt * rng.normal();
        const double cur = std::exp(w - 0.5 * t);
        integ += 0.5 * (prev + cur) * cfg.dt;
        prev = cur;
        path.emplace_back(t, z0 * cur / (1.0 + 0.5 * z0 * integ));
    }
    return path;
}

MCEstimate unbounded_example_mc(double x, double z, const SimConfig& cfg) {
    validate(cfg);
    if (!(z > 0.0)) throw Error("invalid_argument", "state must be positive");
    if (x > cfg.horizon + 1e-9)
        throw Error("invalid_argument", "maturity exceeds the simulation horizon");

    const std::int64_t steps = full_steps(x, cfg.dt);
    const double sqrt_dt = std::sqrt(cfg.dt);
    std::vector<double> values(static_cast<std::size_t>(cfg.n_paths));
    run_parallel(cfg.n_paths, [&](std::int64_t p) {
        PathRng rng(cfg.seed, static_cast<std::uint64_t>(p));
        double w = 0.0;
        double integ = 0.0;
        double prev = 1.0;
        for (std::int64_t i = 1; i <= steps; ++i) {
            const double t = static_cast<double>(i) * cfg.dt;
            w += sqrt_dt * rng.normal();
            const double cur = std::exp(w - 0.5 * t);
            integ += 0.5 * (prev + cur) * cfg.dt;
            prev = cur;
        }
        const double base = 1.0 + 0.5 * z * integ;
        values[static_cast<std::size_t>(p)] = base * base;
    });
    return reduce_estimate(values);
}

}  // namespace polyterm
