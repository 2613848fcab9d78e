#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace polyterm {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

namespace detail {

/// Marsaglia-Tsang ziggurat tables for the standard normal, 128 layers,
/// widened to a 2^63 integer scale.
struct ZigguratTables {
    std::array<std::uint64_t, 128> k;
    std::array<double, 128> w;
    std::array<double, 128> f;

    ZigguratTables() {
        constexpr double r = 3.442619855899;          // base layer abscissa
        constexpr double v = 9.91256303526217e-3;     // layer area
        const double m = 9223372036854775808.0;       // 2^63
        double d = r, t = r;
        const double q = v / std::exp(-0.5 * d * d);
        k[0] = static_cast<std::uint64_t>((d / q) * m);
        k[1] = 0;
        w[0] = q / m;
        w[127] = d / m;
        f[0] = 1.0;
        f[127] = std::exp(-0.5 * d * d);
        for (int i = 126; i >= 1; --i) {
            d = std::sqrt(-2.0 * std::log(v / d + std::exp(-0.5 * d * d)));
            k[i + 1] = static_cast<std::uint64_t>((d / t) * m);
            t = d;
            f[i] = std::exp(-0.5 * d * d);
            w[i] = d / m;
        }
    }
};

inline const ZigguratTables& ziggurat() {
    static const ZigguratTables tables;
    return tables;
}

}  // namespace detail

/// xoshiro256++ stream keyed by (seed, stream index) through splitmix64, so a
/// (seed, path index) pair fully determines a path independently of execution
/// order. Normals come from a 128-layer ziggurat.
class PathRng {
public:
    PathRng(std::uint64_t seed, std::uint64_t stream)
        : zig_(&detail::ziggurat()) {
        std::uint64_t sm = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
        for (auto& word : s_) word = splitmix64_next(sm);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform on [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double normal() {
        for (;;) {
            const std::int64_t h = static_cast<std::int64_t>(next());
            const std::size_t layer = static_cast<std::size_t>(h & 127);
            const std::uint64_t habs =
                static_cast<std::uint64_t>(h < 0 ? -(h + 1) : h);  // |h| mod 2^63
            if (habs < zig_->k[layer]) return static_cast<double>(h) * zig_->w[layer];
            const double x = normal_slow(h, layer);
            if (!std::isnan(x)) return x;
        }
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    /// Wedge and tail cases (~2% of draws); NaN asks the caller to redraw.
    double normal_slow(std::int64_t h, std::size_t layer) {
        const auto& zig = *zig_;
        constexpr double r = 3.442619855899;
        if (layer == 0) {
            double x, y;
            do {
                x = -std::log(positive_uniform()) / r;
                y = -std::log(positive_uniform());
            } while (y + y < x * x);
            return h > 0 ? r + x : -(r + x);
        }
        const double x = static_cast<double>(h) * zig.w[layer];
        if (zig.f[layer] + uniform01() * (zig.f[layer - 1] - zig.f[layer]) <
            std::exp(-0.5 * x * x))
            return x;
        return std::nan("");
    }

    double positive_uniform() {
        double u;
        do {
            u = uniform01();
        } while (u == 0.0);
        return u;
    }

    const detail::ZigguratTables* zig_;
    std::uint64_t s_[4];
};

}  // namespace polyterm
