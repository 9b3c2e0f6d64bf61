#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace randten {

/// Counter-splittable generator (splitmix64 core). Streams derived from
/// (seed, index) are independent of execution order, which is what the
/// reproducibility contract of the Monte Carlo code relies on.
class SplitRng {
public:
    explicit SplitRng(std::uint64_t seed) : state_(seed) {}

    /// Stream seed for substream `index` of `seed`.
    static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
        std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    static SplitRng derive(std::uint64_t seed, std::uint64_t index) {
        return SplitRng(derive_seed(seed, index));
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform in (lo, hi].
    double next_uniform(double lo, double hi) {
        return hi - (hi - lo) * next_unit();
    }

    /// Uniform on [-1, 1].
    double next_symmetric() { return 2.0 * next_unit() - 1.0; }

    int next_sign() { return (next_u64() >> 63) ? 1 : -1; }

    /// Standard normal via Box-Muller (pairs cached).
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u = 1.0 - next_unit();  // (0, 1]
        double v = next_unit();
        double rad = std::sqrt(-2.0 * std::log(u));
        double ang = 2.0 * std::numbers::pi * v;
        spare_ = rad * std::sin(ang);
        have_spare_ = true;
        return rad * std::cos(ang);
    }

    /// Standard Cauchy; heavy tails cover ball corners when normalized.
    double next_cauchy() {
        return std::tan(std::numbers::pi * (next_unit() - 0.5));
    }

    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace randten
