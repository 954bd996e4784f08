#pragma once

#include <cstdint>
#include <random>

namespace gcw {

/// Seeded generator whose derived draws are identical across standard
/// library implementations (std::*_distribution is not).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, bound), unbiased (rejection sampling).
    std::uint64_t below(std::uint64_t bound);

private:
    std::mt19937_64 engine_;
};

inline std::uint64_t Rng::below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % bound;
}

}  // namespace gcw
