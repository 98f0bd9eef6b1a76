#pragma once

#include <cmath>
#include <cstdint>

namespace chsh {

/// Counter-based generator: the i-th output is a hash of (state, i), so
/// streams derived for parallel restarts are reproducible regardless of
/// scheduling.
class Prng {
public:
    explicit Prng(uint64_t seed) : state_(mix(seed + kGolden)) {}

    /// Independent stream for restart / subtask `k` of this generator.
    Prng derive(uint64_t k) const { return Prng(mix(state_ ^ mix(k * kGolden + 0x123456789abcdefULL))); }

    uint64_t next_u64() { return mix(state_ + (++counter_) * kGolden); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal (Box-Muller, deterministic pairing).
    double gauss() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    uint32_t below(uint32_t n) { return static_cast<uint32_t>(next_u64() % n); }

private:
    static constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

    static uint64_t mix(uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

    uint64_t state_;
    uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace chsh
