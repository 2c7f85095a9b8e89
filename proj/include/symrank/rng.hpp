#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace symrank {

// splitmix64; every stream below is a pure function of its 64-bit seed, so
// runs are reproducible bit-for-bit regardless of threading or call order.
inline std::uint64_t splitmix64_step(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Derive an independent child seed from a master seed and a salt path.
/// Used for counter-based stream splitting (per sample, per restart, ...).
inline std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> salts) {
    std::uint64_t s = seed;
    for (std::uint64_t salt : salts) {
        s ^= salt + 0x9E3779B97F4A7C15ULL + (s << 6) + (s >> 2);
        (void)splitmix64_step(s);
        s = splitmix64_step(s);
    }
    return s;
}

/// Deterministic random stream: splitmix64 underneath, Box-Muller normals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() { return splitmix64_step(state_); }

    /// Uniform in (0, 1].
    double uniform01() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    /// Standard normal.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 6.283185307179586476925286766559 * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

    /// Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound) { return next_u64() % bound; }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace symrank
