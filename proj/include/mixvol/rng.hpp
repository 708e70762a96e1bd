#pragma once

// Seedable, splittable random stream with a frozen specification:
// the state is initialised by splitmix64-mixing (seed, stream_id) and
// advanced by splitmix64 steps. All distributions are built in-source on
// top of the raw 64-bit output, so a (seed, stream_id, draw index) triple
// reproduces the same values on any platform with the same libm.

#include <cmath>
#include <cstdint>
#include <numbers>

namespace mixvol {

namespace detail {

inline std::uint64_t splitmix_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace detail

struct RandomStream {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;

    RandomStream() = default;
    RandomStream(std::uint64_t seed_, std::uint64_t stream_id_ = 0)
        : seed(seed_), stream_id(stream_id_) {
        state_ = detail::splitmix_mix(seed + 0x9E3779B97F4A7C15ull);
        state_ ^= detail::splitmix_mix(stream_id + 0xD1B54A32D192ED03ull);
        // warm-up step decouples state from the raw xor of the two mixes
        next_u64();
    }

    /// Independent substream of the same seed.
    RandomStream substream(std::uint64_t id) const { return RandomStream(seed, id); }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        return detail::splitmix_mix(state_);
    }

    /// Uniform double in [0, 1) with 53 random mantissa bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller; pairs are generated together.
    double next_gaussian() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        // u1 in (0,1] so the log is finite
        const double u1 = 1.0 - next_unit();
        const double u2 = next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

private:
    std::uint64_t state_ = 0;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

}  // namespace mixvol
