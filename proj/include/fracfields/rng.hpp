// rng.hpp -- counter-based random streams.  A stream is (key, counter); the
// k-th output is a fixed avalanche of key + k*GOLDEN, so identical seeds give
// identical sequences on any platform and under any thread schedule.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace fracfields {

namespace detail {

// splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

} // namespace detail

// Deterministic child-seed derivation used for per-chunk streams.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    std::uint64_t h = detail::mix64(seed + detail::kGolden);
    h = detail::mix64(h ^ (a + detail::kGolden));
    h = detail::mix64(h ^ (b + detail::kGolden));
    return h;
}

struct RngState {
    std::uint64_t key = 0;
    std::uint64_t ctr = 0;

    RngState() = default;
    explicit RngState(std::uint64_t seed) : key(detail::mix64(seed + detail::kGolden)) {}

    std::uint64_t next_u64() {
        ++ctr;
        return detail::mix64(key + ctr * detail::kGolden);
    }

    // Uniform on the open interval (0,1).
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double exponential() { return -std::log(uniform()); }

    // Box-Muller; consumes two uniforms per variate.
    double normal() {
        double u1 = uniform();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(6.283185307179586476925286766559 * u2);
    }

    // Exact Poisson draw.  Knuth multiplication below mean 30; larger means
    // split into independent Poisson pieces (sum of Poissons is Poisson).
    long long poisson(double mean) {
        if (mean < 0.0) throw std::invalid_argument("poisson: negative mean");
        if (mean == 0.0) return 0;
        if (mean > 30.0) {
            int parts = static_cast<int>(std::ceil(mean / 30.0));
            long long total = 0;
            for (int i = 0; i < parts; ++i) total += poisson(mean / parts);
            return total;
        }
        double limit = std::exp(-mean);
        long long n = -1;
        double prod = 1.0;
        do {
            prod *= uniform();
            ++n;
        } while (prod > limit);
        return n;
    }
};

} // namespace fracfields
