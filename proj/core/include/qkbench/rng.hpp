#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

namespace qkbench {

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
}  // namespace detail

/// Counter-based deterministic random stream. Every draw is a pure function
/// of (seed, k1, k2, k3), so concurrent or reordered evaluation cannot
/// change the values a given index sees.
inline std::uint64_t keyed_u64(std::uint64_t seed, std::uint64_t k1, std::uint64_t k2 = 0,
                               std::uint64_t k3 = 0) {
    std::uint64_t h = detail::splitmix64(seed);
    h = detail::splitmix64(h ^ detail::splitmix64(k1 ^ 0xd6e8feb86659fd93ULL));
    h = detail::splitmix64(h ^ detail::splitmix64(k2 ^ 0xa5a5a5a5a5a5a5a5ULL));
    h = detail::splitmix64(h ^ detail::splitmix64(k3 ^ 0x0f0f0f0f0f0f0f0fULL));
    return h;
}

/// Uniform double in [0, 1).
inline double keyed_uniform(std::uint64_t seed, std::uint64_t k1, std::uint64_t k2 = 0,
                            std::uint64_t k3 = 0) {
    return static_cast<double>(keyed_u64(seed, k1, k2, k3) >> 11) * 0x1.0p-53;
}

/// Symmetric Bernoulli +/-1.
inline double keyed_sign(std::uint64_t seed, std::uint64_t k1, std::uint64_t k2 = 0,
                         std::uint64_t k3 = 0) {
    return (keyed_u64(seed, k1, k2, k3) >> 63) ? 1.0 : -1.0;
}

/// Sequential deterministic generator for shuffles and sampling.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double next_uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n) by rejection, bias-free.
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t v = next_u64();
        while (v >= limit) v = next_u64();
        return v % n;
    }

    /// Standard normal via Box-Muller (no implementation-defined library
    /// distributions so streams are bit-stable across platforms).
    double next_gaussian() {
        double u1 = next_uniform();
        while (u1 <= 0.0) u1 = next_uniform();
        const double u2 = next_uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    template <typename T>
    void shuffle(std::vector<T> &v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[next_below(i)]);
        }
    }

  private:
    std::uint64_t state_;
};

}  // namespace qkbench
