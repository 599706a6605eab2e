#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace lsdt {

/// SplitMix64 finalizer. Used to derive independent stream seeds from
/// (master seed, replication, stream index) triples.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Counter-based seed derivation. The result depends only on the arguments,
/// never on scheduling, so replications can run on any worker.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                    std::uint64_t b = 0) noexcept {
    return splitmix64(splitmix64(splitmix64(master) ^ a) ^ (b * 0xD1B54A32D192ED03ULL));
}

/**
 * Seeded random stream.
 *
 * The bit generator is std::mt19937_64, whose output sequence is fixed by the
 * standard. Uniform and normal variates are produced here rather than through
 * std distributions so that they are identical on every platform:
 *   - uniform01(): top 53 bits of one engine output, scaled to [0, 1)
 *   - normal():    Box-Muller, cos branch, two uniforms per draw, no caching
 * Gamma/Beta draws go through std::gamma_distribution and are only
 * reproducible within one standard library implementation.
 */
class RandomStream {
public:
    using engine_type = std::mt19937_64;

    explicit RandomStream(std::uint64_t seed = 0) : engine_(seed) {}

    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1]; safe as a log argument.
    double uniform_open0() { return 1.0 - uniform01(); }

    double normal() {
        const double u1 = uniform_open0();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    bool bernoulli(double p) { return uniform01() < p; }

    /// Uniform integer in [0, n). Rejection sampling, no modulo bias.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    double beta(double a, double b) {
        std::gamma_distribution<double> ga(a, 1.0), gb(b, 1.0);
        const double x = ga(engine_);
        const double y = gb(engine_);
        return x / (x + y);
    }

    engine_type& engine() { return engine_; }

private:
    engine_type engine_;
};

/// Fisher-Yates shuffle driven by RandomStream::below so the permutation is
/// the same on every platform.
template <class It>
void shuffle(It first, It last, RandomStream& rng) {
    const auto n = static_cast<std::uint64_t>(last - first);
    for (std::uint64_t i = n; i > 1; --i) {
        const auto j = rng.below(i);
        std::iter_swap(first + (i - 1), first + j);
    }
}

}  // namespace lsdt
