#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace mlsketch {

/// Seeded random stream with a splittable substream scheme.
///
/// Substreams are derived from (master seed, a, b) through a SplitMix64-style
/// avalanche, so every task — e.g. replication k at level l — owns an
/// independent stream whose output depends only on those identifiers, never on
/// execution order or thread count.  All samplers are explicit fixed
/// algorithms on top of the 64-bit engine output, so a given (seed, call
/// sequence) reproduces bit-identical values everywhere.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    /// SplitMix64 finalizer.
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Substream seed for (master, a, b); chained asymmetric absorption so
    /// (a, b) and (b, a) land on unrelated streams.
    static std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                     std::uint64_t b) {
        std::uint64_t h = mix(master);
        h = mix(h ^ (a + 0x9e3779b97f4a7c15ULL));
        h = mix(h ^ (b + 0xbf58476d1ce4e5b9ULL));
        return h;
    }

    static RngStream derive(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
        return RngStream(derive_seed(master, a, b));
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in (0, 1]; safe as a log argument.
    double uniform_pos() { return 1.0 - uniform01(); }

    /// Standard normal via Box-Muller; the second value of each pair is
    /// cached, so draws come in a fixed per-stream sequence.
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
        const double theta = 6.283185307179586476925286766559 * uniform01();
        cached_ = r * std::sin(theta);
        have_cached_ = true;
        return r * std::cos(theta);
    }

    /// Exponential(1) by inverse CDF.
    double exponential() { return -std::log(uniform_pos()); }

    /// Poisson(mean) by sequential CDF inversion from one uniform; suitable
    /// for moderate means (the models use mean 10).  The loop is capped far
    /// beyond any realistically reachable quantile to guarantee termination.
    long poisson(double mean) {
        const double u = uniform01();
        double p = std::exp(-mean);
        double cdf = p;
        long k = 0;
        while (u > cdf && k < 1000) {
            ++k;
            p *= mean / static_cast<double>(k);
            cdf += p;
        }
        return k;
    }

private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

} // namespace mlsketch
