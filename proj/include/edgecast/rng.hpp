#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace edgecast {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Random source with reproducible per-trial streams.
///
/// Doubles are produced from raw 64-bit output rather than through the
/// standard-library distributions, so a (seed, stream) pair yields the same
/// sample sequence on every platform and at every worker count.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    /// Stream `index` derived from `seed`; independent streams for parallel
    /// trials, with results independent of scheduling.
    static Rng stream(std::uint64_t seed, std::uint64_t index) {
        return Rng(splitmix64(seed ^ splitmix64(index + 0x51ed2701a9b5d4f3ULL)));
    }

    std::uint64_t bits() { return engine_(); }

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform in (0, 1]; safe as a log() argument.
    double uniform_pos() { return 1.0 - uniform(); }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
        const double t = 2.0 * M_PI * uniform();
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

    /// Circularly symmetric complex Gaussian, unit variance per entry
    /// (independent real/imaginary parts scaled by 1/sqrt(2)).
    std::complex<double> complex_normal() {
        constexpr double inv_sqrt2 = 0.70710678118654752440;
        const double re = normal();
        const double im = normal();
        return {re * inv_sqrt2, im * inv_sqrt2};
    }

    double exponential() { return -std::log(uniform_pos()); }

    /// Exact Poisson sampling via Knuth's product method, chunked so the
    /// running product never underflows for large means.
    long poisson(double mean) {
        long count = 0;
        while (mean > 0.0) {
            const double chunk = std::min(mean, 256.0);
            const double limit = std::exp(-chunk);
            double prod = uniform_pos();
            while (prod > limit) {
                ++count;
                prod *= uniform_pos();
            }
            mean -= chunk;
        }
        return count;
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace edgecast
