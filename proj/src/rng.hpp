#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace conelab {

// Deterministic random source. All randomized routines in the library draw
// from this wrapper so that a seed pins down every output bit across
// platforms: mt19937_64 has a fixed stream, and the uniform/normal transforms
// below avoid std::uniform_real_distribution, whose output is
// implementation-defined.
class Rng {
public:
    static constexpr std::uint64_t kDefaultSeed = 0x5EED;

    explicit Rng(std::uint64_t seed = kDefaultSeed) : engine_(seed) {}

    // Uniform on [0,1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // Standard normal via Box-Muller; caches the second variate.
    double gauss() {
        if (have_cache_) {
            have_cache_ = false;
            return cache_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double th = 2.0 * 3.14159265358979323846 * u2;
        cache_ = r * std::sin(th);
        have_cache_ = true;
        return r * std::cos(th);
    }

private:
    std::mt19937_64 engine_;
    double cache_ = 0.0;
    bool have_cache_ = false;
};

} // namespace conelab
