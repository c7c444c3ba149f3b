#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace wolff {

/// splitmix64 step, used to derive independent stream seeds from a user seed
/// and a counter (chunk index, trial index, ...).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// mt19937_64 wrapper with an explicit bits-to-double mapping, so draws are
/// reproducible across standard libraries (std::uniform_real_distribution is
/// implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Both components uniform on [0,1).
    std::complex<double> unit_square() {
        double re = uniform01();
        double im = uniform01();
        return {re, im};
    }

    /// Uniform on the closed disc of the given radius by rejection from the
    /// bounding square.
    std::complex<double> in_disc(double radius) {
        for (;;) {
            double x = uniform(-1.0, 1.0);
            double y = uniform(-1.0, 1.0);
            if (x * x + y * y <= 1.0) return {radius * x, radius * y};
        }
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace wolff
