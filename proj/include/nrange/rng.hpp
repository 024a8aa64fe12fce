#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "nrange/matrix.hpp"

namespace nrange {

/// Reproducible variates: the raw stream is std::mt19937_64 (MT19937-64, whose
/// output sequence is fixed by the C++ standard); uniforms take the top 53
/// bits; Gaussians use Box-Muller on pairs of uniforms. No std distributions
/// are used because their algorithms are implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal() {
        if (cached_) {
            cached_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(t);
        cached_ = true;
        return r * std::cos(t);
    }

    /// Standard complex Gaussian, E|z|^2 = 1.
    cplx complex_normal() {
        const double re = normal();
        const double im = normal();
        return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
    }

    /// Uniform in the closed unit disk scaled by `radius`.
    cplx in_disk(double radius = 1.0) {
        const double r = radius * std::sqrt(uniform());
        return std::polar(r, 2.0 * std::numbers::pi * uniform());
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool cached_ = false;
};

/// SplitMix64 finalizer, used to derive independent per-draw seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace nrange
