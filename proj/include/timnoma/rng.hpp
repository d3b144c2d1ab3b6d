#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace timnoma {

/// SplitMix64 finalizer; used to decorrelate stream keys.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Derives a substream seed from a master seed and a path of indices
/// (e.g. {snr_index, frame_index}). Distinct paths give unrelated seeds.
constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::initializer_list<std::uint64_t> path) noexcept {
    std::uint64_t s = mix64(master);
    for (std::uint64_t p : path) {
        s = mix64(s ^ mix64(p + 0x632BE59BD9B4E019ULL));
    }
    return s;
}

/// Seeded random stream. One instance per frame (or realization) so that
/// frames can be simulated in any order with identical results.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    RandomStream(std::uint64_t master, std::initializer_list<std::uint64_t> path)
        : engine_(derive_seed(master, path)) {}

    /// Standard normal N(0, 1).
    double gaussian() { return normal_(engine_); }

    /// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
    std::complex<double> complex_gaussian(double variance = 1.0) {
        const double s = std::sqrt(variance / 2.0);
        const double re = normal_(engine_);
        const double im = normal_(engine_);
        return {s * re, s * im};
    }

    /// Uniform bit.
    std::uint8_t bit() { return static_cast<std::uint8_t>(engine_() >> 63); }

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

} // namespace timnoma
