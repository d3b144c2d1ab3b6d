#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace timnoma {

using BitPair = std::pair<std::uint8_t, std::uint8_t>;

/// Gray-mapped unit-energy QPSK. Enumeration order is the bit-pair value:
/// 00 -> (+1+i)/sqrt2, 01 -> (+1-i)/sqrt2, 10 -> (-1+i)/sqrt2, 11 -> (-1-i)/sqrt2.
inline constexpr double kInvSqrt2 = 0.70710678118654752440;

inline const std::array<std::complex<double>, 4>& qpsk_constellation() {
    static const std::array<std::complex<double>, 4> points{{
        {kInvSqrt2, kInvSqrt2},
        {kInvSqrt2, -kInvSqrt2},
        {-kInvSqrt2, kInvSqrt2},
        {-kInvSqrt2, -kInvSqrt2},
    }};
    return points;
}

std::complex<double> qpsk_modulate(std::uint8_t b0, std::uint8_t b1);

/// Throws ValidationError unless exactly two bits are given.
std::complex<double> qpsk_modulate(std::span<const std::uint8_t> bits);

/// Quadrant decision; zero components decide toward bit 0.
BitPair qpsk_demodulate(std::complex<double> symbol);

/// Index into qpsk_constellation() for a bit pair.
constexpr std::size_t qpsk_index(std::uint8_t b0, std::uint8_t b1) noexcept {
    return (static_cast<std::size_t>(b0 & 1U) << 1U) | (b1 & 1U);
}

/// Maps an even-length bit sequence to symbols, two bits per symbol.
std::vector<std::complex<double>> qpsk_modulate_frame(std::span<const std::uint8_t> bits);

} // namespace timnoma
