#include "timnoma/modem.hpp"

#include "timnoma/error.hpp"

namespace timnoma {

std::complex<double> qpsk_modulate(std::uint8_t b0, std::uint8_t b1) {
    return qpsk_constellation()[qpsk_index(b0, b1)];
}

std::complex<double> qpsk_modulate(std::span<const std::uint8_t> bits) {
    if (bits.size() != 2) {
        throw ValidationError(ErrorCode::InvalidArgument, "QPSK maps exactly two bits");
    }
    return qpsk_modulate(bits[0], bits[1]);
}

BitPair qpsk_demodulate(std::complex<double> symbol) {
    return {static_cast<std::uint8_t>(symbol.real() < 0.0),
            static_cast<std::uint8_t>(symbol.imag() < 0.0)};
}

std::vector<std::complex<double>> qpsk_modulate_frame(std::span<const std::uint8_t> bits) {
    if (bits.size() % 2 != 0) {
        throw ValidationError(ErrorCode::InvalidArgument, "bit frame length must be even");
    }
    std::vector<std::complex<double>> out;
    out.reserve(bits.size() / 2);
    for (std::size_t i = 0; i < bits.size(); i += 2) out.push_back(qpsk_modulate(bits[i], bits[i + 1]));
    return out;
}

} // namespace timnoma
