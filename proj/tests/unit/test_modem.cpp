#include <doctest.h>

#include <cmath>

#include "timnoma/error.hpp"
#include "timnoma/modem.hpp"

using namespace timnoma;

TEST_SUITE("modem") {

TEST_CASE("gray mapping") {
    const double r = 0.7071068;
    CHECK(std::abs(qpsk_modulate(0, 0) - std::complex<double>{r, r}) < 1e-7);
    CHECK(std::abs(qpsk_modulate(0, 1) - std::complex<double>{r, -r}) < 1e-7);
    CHECK(std::abs(qpsk_modulate(1, 0) - std::complex<double>{-r, r}) < 1e-7);
    CHECK(std::abs(qpsk_modulate(1, 1) - std::complex<double>{-r, -r}) < 1e-7);
}

TEST_CASE("unit energy and bijection on all pairs") {
    for (std::uint8_t b0 = 0; b0 < 2; ++b0) {
        for (std::uint8_t b1 = 0; b1 < 2; ++b1) {
            const auto s = qpsk_modulate(b0, b1);
            CHECK(std::abs(std::norm(s) - 1.0) < 1e-15);
            CHECK(qpsk_demodulate(s) == BitPair{b0, b1});
            CHECK(qpsk_constellation()[qpsk_index(b0, b1)] == s);
        }
    }
}

TEST_CASE("quadrant decisions and tie-break") {
    CHECK(qpsk_demodulate({0.7071068, 0.7071068}) == BitPair{0, 0});
    CHECK(qpsk_demodulate({-0.9, 0.1}) == BitPair{1, 0});
    CHECK(qpsk_demodulate({0.0, 0.0}) == BitPair{0, 0});
    CHECK(qpsk_demodulate({0.3, -1e-300}) == BitPair{0, 1});
}

TEST_CASE("arity and frame mapping") {
    const std::vector<std::uint8_t> three{0, 1, 1};
    CHECK_THROWS_AS(qpsk_modulate(std::span<const std::uint8_t>(three)), ValidationError);
    CHECK_THROWS_AS(qpsk_modulate_frame(three), ValidationError);
    const std::vector<std::uint8_t> bits{0, 1, 1, 1};
    const auto sym = qpsk_modulate_frame(bits);
    REQUIRE(sym.size() == 2);
    CHECK(sym[0] == qpsk_modulate(0, 1));
    CHECK(sym[1] == qpsk_modulate(1, 1));
}

} // TEST_SUITE
