#include <doctest.h>

#include <cmath>

#include "timnoma/channel.hpp"
#include "timnoma/error.hpp"
#include "timnoma/modem.hpp"
#include "timnoma/precoding.hpp"

using namespace timnoma;

TEST_SUITE("precoding") {

TEST_CASE("two-group basis is the fixed rotation pair") {
    const auto b = make_basis(2);
    CHECK(b.dimension() == 2);
    CHECK(std::abs(b.vector(0)[0] - 0.5) < 1e-15);
    CHECK(std::abs(b.vector(0)[1] - std::sqrt(3.0) / 2.0) < 1e-15);
    CHECK(std::abs(b.vector(1)[0] + std::sqrt(3.0) / 2.0) < 1e-15);
    CHECK(std::abs(b.vector(1)[1] - 0.5) < 1e-15);
    CHECK(std::abs(b.vector(0)[1] - 0.8660254) < 1e-7);
}

TEST_CASE("one-group basis") {
    const auto b = make_basis(1);
    CHECK(b.dimension() == 1);
    CHECK(std::abs(std::abs(b.vector(0)[0]) - 1.0) < 1e-15);
}

TEST_CASE("orthonormal and zero-free for every supported size") {
    for (std::size_t t = 1; t <= 12; ++t) {
        const auto b = make_basis(t);
        const Eigen::MatrixXd gram = b.matrix().transpose() * b.matrix();
        CHECK((gram - Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(t)))
                  .cwiseAbs()
                  .maxCoeff() < 1e-12);
        if (t <= 9) CHECK(b.matrix().cwiseAbs().minCoeff() > 1e-3);
    }
    CHECK_THROWS_AS(make_basis(0), ValidationError);
    CHECK_THROWS_AS(PrecodingBasis(Eigen::MatrixXd::Ones(2, 2)), ValidationError);
}

TEST_CASE("transmit assembly") {
    const auto topo = build_topology({0.5, 1.5, 2.5, 3.5, 4.5}, 5.0, 3.0, 2);
    const auto groups = assign_groups(topo);
    const auto power = allocate_power(topo, 40.0);
    const auto basis = make_basis(2);

    SUBCASE("zero symbols give a zero vector") {
        const std::vector<cplx> zeros(5);
        CHECK(assemble_transmit(zeros, power, groups, basis).norm() == 0.0);
    }
    SUBCASE("scalar cell") {
        const auto t1 = build_topology({1.0}, 5.0, 3.0, 1);
        const std::vector<cplx> one{cplx{1.0, 0.0}};
        const std::vector<double> p{4.0};
        const auto x = assemble_transmit(one, p, assign_groups(t1), make_basis(1));
        CHECK(std::abs(std::abs(x[0]) - 2.0) < 1e-15);
    }
    SUBCASE("five-user cell with unit symbols") {
        // independent: sqrt(P) sums per group, then the 2x2 rotation by hand
        const double a = std::sqrt(40.0 * 0.25 / 41.25) + std::sqrt(40.0 * 6.25 / 41.25) +
                         std::sqrt(40.0 * 20.25 / 41.25);
        const double b = std::sqrt(40.0 * 2.25 / 41.25) + std::sqrt(40.0 * 12.25 / 41.25);
        const double s3 = std::sqrt(3.0) / 2.0;
        const std::vector<cplx> ones(5, cplx{1.0, 0.0});
        const auto x = assemble_transmit(ones, power, groups, basis);
        CHECK(std::abs(x[0] - cplx{0.5 * a - s3 * b, 0.0}) < 1e-13);
        CHECK(std::abs(x[1] - cplx{s3 * a + 0.5 * b, 0.0}) < 1e-13);
        // frozen from a 30-digit evaluation
        CHECK(std::abs(x[0].real() - (-0.571269597732)) < 1e-11);
        CHECK(std::abs(x[1].real() - 8.85785131025) < 1e-11);
    }
    SUBCASE("length mismatch") {
        const std::vector<cplx> four(4);
        CHECK_THROWS_AS(assemble_transmit(four, power, groups, basis), ValidationError);
    }
}

TEST_CASE("property: projection isolates the group superposition") {
    RandomStream rng(31);
    for (std::size_t t = 1; t <= 4; ++t) {
        std::vector<double> d;
        for (int i = 0; i < 7; ++i) d.push_back(0.4 + 0.6 * i);
        const auto topo = build_topology(d, 5.0, 3.0, t);
        const auto groups = assign_groups(topo);
        const auto power = allocate_power(topo, 40.0);
        const auto basis = make_basis(t);
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<cplx> sym;
            for (int i = 0; i < 7; ++i) sym.push_back(rng.complex_gaussian());
            const auto x = assemble_transmit(sym, power, groups, basis);
            for (std::size_t g = 0; g < t; ++g) {
                cplx expect{0.0, 0.0};
                for (std::size_t k : groups.members[g]) expect += std::sqrt(power.per_user[k]) * sym[k];
                const cplx got = (basis.vector(g).cast<cplx>().transpose() * x).value();
                CHECK(std::abs(got - expect) <= 1e-12 * (1.0 + std::abs(expect)));
            }
        }
    }
}

TEST_CASE("mean transmit energy equals the power budget") {
    const auto topo = build_topology({0.5, 1.5, 2.5, 3.5, 4.5}, 5.0, 3.0, 2);
    const auto groups = assign_groups(topo);
    const auto power = allocate_power(topo, 40.0);
    const auto basis = make_basis(2);
    RandomStream rng(11);
    constexpr int kBlocks = 200000;
    double energy = 0.0;
    std::vector<cplx> sym(5);
    for (int i = 0; i < kBlocks; ++i) {
        for (auto& s : sym) s = qpsk_modulate(rng.bit(), rng.bit());
        energy += assemble_transmit(sym, power, groups, basis).squaredNorm();
    }
    CHECK(std::abs(energy / kBlocks / 40.0 - 1.0) < 0.01);
}

} // TEST_SUITE
