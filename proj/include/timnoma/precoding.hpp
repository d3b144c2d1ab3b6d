#pragma once

#include <complex>
#include <cstddef>
#include <span>

#include <Eigen/Dense>

#include "timnoma/topology.hpp"

namespace timnoma {

/// T real orthonormal precoding vectors, one per group, stored as the
/// columns of a T x T matrix.
class PrecodingBasis {
public:
    explicit PrecodingBasis(Eigen::MatrixXd vectors);

    std::size_t dimension() const noexcept { return static_cast<std::size_t>(vectors_.rows()); }
    auto vector(std::size_t group) const { return vectors_.col(static_cast<Eigen::Index>(group)); }
    const Eigen::MatrixXd& matrix() const noexcept { return vectors_; }
    const Eigen::MatrixXcd& complex_matrix() const noexcept { return complex_; }

private:
    Eigen::MatrixXd vectors_;
    Eigen::MatrixXcd complex_;
};

/// Deterministic orthonormal basis. T-1 forward sweeps of a pi/3 Givens
/// rotation over adjacent coordinate pairs; for T=2 this yields
/// v1 = [1/2, sqrt(3)/2], v2 = [-sqrt(3)/2, 1/2]. Entries are zero-free for T <= 9.
PrecodingBasis make_basis(std::size_t dimension);

/// x = sum_k sqrt(P_k) v_{t(k)} x_k.
Eigen::VectorXcd assemble_transmit(std::span<const std::complex<double>> symbols,
                                   std::span<const double> powers,
                                   const GroupAssignment& groups,
                                   const PrecodingBasis& basis);

inline Eigen::VectorXcd assemble_transmit(std::span<const std::complex<double>> symbols,
                                          const PowerAllocation& power,
                                          const GroupAssignment& groups,
                                          const PrecodingBasis& basis) {
    return assemble_transmit(symbols, power.per_user, groups, basis);
}

} // namespace timnoma
