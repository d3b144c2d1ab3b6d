#include "timnoma/precoding.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "timnoma/error.hpp"

namespace timnoma {

PrecodingBasis::PrecodingBasis(Eigen::MatrixXd vectors) : vectors_(std::move(vectors)) {
    if (vectors_.rows() != vectors_.cols() || vectors_.rows() == 0) {
        throw ValidationError(ErrorCode::DimensionMismatch, "precoding basis must be square");
    }
    const Eigen::MatrixXd gram = vectors_.transpose() * vectors_;
    if (!gram.isIdentity(1e-12)) {
        throw ValidationError(ErrorCode::InvalidArgument, "precoding vectors must be orthonormal");
    }
    complex_ = vectors_.cast<std::complex<double>>();
}

PrecodingBasis make_basis(std::size_t dimension) {
    if (dimension < 1) {
        throw ValidationError(ErrorCode::InvalidArgument, "basis dimension must be at least 1");
    }
    const auto t = static_cast<Eigen::Index>(dimension);
    const double c = std::cos(std::numbers::pi / 3.0);
    const double s = std::sin(std::numbers::pi / 3.0);

    // Rows of q are the precoding vectors; each rotation mixes rows i, i+1.
    Eigen::MatrixXd q = Eigen::MatrixXd::Identity(t, t);
    for (Eigen::Index sweep = 0; sweep + 1 < t; ++sweep) {
        for (Eigen::Index i = 0; i + 1 < t; ++i) {
            const Eigen::RowVectorXd a = q.row(i);
            const Eigen::RowVectorXd b = q.row(i + 1);
            q.row(i) = c * a + s * b;
            q.row(i + 1) = -s * a + c * b;
        }
    }
    return PrecodingBasis(q.transpose());
}

Eigen::VectorXcd assemble_transmit(std::span<const std::complex<double>> symbols,
                                   std::span<const double> powers,
                                   const GroupAssignment& groups,
                                   const PrecodingBasis& basis) {
    if (symbols.size() != powers.size() || symbols.size() != groups.group_of.size()) {
        throw ValidationError(ErrorCode::DimensionMismatch,
                              "symbols, powers and group assignment disagree on user count");
    }
    if (groups.group_count() != basis.dimension()) {
        throw ValidationError(ErrorCode::DimensionMismatch,
                              "group count does not match the basis dimension");
    }
    // Per-group superposition first, then one pass over the basis.
    Eigen::VectorXcd per_group = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.dimension()));
    for (std::size_t k = 0; k < symbols.size(); ++k) {
        per_group[static_cast<Eigen::Index>(groups.group_of[k])] += std::sqrt(powers[k]) * symbols[k];
    }
    return basis.complex_matrix() * per_group;
}

} // namespace timnoma
