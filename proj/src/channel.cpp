#include "timnoma/channel.hpp"

#include <cmath>

#include "timnoma/error.hpp"

namespace timnoma {

FadingRealization FadingRealization::unit(std::size_t users) {
    return FadingRealization{std::vector<cplx>(users, cplx{1.0, 0.0})};
}

NoiseModel::NoiseModel(double variance) : variance_(variance) {
    if (!(variance > 0.0) || !std::isfinite(variance)) {
        throw ValidationError(ErrorCode::InvalidArgument, "noise variance must be positive");
    }
}

NoiseModel NoiseModel::from_transmit_snr_db(double total_power, double snr_db) {
    return NoiseModel(total_power / std::pow(10.0, snr_db / 10.0));
}

FadingRealization draw_fading(RandomStream& rng, std::size_t users) {
    FadingRealization out;
    out.coefficients.reserve(users);
    for (std::size_t k = 0; k < users; ++k) out.coefficients.push_back(rng.complex_gaussian(1.0));
    return out;
}

namespace {

void check_user(const Topology& topology, const FadingRealization& fading, std::size_t user) {
    if (user >= topology.user_count() || user >= fading.size()) {
        throw ValidationError(ErrorCode::UserIndexOutOfRange, "user index out of range");
    }
}

} // namespace

cplx effective_channel(const Topology& topology, const FadingRealization& fading,
                       std::size_t user) {
    check_user(topology, fading, user);
    return std::sqrt(path_loss(topology, user)) * fading.coefficients[user];
}

Eigen::MatrixXcd channel_matrix(const Topology& topology, const FadingRealization& fading,
                                std::size_t user) {
    const auto t = static_cast<Eigen::Index>(topology.group_count());
    return effective_channel(topology, fading, user) * Eigen::MatrixXcd::Identity(t, t);
}

void add_noise_inplace(RandomStream& rng, Eigen::VectorXcd& signal, const NoiseModel& noise) {
    for (Eigen::Index i = 0; i < signal.size(); ++i) {
        signal[i] += rng.complex_gaussian(noise.variance());
    }
}

Eigen::VectorXcd add_noise(RandomStream& rng, const Eigen::VectorXcd& signal,
                           const NoiseModel& noise) {
    Eigen::VectorXcd out = signal;
    add_noise_inplace(rng, out, noise);
    return out;
}

double effective_gain(const Topology& topology, const FadingRealization& fading,
                      std::size_t user, const NoiseModel& noise) {
    return std::norm(effective_channel(topology, fading, user)) / noise.variance();
}

} // namespace timnoma
