#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "timnoma/rng.hpp"
#include "timnoma/topology.hpp"

namespace timnoma {

using cplx = std::complex<double>;

/// One block-fading draw: h_k ~ CN(0,1) per user, constant over T slots.
struct FadingRealization {
    std::vector<cplx> coefficients;

    std::size_t size() const noexcept { return coefficients.size(); }
    /// Deterministic unit fading (h_k = 1 for all k), handy for closed-form checks.
    static FadingRealization unit(std::size_t users);
};

/// Receiver noise; variance is E|z|^2 per complex sample (half per real dimension).
class NoiseModel {
public:
    explicit NoiseModel(double variance);
    /// Noise level for a transmit SNR of total_power / variance in dB.
    static NoiseModel from_transmit_snr_db(double total_power, double snr_db);

    double variance() const noexcept { return variance_; }

private:
    double variance_;
};

FadingRealization draw_fading(RandomStream& rng, std::size_t users);

/// H_k = sqrt(gamma_k) (I_T kron h_k), i.e. a scaled identity.
Eigen::MatrixXcd channel_matrix(const Topology& topology, const FadingRealization& fading,
                                std::size_t user);

/// Scalar effective channel sqrt(gamma_k) h_k.
cplx effective_channel(const Topology& topology, const FadingRealization& fading,
                       std::size_t user);

/// Adds i.i.d. CN(0, sigma^2) to each entry.
Eigen::VectorXcd add_noise(RandomStream& rng, const Eigen::VectorXcd& signal,
                           const NoiseModel& noise);

/// In-place variant for the simulation loop.
void add_noise_inplace(RandomStream& rng, Eigen::VectorXcd& signal, const NoiseModel& noise);

/// gamma_k |h_k|^2 / sigma^2.
double effective_gain(const Topology& topology, const FadingRealization& fading,
                      std::size_t user, const NoiseModel& noise);

} // namespace timnoma
