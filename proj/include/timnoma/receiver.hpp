#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "timnoma/precoding.hpp"
#include "timnoma/topology.hpp"

namespace timnoma {

/// How the SIC decoding order is obtained.
enum class OrderMode {
    Distance,       // static order by distance (user index)
    Instantaneous,  // per block, by gamma_k |h_k|^2 / sigma^2
};

std::string_view to_string(OrderMode mode) noexcept;

/// Stage-1 output: v_i^T y together with the receiver's scalar channel.
struct ProjectedSignal {
    std::complex<double> value;
    std::complex<double> effective_channel;  // sqrt(gamma_k) h_k
};

/// v_i^T y. Throws ValidationError on a dimension mismatch.
std::complex<double> project(const Eigen::VectorXcd& received, const PrecodingBasis& basis,
                             std::size_t group);

inline ProjectedSignal project(const Eigen::VectorXcd& received, const PrecodingBasis& basis,
                               std::size_t group, std::complex<double> effective_channel) {
    return {project(received, basis, group), effective_channel};
}

/// Users sorted by decreasing gain; ties keep ascending user index.
std::vector<std::size_t> decoding_order(std::span<const double> gains);

/// Identity order 0..K-1 (distance order).
std::vector<std::size_t> distance_order(std::size_t users);

/// SIC schedule for one receiver within its group.
struct SicPlan {
    std::size_t user = 0;
    std::size_t group = 0;
    /// Weaker-gain (higher-power) same-group users, in the order they are
    /// detected and subtracted: weakest first.
    std::vector<std::size_t> cancel_sequence;
    /// Stronger-gain same-group users; left in the residual as noise.
    std::vector<std::size_t> noise_set;
};

/// Builds the plan for `user` from a global decoding order. Users with zero
/// power (switched off) are left out of both sets.
SicPlan make_sic_plan(std::size_t user, const GroupAssignment& groups,
                      std::span<const std::size_t> order, std::span<const double> powers = {});

/// Index (into qpsk_constellation()) minimising |r - g a s|^2; ties keep the
/// lower index.
std::size_t ml_detect_index(std::complex<double> residual, std::complex<double> effective_channel,
                            double amplitude);

std::complex<double> ml_detect(std::complex<double> residual,
                               std::complex<double> effective_channel, double amplitude);

struct SicOutcome {
    std::complex<double> symbol;  // x-hat for the receiver's own user
    std::size_t symbol_index = 0;
    /// (user, estimate) for each cancelled user, in cancellation order.
    std::vector<std::pair<std::size_t, std::complex<double>>> intermediate;
    /// Residual after all subtractions, the input to the final detection.
    std::complex<double> residual;
};

/// Stage 2: detect and subtract each user in plan.cancel_sequence, then
/// detect the receiver's own symbol. If `genie` is non-empty, the true
/// symbols genie[j] are subtracted instead of the detected ones.
SicOutcome sic_decode(const ProjectedSignal& projected, const SicPlan& plan,
                      std::span<const double> powers,
                      std::span<const std::complex<double>> genie = {});

} // namespace timnoma
