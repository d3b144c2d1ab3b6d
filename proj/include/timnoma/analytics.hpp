#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "timnoma/channel.hpp"
#include "timnoma/precoding.hpp"
#include "timnoma/receiver.hpp"
#include "timnoma/topology.hpp"

namespace timnoma {

enum class Scheme { Hybrid, SingleUser, Tdma };

std::string_view to_string(Scheme scheme) noexcept;

/// Rates in bits per slot for one SNR point.
struct RateRecord {
    std::vector<double> per_user;
    double sum = 0.0;
    double snr_db = 0.0;
    Scheme scheme = Scheme::Hybrid;
};

/// Everything the closed-form rate of one realization depends on.
struct RateContext {
    const Topology& topology;
    const FadingRealization& fading;
    const PowerAllocation& power;
    const GroupAssignment& groups;
    const PrecodingBasis& basis;
    const NoiseModel& noise;
    OrderMode order = OrderMode::Distance;
};

/// |v^T H_k v|^2, the desired-signal gain after projection.
double projected_gain(const Topology& topology, const FadingRealization& fading,
                      const PrecodingBasis& basis, std::size_t user, std::size_t group);

/// |H_k v|^2, the gain applied to same-group interference.
double leakage_gain(const Topology& topology, const FadingRealization& fading,
                    const PrecodingBasis& basis, std::size_t user, std::size_t group);

/// Hybrid-scheme rate of one user: (1/T) log2(1 + P_k |v^T H v|^2 /
/// (sum_{j in noise set} |H v|^2 P_j + sigma^2)).
double user_rate(const RateContext& ctx, std::size_t user);

/// All K hybrid rates.
RateRecord hybrid_rates(const RateContext& ctx);

/// Rate with only `user` transmitting at the full budget P_T = ctx.power.total:
/// (1/T) log2(1 + P_T |H v|^2 / sigma^2).
double single_user_rate(const RateContext& ctx, std::size_t user);

RateRecord single_user_rates(const RateContext& ctx);

enum class TdmaBaseline {
    /// (1/K) sum_k single_user_rate(k): equal time shares at full power.
    EqualTimeShare,
};

double tdma_sum_rate(const Topology& topology, const FadingRealization& fading,
                     const NoiseModel& noise, double total_power,
                     TdmaBaseline baseline = TdmaBaseline::EqualTimeShare);

/// Exact rational K/T, reduced.
struct Rational {
    std::int64_t numerator = 0;
    std::int64_t denominator = 1;

    double value() const noexcept {
        return static_cast<double>(numerator) / static_cast<double>(denominator);
    }
    friend bool operator==(const Rational&, const Rational&) = default;
};

Rational dof_total(std::size_t users, std::size_t groups);

/// hybrid / tdma; throws ValidationError when tdma_sum <= 0.
double rate_ratio(double hybrid_sum, double tdma_sum);

} // namespace timnoma
