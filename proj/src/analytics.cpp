#include "timnoma/analytics.hpp"

#include <cmath>
#include <numeric>

#include "timnoma/error.hpp"

namespace timnoma {

std::string_view to_string(Scheme scheme) noexcept {
    switch (scheme) {
    case Scheme::Hybrid: return "hybrid";
    case Scheme::SingleUser: return "single_user";
    case Scheme::Tdma: return "tdma";
    }
    return "unknown";
}

double projected_gain(const Topology& topology, const FadingRealization& fading,
                      const PrecodingBasis& basis, std::size_t user, std::size_t group) {
    const Eigen::VectorXcd v = basis.vector(group).cast<std::complex<double>>();
    const Eigen::MatrixXcd h = channel_matrix(topology, fading, user);
    return std::norm((v.transpose() * h * v).value());
}

double leakage_gain(const Topology& topology, const FadingRealization& fading,
                    const PrecodingBasis& basis, std::size_t user, std::size_t group) {
    const Eigen::VectorXcd v = basis.vector(group).cast<std::complex<double>>();
    return (channel_matrix(topology, fading, user) * v).squaredNorm();
}

namespace {

std::vector<std::size_t> order_for(const RateContext& ctx) {
    if (ctx.order == OrderMode::Distance) return distance_order(ctx.topology.user_count());
    std::vector<double> gains(ctx.topology.user_count());
    for (std::size_t k = 0; k < gains.size(); ++k) {
        gains[k] = effective_gain(ctx.topology, ctx.fading, k, ctx.noise);
    }
    return decoding_order(gains);
}

double rate_with_order(const RateContext& ctx, std::span<const std::size_t> order,
                       std::size_t user) {
    const SicPlan plan = make_sic_plan(user, ctx.groups, order, ctx.power.per_user);
    const double desired = ctx.power.per_user[user] *
                           projected_gain(ctx.topology, ctx.fading, ctx.basis, user, plan.group);
    const double leak = leakage_gain(ctx.topology, ctx.fading, ctx.basis, user, plan.group);
    double interference = 0.0;
    for (std::size_t j : plan.noise_set) interference += leak * ctx.power.per_user[j];
    const double t = static_cast<double>(ctx.topology.group_count());
    return std::log2(1.0 + desired / (interference + ctx.noise.variance())) / t;
}

} // namespace

double user_rate(const RateContext& ctx, std::size_t user) {
    if (user >= ctx.topology.user_count()) {
        throw ValidationError(ErrorCode::UserIndexOutOfRange, "user index out of range");
    }
    const auto order = order_for(ctx);
    return rate_with_order(ctx, order, user);
}

RateRecord hybrid_rates(const RateContext& ctx) {
    const auto order = order_for(ctx);
    RateRecord rec;
    rec.scheme = Scheme::Hybrid;
    rec.snr_db = 10.0 * std::log10(ctx.power.total / ctx.noise.variance());
    for (std::size_t k = 0; k < ctx.topology.user_count(); ++k) {
        rec.per_user.push_back(rate_with_order(ctx, order, k));
    }
    rec.sum = std::accumulate(rec.per_user.begin(), rec.per_user.end(), 0.0);
    return rec;
}

double single_user_rate(const RateContext& ctx, std::size_t user) {
    if (user >= ctx.topology.user_count()) {
        throw ValidationError(ErrorCode::UserIndexOutOfRange, "user index out of range");
    }
    const std::size_t group = ctx.groups.group_of[user];
    const double gain = leakage_gain(ctx.topology, ctx.fading, ctx.basis, user, group);
    const double t = static_cast<double>(ctx.topology.group_count());
    return std::log2(1.0 + ctx.power.total * gain / ctx.noise.variance()) / t;
}

RateRecord single_user_rates(const RateContext& ctx) {
    RateRecord rec;
    rec.scheme = Scheme::SingleUser;
    rec.snr_db = 10.0 * std::log10(ctx.power.total / ctx.noise.variance());
    for (std::size_t k = 0; k < ctx.topology.user_count(); ++k) {
        rec.per_user.push_back(single_user_rate(ctx, k));
    }
    rec.sum = std::accumulate(rec.per_user.begin(), rec.per_user.end(), 0.0);
    return rec;
}

double tdma_sum_rate(const Topology& topology, const FadingRealization& fading,
                     const NoiseModel& noise, double total_power, TdmaBaseline baseline) {
    if (total_power < 0.0) {
        throw ValidationError(ErrorCode::NonPositivePower, "total power must be non-negative");
    }
    switch (baseline) {
    case TdmaBaseline::EqualTimeShare: {
        const double t = static_cast<double>(topology.group_count());
        const std::size_t users = topology.user_count();
        double acc = 0.0;
        for (std::size_t k = 0; k < users; ++k) {
            acc += std::log2(1.0 + total_power * effective_gain(topology, fading, k, noise)) / t;
        }
        return acc / static_cast<double>(users);
    }
    }
    return 0.0;
}

Rational dof_total(std::size_t users, std::size_t groups) {
    if (users < 1 || groups < 1 || groups > users) {
        throw ValidationError(ErrorCode::InvalidArgument, "DoF requires K >= 1 and 1 <= T <= K");
    }
    const auto g = std::gcd(users, groups);
    return {static_cast<std::int64_t>(users / g), static_cast<std::int64_t>(groups / g)};
}

double rate_ratio(double hybrid_sum, double tdma_sum) {
    if (!(tdma_sum > 0.0)) {
        throw ValidationError(ErrorCode::InvalidArgument, "TDMA sum rate must be positive");
    }
    return hybrid_sum / tdma_sum;
}

} // namespace timnoma
