#include "timnoma/receiver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "timnoma/error.hpp"
#include "timnoma/modem.hpp"

namespace timnoma {

std::string_view to_string(OrderMode mode) noexcept {
    switch (mode) {
    case OrderMode::Distance: return "distance";
    case OrderMode::Instantaneous: return "instantaneous";
    }
    return "unknown";
}

std::complex<double> project(const Eigen::VectorXcd& received, const PrecodingBasis& basis,
                             std::size_t group) {
    if (static_cast<std::size_t>(received.size()) != basis.dimension()) {
        throw ValidationError(ErrorCode::DimensionMismatch,
                              "received vector length does not match the basis dimension");
    }
    if (group >= basis.dimension()) {
        throw ValidationError(ErrorCode::GroupIndexOutOfRange, "group index out of range");
    }
    const auto v = basis.vector(group);
    std::complex<double> acc{0.0, 0.0};
    for (Eigen::Index i = 0; i < received.size(); ++i) acc += v[i] * received[i];
    return acc;
}

std::vector<std::size_t> decoding_order(std::span<const double> gains) {
    std::vector<std::size_t> order(gains.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return gains[a] > gains[b]; });
    return order;
}

std::vector<std::size_t> distance_order(std::size_t users) {
    std::vector<std::size_t> order(users);
    std::iota(order.begin(), order.end(), std::size_t{0});
    return order;
}

SicPlan make_sic_plan(std::size_t user, const GroupAssignment& groups,
                      std::span<const std::size_t> order, std::span<const double> powers) {
    if (user >= groups.group_of.size()) {
        throw ValidationError(ErrorCode::UserIndexOutOfRange, "user index out of range");
    }
    if (order.size() != groups.group_of.size()) {
        throw ValidationError(ErrorCode::DimensionMismatch, "decoding order has the wrong length");
    }
    SicPlan plan;
    plan.user = user;
    plan.group = groups.group_of[user];

    auto active = [&](std::size_t j) { return powers.empty() || powers[j] > 0.0; };

    bool seen_self = false;
    std::vector<std::size_t> weaker;
    for (std::size_t j : order) {
        if (j == user) {
            seen_self = true;
            continue;
        }
        if (groups.group_of[j] != plan.group || !active(j)) continue;
        (seen_self ? weaker : plan.noise_set).push_back(j);
    }
    plan.cancel_sequence.assign(weaker.rbegin(), weaker.rend());
    return plan;
}

std::size_t ml_detect_index(std::complex<double> residual, std::complex<double> effective_channel,
                            double amplitude) {
    const auto& points = qpsk_constellation();
    const std::complex<double> scale = effective_channel * amplitude;
    std::size_t best = 0;
    double best_metric = std::norm(residual - scale * points[0]);
    for (std::size_t i = 1; i < points.size(); ++i) {
        const double metric = std::norm(residual - scale * points[i]);
        if (metric < best_metric) {
            best_metric = metric;
            best = i;
        }
    }
    return best;
}

std::complex<double> ml_detect(std::complex<double> residual,
                               std::complex<double> effective_channel, double amplitude) {
    if (!(amplitude > 0.0)) {
        throw ValidationError(ErrorCode::NonPositivePower, "detection amplitude must be positive");
    }
    return qpsk_constellation()[ml_detect_index(residual, effective_channel, amplitude)];
}

SicOutcome sic_decode(const ProjectedSignal& projected, const SicPlan& plan,
                      std::span<const double> powers,
                      std::span<const std::complex<double>> genie) {
    const auto& points = qpsk_constellation();
    SicOutcome out;
    out.residual = projected.value;
    out.intermediate.reserve(plan.cancel_sequence.size());
    for (std::size_t j : plan.cancel_sequence) {
        const double amplitude = std::sqrt(powers[j]);
        const std::complex<double> estimate =
            genie.empty() ? points[ml_detect_index(out.residual, projected.effective_channel, amplitude)]
                          : genie[j];
        out.residual -= projected.effective_channel * amplitude * estimate;
        out.intermediate.emplace_back(j, estimate);
    }
    out.symbol_index =
        ml_detect_index(out.residual, projected.effective_channel, std::sqrt(powers[plan.user]));
    out.symbol = points[out.symbol_index];
    return out;
}

} // namespace timnoma
