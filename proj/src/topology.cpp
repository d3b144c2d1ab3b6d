#include "timnoma/topology.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "timnoma/error.hpp"

namespace timnoma {

Topology::Topology(std::vector<double> distances_km, double cell_radius_km,
                   double path_loss_exponent, std::size_t group_count)
    : distances_(std::move(distances_km)),
      cell_radius_(cell_radius_km),
      exponent_(path_loss_exponent),
      group_count_(group_count) {
    if (distances_.empty()) {
        throw ValidationError(ErrorCode::EmptyDistances, "at least one user distance is required");
    }
    if (!(cell_radius_ > 0.0) || !std::isfinite(cell_radius_)) {
        throw ValidationError(ErrorCode::InvalidRadius, "cell radius must be a positive number");
    }
    if (!(exponent_ > 0.0) || !std::isfinite(exponent_)) {
        throw ValidationError(ErrorCode::InvalidPathLossExponent,
                              "path-loss exponent must be a positive number");
    }
    for (std::size_t k = 0; k < distances_.size(); ++k) {
        const double d = distances_[k];
        if (!(d > 0.0) || !std::isfinite(d)) {
            throw ValidationError(ErrorCode::NonPositiveDistance,
                                  "distance of user " + std::to_string(k + 1) + " must be positive");
        }
        if (d > cell_radius_) {
            throw ValidationError(ErrorCode::DistanceBeyondRadius,
                                  "user " + std::to_string(k + 1) + " lies outside the cell radius");
        }
        if (k > 0 && !(d > distances_[k - 1])) {
            throw ValidationError(ErrorCode::UnsortedDistances,
                                  "distances must be strictly increasing (user " +
                                      std::to_string(k + 1) + ")");
        }
    }
    if (group_count_ < 1 || group_count_ > distances_.size()) {
        throw ValidationError(ErrorCode::GroupCountOutOfRange,
                              "group count must lie in [1, " + std::to_string(distances_.size()) +
                                  "]");
    }
}

double Topology::distance(std::size_t user) const {
    if (user >= distances_.size()) {
        throw ValidationError(ErrorCode::UserIndexOutOfRange,
                              "user index " + std::to_string(user) + " out of range");
    }
    return distances_[user];
}

Topology build_topology(std::vector<double> distances_km, double cell_radius_km,
                        double path_loss_exponent, std::size_t group_count) {
    return Topology(std::move(distances_km), cell_radius_km, path_loss_exponent, group_count);
}

double path_loss(const Topology& topology, std::size_t user) {
    return 1.0 / std::pow(topology.distance(user), topology.path_loss_exponent());
}

GroupAssignment assign_groups(const Topology& topology) {
    const std::size_t groups = topology.group_count();
    GroupAssignment out;
    out.group_of.resize(topology.user_count());
    out.members.resize(groups);
    for (std::size_t k = 0; k < topology.user_count(); ++k) {
        out.group_of[k] = k % groups;
        out.members[k % groups].push_back(k);
    }
    return out;
}

std::vector<double> distance_square_shares(std::span<const double> distances_km,
                                           double total_power) {
    if (!(total_power > 0.0) || !std::isfinite(total_power)) {
        throw ValidationError(ErrorCode::NonPositivePower, "total power must be positive");
    }
    const double sum_sq = std::transform_reduce(distances_km.begin(), distances_km.end(), 0.0,
                                                std::plus<>{}, [](double d) { return d * d; });
    std::vector<double> shares;
    shares.reserve(distances_km.size());
    for (double d : distances_km) shares.push_back(total_power * d * d / sum_sq);
    return shares;
}

PowerAllocation allocate_power(const Topology& topology, double total_power) {
    PowerAllocation out;
    out.per_user = distance_square_shares(topology.distances(), total_power);
    out.total = total_power;
    out.amplitude_constant = std::sqrt(total_power);
    return out;
}

} // namespace timnoma
