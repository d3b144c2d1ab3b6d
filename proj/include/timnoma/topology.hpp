#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace timnoma {

/// Cell geometry. Users are indexed 0..K-1 by increasing distance from the
/// base station (user 0 nearest, user K-1 at the cell edge).
class Topology {
public:
    /// Validates and builds a topology. Distances in km, strictly increasing,
    /// each in (0, cell_radius]. Throws ValidationError.
    Topology(std::vector<double> distances_km, double cell_radius_km,
             double path_loss_exponent, std::size_t group_count);

    std::size_t user_count() const noexcept { return distances_.size(); }
    std::size_t group_count() const noexcept { return group_count_; }
    double cell_radius() const noexcept { return cell_radius_; }
    double path_loss_exponent() const noexcept { return exponent_; }
    std::span<const double> distances() const noexcept { return distances_; }
    double distance(std::size_t user) const;

private:
    std::vector<double> distances_;
    double cell_radius_;
    double exponent_;
    std::size_t group_count_;
};

Topology build_topology(std::vector<double> distances_km, double cell_radius_km,
                        double path_loss_exponent, std::size_t group_count);

/// Linear path-loss gain 1 / d^n for one user.
double path_loss(const Topology& topology, std::size_t user);

/// Which group each user is in, and each group's members ordered by
/// increasing distance.
struct GroupAssignment {
    std::vector<std::size_t> group_of;
    std::vector<std::vector<std::size_t>> members;

    std::size_t group_count() const noexcept { return members.size(); }
};

/// Round-robin over the distance-sorted users: user r goes to group r mod T.
/// Consecutive users always land in different groups, and same-group users
/// are separated by T-1 users of the other groups.
GroupAssignment assign_groups(const Topology& topology);

struct PowerAllocation {
    std::vector<double> per_user;  // watts
    double total = 0.0;            // watts
    double amplitude_constant = 0.0;  // sqrt(total)
};

/// P_k = P_T d_k^2 / sum_j d_j^2. Far users get more power.
PowerAllocation allocate_power(const Topology& topology, double total_power);

/// Same allocation as a bare formula over arbitrary positive distances
/// (no ordering requirement).
std::vector<double> distance_square_shares(std::span<const double> distances_km,
                                           double total_power);

} // namespace timnoma
