#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "timnoma/analytics.hpp"
#include "timnoma/receiver.hpp"
#include "timnoma/topology.hpp"

namespace timnoma {

enum class Experiment { Ber, BerSingleUser, Rate, RateSingleUser, Ratio };

/// Fading coherence: one draw per frame, or a fresh draw for every T-slot block.
enum class Coherence { Frame, Block };

std::string_view to_string(Experiment e) noexcept;
std::string_view to_string(Coherence c) noexcept;

struct SimConfig {
    std::vector<double> distances_km{0.5, 1.5, 2.5, 3.5, 4.5};
    double cell_radius_km = 5.0;
    double path_loss_exponent = 3.0;
    std::size_t groups = 2;
    double total_power_w = 40.0;
    std::size_t frames = 500;
    std::size_t bits_per_frame = 6144;  // per user
    std::size_t realizations = 10000;   // fading draws per SNR point for rate experiments
    std::vector<double> snr_grid_db{0, 5, 10, 15, 20, 25, 30, 35, 40};
    std::uint64_t seed = 42;
    OrderMode decoding_order = OrderMode::Distance;
    TdmaBaseline tdma_baseline = TdmaBaseline::EqualTimeShare;
    Coherence coherence = Coherence::Frame;
    Experiment experiment = Experiment::Ber;
};

/// Collects every violated invariant; throws ConfigValidationError if any.
void validate(const SimConfig& config);

/// Parses the flat `key = value` format (see README). Unset keys keep the
/// defaults above. Throws ConfigParseError or ConfigValidationError.
SimConfig parse_config(std::string_view text);
SimConfig load_config(const std::filesystem::path& path);

/// "a:step:b" (inclusive), "a,b,c", or a single value.
std::vector<double> parse_snr_grid(std::string_view text);

struct ResultRow {
    double snr_db = 0.0;
    std::string entity;  // 1-based user number, "sum" or "total"
    std::string metric;
    double value = 0.0;
    std::uint64_t samples = 0;
    double stderr_ = 0.0;
};

struct ExperimentResult {
    std::vector<ResultRow> rows;
};

/// Worker threads to use: TIMNOMA_WORKERS if set and positive, else hardware concurrency.
std::size_t default_worker_count();

ExperimentResult run_ber_experiment(const SimConfig& config, std::size_t workers = 0);
ExperimentResult run_single_user_experiment(const SimConfig& config, std::size_t workers = 0);
ExperimentResult run_rate_experiment(const SimConfig& config, std::size_t workers = 0);

/// Dispatches on config.experiment.
ExperimentResult run_experiment(const SimConfig& config, std::size_t workers = 0);

void emit_csv(const ExperimentResult& result, std::ostream& out);
std::string to_csv(const ExperimentResult& result);
/// Throws std::runtime_error if the file cannot be written.
void emit_csv(const ExperimentResult& result, const std::filesystem::path& path);

/// Per-frame building blocks, exposed for tests and the energy audit.
namespace sim {

struct FrameCounts {
    std::vector<std::uint64_t> bit_errors;  // per user
    std::uint64_t bits_per_user = 0;
    double transmit_energy = 0.0;  // sum over blocks of |x|^2
    std::uint64_t blocks = 0;
};

struct Scenario {
    Topology topology;
    GroupAssignment groups;
    PowerAllocation power;
    PrecodingBasis basis;

    explicit Scenario(const SimConfig& config);
};

/// Simulates one frame. `active` selects a single transmitting user (others
/// get zero power); nullopt runs the full hybrid scheme.
FrameCounts simulate_frame(const Scenario& scenario, const SimConfig& config,
                           const NoiseModel& noise, std::uint64_t snr_index,
                           std::uint64_t frame_index,
                           std::optional<std::size_t> active = std::nullopt);

}  // namespace sim

} // namespace timnoma
