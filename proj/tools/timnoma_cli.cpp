// Command-line front end: runs one experiment and writes CSV.
//
//   timnoma ber|rate|ratio|single-user [--config FILE] [--seed N] [--snr GRID]
//           [--frames N] [--out FILE]
//
// Exit codes: 0 success, 1 configuration/validation error, 2 I/O error.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "timnoma/error.hpp"
#include "timnoma/harness.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitIo = 2;

struct Options {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> snr;
    std::optional<std::size_t> frames;
    std::optional<std::size_t> realizations;
    std::string out;
    bool single_user_rate = false;
};

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--config,-c", o.config_path, "Scenario config file (key = value)");
    cmd->add_option("--seed", o.seed, "Master random seed");
    cmd->add_option("--snr", o.snr, "SNR grid in dB: start:step:stop or a,b,c");
    cmd->add_option("--frames", o.frames, "Frames per SNR point (BER experiments)");
    cmd->add_option("--realizations", o.realizations, "Fading draws per SNR point (rate experiments)");
    cmd->add_option("--out,-o", o.out, "Output CSV path (default: stdout)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hybrid TIM-NOMA downlink simulator"};
    app.require_subcommand(1);
    Options opts;

    auto* ber = app.add_subcommand("ber", "Per-user and total BER of the hybrid scheme");
    auto* rate = app.add_subcommand("rate", "Fading-averaged per-user and sum rates");
    auto* ratio = app.add_subcommand("ratio", "Hybrid over TDMA sum-rate ratio");
    auto* single = app.add_subcommand("single-user", "Hybrid vs. single-active-user comparison");
    for (auto* cmd : {ber, rate, ratio, single}) add_common(cmd, opts);
    single->add_flag("--rate", opts.single_user_rate, "Compare rates instead of BER");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        timnoma::SimConfig config =
            opts.config_path.empty() ? timnoma::SimConfig{} : timnoma::load_config(opts.config_path);
        if (ber->parsed()) config.experiment = timnoma::Experiment::Ber;
        if (rate->parsed()) config.experiment = timnoma::Experiment::Rate;
        if (ratio->parsed()) config.experiment = timnoma::Experiment::Ratio;
        if (single->parsed()) {
            config.experiment = opts.single_user_rate ? timnoma::Experiment::RateSingleUser
                                                      : timnoma::Experiment::BerSingleUser;
        }
        if (opts.seed) config.seed = *opts.seed;
        if (opts.snr) config.snr_grid_db = timnoma::parse_snr_grid(*opts.snr);
        if (opts.frames) config.frames = *opts.frames;
        if (opts.realizations) config.realizations = *opts.realizations;
        timnoma::validate(config);

        const auto result = timnoma::run_experiment(config);
        if (opts.out.empty()) {
            timnoma::emit_csv(result, std::cout);
            std::cout.flush();
            if (!std::cout) throw timnoma::IoError("failed writing to standard output");
        } else {
            timnoma::emit_csv(result, opts.out);
        }
    } catch (const timnoma::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const timnoma::ConfigParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const timnoma::ConfigValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return 0;
}
