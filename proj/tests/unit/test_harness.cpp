#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "timnoma/error.hpp"
#include "timnoma/harness.hpp"

using namespace timnoma;

namespace {

std::size_t count_lines(const std::string& s) {
    std::size_t n = 0;
    for (char ch : s) n += ch == '\n';
    return n;
}

SimConfig small_config() {
    SimConfig c;
    c.frames = 6;
    c.bits_per_frame = 256;
    c.realizations = 200;
    c.snr_grid_db = {0.0, 10.0, 20.0};
    c.seed = 9;
    return c;
}

} // namespace

TEST_SUITE("harness") {

TEST_CASE("empty config gives the defaults") {
    const SimConfig c = parse_config("");
    CHECK(c.distances_km == std::vector<double>{0.5, 1.5, 2.5, 3.5, 4.5});
    CHECK(c.groups == 2);
    CHECK(c.total_power_w == 40.0);
    CHECK(c.frames == 500);
    CHECK(c.bits_per_frame == 6144);
    CHECK(c.seed == 42);
    CHECK(c.decoding_order == OrderMode::Distance);
    CHECK(c.coherence == Coherence::Frame);
    CHECK(c.experiment == Experiment::Ber);
}

TEST_CASE("sections, qualified keys and comments") {
    const SimConfig c = parse_config(
        "# cell\n"
        "[topology]\n"
        "distances = [0.5, 1.0, 2.0]\n"
        "groups = 3   # one user each\n"
        "\n"
        "[simulation]\n"
        "experiment = ratio\n"
        "snr_grid = 0:2:30\n"
        "coherence = block\n"
        "seed = 7\n"
        "[receiver]\n"
        "decoding_order = instantaneous\n");
    CHECK(c.distances_km == std::vector<double>{0.5, 1.0, 2.0});
    CHECK(c.groups == 3);
    CHECK(c.experiment == Experiment::Ratio);
    CHECK(c.snr_grid_db.size() == 16);
    CHECK(c.snr_grid_db.back() == 30.0);
    CHECK(c.coherence == Coherence::Block);
    CHECK(c.seed == 7);
    CHECK(c.decoding_order == OrderMode::Instantaneous);

    const SimConfig q = parse_config("power.total = 10\nsimulation.frames = 3\n");
    CHECK(q.total_power_w == 10.0);
    CHECK(q.frames == 3);
}

TEST_CASE("validation names the offending field") {
    try {
        parse_config("[simulation]\nframes = 0\n");
        FAIL("expected ConfigValidationError");
    } catch (const ConfigValidationError& e) {
        REQUIRE(e.violations().size() == 1);
        CHECK(e.violations()[0].find("frames") != std::string::npos);
    }
    try {
        parse_config("[simulation]\nframes = 0\nbits_per_frame = 6\n[power]\ntotal = -1\n");
        FAIL("expected ConfigValidationError");
    } catch (const ConfigValidationError& e) {
        CHECK(e.violations().size() == 3);
    }
    CHECK_THROWS_AS(parse_config("[topology]\ndistances = 3, 1\n"), ConfigValidationError);
}

TEST_CASE("parse errors carry line and field") {
    try {
        parse_config("[simulation]\nframes = 10\nframes = ten\n");
        FAIL("expected ConfigParseError");
    } catch (const ConfigParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.field() == "simulation.frames");
    }
    try {
        parse_config("\n[topology]\nwidth = 3\n");
        FAIL("expected ConfigParseError");
    } catch (const ConfigParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.field() == "topology.width");
    }
    CHECK_THROWS_AS(parse_config("[bogus]\n"), ConfigParseError);
    CHECK_THROWS_AS(parse_config("frames 3\n"), ConfigParseError);
    CHECK_THROWS_AS(parse_config("[simulation]\nmodulation = 16qam\n"), ConfigParseError);
    CHECK_THROWS_AS(load_config("/nonexistent/dir/none.cfg"), IoError);
}

TEST_CASE("snr grid forms") {
    CHECK(parse_snr_grid("0:2:30").size() == 16);
    CHECK(parse_snr_grid("0:5:40") == std::vector<double>{0, 5, 10, 15, 20, 25, 30, 35, 40});
    CHECK(parse_snr_grid("3, 7.5") == std::vector<double>{3.0, 7.5});
    CHECK(parse_snr_grid("12") == std::vector<double>{12.0});
    CHECK_THROWS_AS(parse_snr_grid("0:0:10"), std::invalid_argument);
    CHECK_THROWS_AS(parse_snr_grid("abc"), std::invalid_argument);
}

TEST_CASE("csv layout") {
    ExperimentResult empty;
    CHECK(to_csv(empty) == "snr_db,entity,metric,value,samples,stderr\n");

    ExperimentResult one;
    one.rows.push_back({10.0, "1", "ber", 0.125, 1024, 0.01});
    const std::string csv = to_csv(one);
    CHECK(count_lines(csv) == 2);
    CHECK(csv.substr(csv.find('\n') + 1) == "10,1,ber,0.125,1024,0.01\n");

    const auto dir = std::filesystem::temp_directory_path() / "timnoma_csv_test";
    std::filesystem::create_directories(dir);
    emit_csv(one, dir / "out.csv");
    CHECK(std::filesystem::file_size(dir / "out.csv") == csv.size());
    std::filesystem::remove_all(dir);
    CHECK_THROWS_AS(emit_csv(one, std::filesystem::path("/nonexistent/dir/out.csv")), IoError);
}

TEST_CASE("experiments are reproducible across worker counts") {
    SimConfig c = small_config();
    for (Experiment e : {Experiment::Ber, Experiment::BerSingleUser, Experiment::Rate,
                         Experiment::RateSingleUser, Experiment::Ratio}) {
        c.experiment = e;
        const std::string a = to_csv(run_experiment(c, 1));
        const std::string b = to_csv(run_experiment(c, 3));
        CHECK_MESSAGE(a == b, to_string(e));
        CHECK(a == to_csv(run_experiment(c, 1)));
        CHECK(count_lines(a) > 1);
    }
    c.experiment = Experiment::Ber;
    const std::string base = to_csv(run_experiment(c, 1));
    c.seed += 1;
    CHECK(to_csv(run_experiment(c, 1)) != base);
}

TEST_CASE("noise-free limit gives zero bit errors") {
    SimConfig c = small_config();
    c.snr_grid_db = {200.0};
    c.coherence = Coherence::Block;
    const auto result = run_ber_experiment(c, 1);
    REQUIRE(result.rows.size() == 6);
    for (const auto& row : result.rows) {
        CHECK(row.metric == "ber");
        CHECK(row.value == 0.0);
    }
    CHECK(result.rows.back().entity == "total");
    CHECK(result.rows.back().samples == 5u * 6u * 256u);
}

TEST_CASE("one user: single-user and hybrid passes make identical decisions") {
    SimConfig c = small_config();
    c.distances_km = {1.0};
    c.groups = 1;
    c.bits_per_frame = 512;
    c.snr_grid_db = {5.0};
    const sim::Scenario scenario(c);
    const auto noise = NoiseModel::from_transmit_snr_db(c.total_power_w, 5.0);
    for (std::uint64_t f = 0; f < 4; ++f) {
        const auto hybrid = sim::simulate_frame(scenario, c, noise, 0, f);
        const auto solo = sim::simulate_frame(scenario, c, noise, 0, f, 0);
        CHECK(hybrid.bit_errors == solo.bit_errors);
        CHECK(hybrid.bit_errors[0] > 0);
    }
}

TEST_CASE("frame energy audit tracks P_T per block") {
    SimConfig c = small_config();
    c.bits_per_frame = 4096;
    const sim::Scenario scenario(c);
    const auto noise = NoiseModel::from_transmit_snr_db(c.total_power_w, 10.0);
    double energy = 0.0;
    std::uint64_t blocks = 0;
    for (std::uint64_t f = 0; f < 8; ++f) {
        const auto counts = sim::simulate_frame(scenario, c, noise, 0, f);
        CHECK(counts.bits_per_user == 4096);
        CHECK(counts.blocks == 4096 / 2);
        energy += counts.transmit_energy;
        blocks += counts.blocks;
    }
    CHECK(energy / static_cast<double>(blocks) == doctest::Approx(40.0).epsilon(0.01));
}

TEST_CASE("worker count from the environment") {
    CHECK(default_worker_count() >= 1);
}

} // TEST_SUITE
