#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "timnoma/error.hpp"
#include "timnoma/harness.hpp"
#include "timnoma/precoding.hpp"

namespace timnoma {

std::string_view to_string(Experiment e) noexcept {
    switch (e) {
    case Experiment::Ber: return "ber";
    case Experiment::BerSingleUser: return "ber_single_user";
    case Experiment::Rate: return "rate";
    case Experiment::RateSingleUser: return "rate_single_user";
    case Experiment::Ratio: return "ratio";
    }
    return "unknown";
}

std::string_view to_string(Coherence c) noexcept {
    switch (c) {
    case Coherence::Frame: return "frame";
    case Coherence::Block: return "block";
    }
    return "unknown";
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::optional<double> to_double(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

std::optional<std::uint64_t> to_uint(std::string_view s) {
    s = trim(s);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

struct ParseFailure {
    std::string message;
};

using Setter = std::function<void(SimConfig&, std::string_view)>;

double need_double(std::string_view v) {
    if (auto d = to_double(v)) return *d;
    throw ParseFailure{"expected a number, got '" + std::string(v) + "'"};
}

std::uint64_t need_uint(std::string_view v) {
    if (auto u = to_uint(v)) return *u;
    throw ParseFailure{"expected a non-negative integer, got '" + std::string(v) + "'"};
}

std::vector<double> need_list(std::string_view v) {
    v = trim(v);
    if (!v.empty() && v.front() == '[' && v.back() == ']') v = v.substr(1, v.size() - 2);
    std::vector<double> out;
    if (trim(v).empty()) return out;
    for (auto item : split(v, ',')) out.push_back(need_double(item));
    return out;
}

struct KeySpec {
    std::string_view section;
    std::string_view key;
    Setter set;
};

const std::vector<KeySpec>& key_table() {
    static const std::vector<KeySpec> table{
        {"topology", "distances", [](SimConfig& c, std::string_view v) { c.distances_km = need_list(v); }},
        {"topology", "cell_radius", [](SimConfig& c, std::string_view v) { c.cell_radius_km = need_double(v); }},
        {"topology", "path_loss_exponent",
         [](SimConfig& c, std::string_view v) { c.path_loss_exponent = need_double(v); }},
        {"topology", "groups", [](SimConfig& c, std::string_view v) { c.groups = need_uint(v); }},
        {"power", "total", [](SimConfig& c, std::string_view v) { c.total_power_w = need_double(v); }},
        {"simulation", "experiment",
         [](SimConfig& c, std::string_view v) {
             const auto s = lower(trim(v));
             if (s == "ber") c.experiment = Experiment::Ber;
             else if (s == "ber_single_user") c.experiment = Experiment::BerSingleUser;
             else if (s == "rate") c.experiment = Experiment::Rate;
             else if (s == "rate_single_user") c.experiment = Experiment::RateSingleUser;
             else if (s == "ratio") c.experiment = Experiment::Ratio;
             else throw ParseFailure{"unknown experiment '" + s + "'"};
         }},
        {"simulation", "modulation",
         [](SimConfig&, std::string_view v) {
             if (lower(trim(v)) != "qpsk") throw ParseFailure{"only qpsk is supported"};
         }},
        {"simulation", "frames", [](SimConfig& c, std::string_view v) { c.frames = need_uint(v); }},
        {"simulation", "bits_per_frame",
         [](SimConfig& c, std::string_view v) { c.bits_per_frame = need_uint(v); }},
        {"simulation", "realizations",
         [](SimConfig& c, std::string_view v) { c.realizations = need_uint(v); }},
        {"simulation", "snr_grid",
         [](SimConfig& c, std::string_view v) {
             try {
                 c.snr_grid_db = parse_snr_grid(v);
             } catch (const std::invalid_argument& e) {
                 throw ParseFailure{e.what()};
             }
         }},
        {"simulation", "seed", [](SimConfig& c, std::string_view v) { c.seed = need_uint(v); }},
        {"simulation", "coherence",
         [](SimConfig& c, std::string_view v) {
             const auto s = lower(trim(v));
             if (s == "frame") c.coherence = Coherence::Frame;
             else if (s == "block") c.coherence = Coherence::Block;
             else throw ParseFailure{"coherence must be 'frame' or 'block'"};
         }},
        {"receiver", "decoding_order",
         [](SimConfig& c, std::string_view v) {
             const auto s = lower(trim(v));
             if (s == "distance") c.decoding_order = OrderMode::Distance;
             else if (s == "instantaneous") c.decoding_order = OrderMode::Instantaneous;
             else throw ParseFailure{"decoding_order must be 'distance' or 'instantaneous'"};
         }},
        {"baseline", "tdma",
         [](SimConfig& c, std::string_view v) {
             if (lower(trim(v)) != "time_share") throw ParseFailure{"tdma baseline must be 'time_share'"};
             c.tdma_baseline = TdmaBaseline::EqualTimeShare;
         }},
    };
    return table;
}

const KeySpec* find_key(std::string_view section, std::string_view key) {
    for (const auto& spec : key_table()) {
        if (spec.key == key && (section.empty() || spec.section == section)) return &spec;
    }
    return nullptr;
}

bool known_section(std::string_view s) {
    return std::any_of(key_table().begin(), key_table().end(),
                       [&](const KeySpec& k) { return k.section == s; });
}

} // namespace

std::vector<double> parse_snr_grid(std::string_view text) {
    text = trim(text);
    if (text.empty()) throw std::invalid_argument("SNR grid is empty");
    if (text.find(':') != std::string_view::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3) throw std::invalid_argument("SNR range must be start:step:stop");
        const auto a = to_double(parts[0]);
        const auto step = to_double(parts[1]);
        const auto b = to_double(parts[2]);
        if (!a || !step || !b) throw std::invalid_argument("SNR range has a non-numeric field");
        if (!(*step > 0.0)) throw std::invalid_argument("SNR range step must be positive");
        if (*b < *a) throw std::invalid_argument("SNR range stop is below start");
        const auto count = static_cast<std::size_t>(std::floor((*b - *a) / *step + 1e-9)) + 1;
        std::vector<double> out;
        out.reserve(count);
        for (std::size_t i = 0; i < count; ++i) out.push_back(*a + static_cast<double>(i) * *step);
        return out;
    }
    std::vector<double> out;
    for (auto item : split(text, ',')) {
        const auto v = to_double(item);
        if (!v) throw std::invalid_argument("SNR grid entry '" + std::string(item) + "' is not a number");
        out.push_back(*v);
    }
    return out;
}

void validate(const SimConfig& c) {
    std::vector<std::string> bad;
    try {
        const Topology topo(c.distances_km, c.cell_radius_km, c.path_loss_exponent, c.groups);
        (void)topo;
    } catch (const ValidationError& e) {
        bad.push_back(std::string("topology: ") + e.what());
    }
    if (!(c.total_power_w > 0.0) || !std::isfinite(c.total_power_w)) {
        bad.emplace_back("power.total: must be positive");
    }
    if (c.frames < 1) bad.emplace_back("simulation.frames: must be at least 1");
    if (c.realizations < 1) bad.emplace_back("simulation.realizations: must be at least 1");
    if (c.bits_per_frame == 0 || c.groups == 0 || c.bits_per_frame % (2 * c.groups) != 0) {
        bad.emplace_back("simulation.bits_per_frame: must be a positive multiple of 2*groups");
    }
    if (c.snr_grid_db.empty()) bad.emplace_back("simulation.snr_grid: must not be empty");
    for (double s : c.snr_grid_db) {
        if (!std::isfinite(s)) {
            bad.emplace_back("simulation.snr_grid: entries must be finite");
            break;
        }
    }
    if (!bad.empty()) throw ConfigValidationError(std::move(bad));
}

SimConfig parse_config(std::string_view text) {
    SimConfig config;
    std::string section;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigParseError(line_no, "", "unterminated section header");
            section = lower(trim(line.substr(1, line.size() - 2)));
            if (!known_section(section)) throw ConfigParseError(line_no, section, "unknown section");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigParseError(line_no, "", "expected key = value");
        std::string key = lower(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        std::string key_section = section;
        if (auto dot = key.find('.'); dot != std::string::npos) {
            if (!section.empty()) {
                throw ConfigParseError(line_no, key, "qualified key inside a section");
            }
            key_section = key.substr(0, dot);
            key = key.substr(dot + 1);
        }
        const KeySpec* spec = find_key(key_section, key);
        const std::string field = key_section.empty() ? key : key_section + "." + key;
        if (spec == nullptr) throw ConfigParseError(line_no, field, "unknown key");
        try {
            spec->set(config, value);
        } catch (const ParseFailure& f) {
            throw ConfigParseError(line_no, field, f.message);
        }
    }
    validate(config);
    return config;
}

SimConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace timnoma
