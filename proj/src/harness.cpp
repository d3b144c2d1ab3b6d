#include "timnoma/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "timnoma/channel.hpp"
#include "timnoma/error.hpp"
#include "timnoma/modem.hpp"
#include "timnoma/precoding.hpp"
#include "timnoma/rng.hpp"

namespace timnoma {

namespace {

// Stream-path tags keep the fading used by the rate experiments apart from
// the BER frames.
constexpr std::uint64_t kRateStreamTag = 0x52415445ULL;

/// Runs fn(i) for i in [0, n) on `workers` threads. Each index is handled
/// exactly once; callers write results into per-index slots.
template <class Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn&& fn) {
    workers = std::max<std::size_t>(1, std::min(workers, n));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                    next.store(n);
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

std::size_t resolve_workers(std::size_t requested) {
    return requested == 0 ? default_worker_count() : requested;
}

std::string user_entity(std::size_t user) { return std::to_string(user + 1); }

double binomial_stderr(double p, std::uint64_t n) {
    return n == 0 ? 0.0 : std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

/// Running mean / variance in a fixed order.
struct Moments {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::uint64_t n = 0;

    void add(double x) {
        sum += x;
        sum_sq += x * x;
        ++n;
    }
    double mean() const { return n == 0 ? 0.0 : sum / static_cast<double>(n); }
    double variance() const {
        if (n < 2) return 0.0;
        const double m = mean();
        return std::max(0.0, (sum_sq - static_cast<double>(n) * m * m) / static_cast<double>(n - 1));
    }
    double stderr_() const { return n == 0 ? 0.0 : std::sqrt(variance() / static_cast<double>(n)); }
};

int entity_rank(const std::string& entity) {
    if (entity == "sum") return 1;
    if (entity == "total") return 1;
    return 0;
}

void sort_rows(ExperimentResult& result) {
    std::stable_sort(result.rows.begin(), result.rows.end(),
                     [](const ResultRow& a, const ResultRow& b) {
                         if (a.snr_db != b.snr_db) return a.snr_db < b.snr_db;
                         const int ra = entity_rank(a.entity);
                         const int rb = entity_rank(b.entity);
                         if (ra != rb) return ra < rb;
                         if (ra == 0) return std::stoul(a.entity) < std::stoul(b.entity);
                         return false;
                     });
}

/// BER rows for one SNR point from per-frame counts reduced in frame order.
void push_ber_rows(ExperimentResult& out, double snr_db, std::string_view metric,
                   std::span<const sim::FrameCounts> frames, std::size_t users,
                   bool with_total) {
    std::vector<std::uint64_t> errors(users, 0);
    std::uint64_t bits = 0;
    for (const auto& f : frames) {
        for (std::size_t k = 0; k < users; ++k) errors[k] += f.bit_errors[k];
        bits += f.bits_per_user;
    }
    std::uint64_t total_errors = 0;
    for (std::size_t k = 0; k < users; ++k) {
        const double p = bits == 0 ? 0.0 : static_cast<double>(errors[k]) / static_cast<double>(bits);
        out.rows.push_back({snr_db, user_entity(k), std::string(metric), p, bits, binomial_stderr(p, bits)});
        total_errors += errors[k];
    }
    if (with_total) {
        const std::uint64_t n = bits * users;
        const double p = n == 0 ? 0.0 : static_cast<double>(total_errors) / static_cast<double>(n);
        out.rows.push_back({snr_db, "total", std::string(metric), p, n, binomial_stderr(p, n)});
    }
}

} // namespace

std::size_t default_worker_count() {
    if (const char* env = std::getenv("TIMNOMA_WORKERS")) {
        std::size_t v = 0;
        const std::string_view s(env);
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec == std::errc{} && ptr == s.data() + s.size() && v > 0) return v;
    }
    const auto hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

namespace sim {

Scenario::Scenario(const SimConfig& config)
    : topology(config.distances_km, config.cell_radius_km, config.path_loss_exponent,
               config.groups),
      groups(assign_groups(topology)),
      power(allocate_power(topology, config.total_power_w)),
      basis(make_basis(config.groups)) {}

FrameCounts simulate_frame(const Scenario& scenario, const SimConfig& config,
                           const NoiseModel& noise, std::uint64_t snr_index,
                           std::uint64_t frame_index, std::optional<std::size_t> active) {
    const std::size_t users = scenario.topology.user_count();
    const std::size_t dim = scenario.basis.dimension();
    const std::size_t symbols = config.bits_per_frame / 2;

    std::vector<double> powers = scenario.power.per_user;
    if (active) {
        if (*active >= users) {
            throw ValidationError(ErrorCode::UserIndexOutOfRange, "active user out of range");
        }
        std::fill(powers.begin(), powers.end(), 0.0);
        powers[*active] = scenario.power.per_user[*active];
    }

    // Every random draw happens in the same sequence whether or not a user is
    // active, so single-user and hybrid runs see identical bits, fading and noise.
    RandomStream rng(config.seed, {snr_index, frame_index});
    std::vector<std::uint8_t> bits(users * config.bits_per_frame);
    for (auto& b : bits) b = rng.bit();

    FrameCounts counts;
    counts.bit_errors.assign(users, 0);
    counts.bits_per_user = config.bits_per_frame;

    FadingRealization fading;
    std::vector<std::complex<double>> eff(users);
    std::vector<SicPlan> plans(users);
    bool plans_ready = false;

    auto refresh_channel = [&] {
        fading = draw_fading(rng, users);
        for (std::size_t k = 0; k < users; ++k) {
            eff[k] = effective_channel(scenario.topology, fading, k);
        }
        if (config.decoding_order == OrderMode::Distance && plans_ready) return;
        std::vector<std::size_t> order;
        if (config.decoding_order == OrderMode::Distance) {
            order = distance_order(users);
        } else {
            std::vector<double> gains(users);
            for (std::size_t k = 0; k < users; ++k) {
                gains[k] = effective_gain(scenario.topology, fading, k, noise);
            }
            order = decoding_order(gains);
        }
        for (std::size_t k = 0; k < users; ++k) {
            plans[k] = make_sic_plan(k, scenario.groups, order, powers);
        }
        plans_ready = true;
    };

    std::vector<std::complex<double>> tx_symbols(users);
    Eigen::VectorXcd x(static_cast<Eigen::Index>(dim));
    Eigen::VectorXcd received(static_cast<Eigen::Index>(dim));
    for (std::size_t s = 0; s < symbols; ++s) {
        if (s == 0 || config.coherence == Coherence::Block) refresh_channel();

        for (std::size_t k = 0; k < users; ++k) {
            const std::size_t base = k * config.bits_per_frame + 2 * s;
            tx_symbols[k] = active && *active != k ? std::complex<double>{0.0, 0.0}
                                                   : qpsk_modulate(bits[base], bits[base + 1]);
        }
        x = assemble_transmit(tx_symbols, powers, scenario.groups, scenario.basis);
        counts.transmit_energy += x.squaredNorm();
        ++counts.blocks;

        for (std::size_t k = 0; k < users; ++k) {
            // H_k is sqrt(gamma_k) h_k times the identity, so H_k x is a scaling.
            received = eff[k] * x;
            add_noise_inplace(rng, received, noise);
            if (powers[k] <= 0.0) continue;

            const ProjectedSignal projected{
                project(received, scenario.basis, scenario.groups.group_of[k]), eff[k]};
            const SicOutcome decoded = sic_decode(projected, plans[k], powers);
            const std::size_t truth = qpsk_index(bits[k * config.bits_per_frame + 2 * s],
                                                 bits[k * config.bits_per_frame + 2 * s + 1]);
            const std::size_t diff = truth ^ decoded.symbol_index;
            counts.bit_errors[k] += ((diff >> 1U) & 1U) + (diff & 1U);
        }
    }
    return counts;
}

} // namespace sim

ExperimentResult run_ber_experiment(const SimConfig& config, std::size_t workers) {
    validate(config);
    workers = resolve_workers(workers);
    const sim::Scenario scenario(config);
    const std::size_t users = scenario.topology.user_count();

    ExperimentResult out;
    for (std::size_t si = 0; si < config.snr_grid_db.size(); ++si) {
        const double snr = config.snr_grid_db[si];
        const auto noise = NoiseModel::from_transmit_snr_db(config.total_power_w, snr);
        std::vector<sim::FrameCounts> frames(config.frames);
        parallel_for(config.frames, workers, [&](std::size_t f) {
            frames[f] = sim::simulate_frame(scenario, config, noise, si, f);
        });
        push_ber_rows(out, snr, "ber", frames, users, true);
    }
    sort_rows(out);
    return out;
}

namespace {

ExperimentResult run_single_user_ber(const SimConfig& config, std::size_t workers) {
    const sim::Scenario scenario(config);
    const std::size_t users = scenario.topology.user_count();

    ExperimentResult out;
    for (std::size_t si = 0; si < config.snr_grid_db.size(); ++si) {
        const double snr = config.snr_grid_db[si];
        const auto noise = NoiseModel::from_transmit_snr_db(config.total_power_w, snr);

        std::vector<sim::FrameCounts> hybrid(config.frames);
        parallel_for(config.frames, workers, [&](std::size_t f) {
            hybrid[f] = sim::simulate_frame(scenario, config, noise, si, f);
        });
        push_ber_rows(out, snr, "ber", hybrid, users, true);

        // One pass per active user; only that user's count is kept.
        std::vector<sim::FrameCounts> solo(config.frames);
        for (auto& f : solo) f.bit_errors.assign(users, 0);
        std::vector<sim::FrameCounts> scratch(config.frames);
        for (std::size_t u = 0; u < users; ++u) {
            parallel_for(config.frames, workers, [&](std::size_t f) {
                scratch[f] = sim::simulate_frame(scenario, config, noise, si, f, u);
            });
            for (std::size_t f = 0; f < config.frames; ++f) {
                solo[f].bit_errors[u] = scratch[f].bit_errors[u];
                solo[f].bits_per_user = scratch[f].bits_per_user;
            }
        }
        push_ber_rows(out, snr, "ber_single_user", solo, users, false);
    }
    sort_rows(out);
    return out;
}

struct RealizationRates {
    std::vector<double> hybrid;
    std::vector<double> single;
    double hybrid_sum = 0.0;
    double tdma_sum = 0.0;
};

ExperimentResult run_rates(const SimConfig& config, std::size_t workers) {
    const sim::Scenario scenario(config);
    const std::size_t users = scenario.topology.user_count();
    const auto exp = config.experiment;

    ExperimentResult out;
    std::vector<RealizationRates> per(config.realizations);
    for (std::size_t si = 0; si < config.snr_grid_db.size(); ++si) {
        const double snr = config.snr_grid_db[si];
        const auto noise = NoiseModel::from_transmit_snr_db(config.total_power_w, snr);

        // The same fading draws are reused at every SNR point.
        parallel_for(config.realizations, workers, [&](std::size_t r) {
            RandomStream rng(config.seed, {kRateStreamTag, r});
            const FadingRealization fading = draw_fading(rng, users);
            const RateContext ctx{scenario.topology, fading, scenario.power, scenario.groups,
                                  scenario.basis, noise, config.decoding_order};
            RealizationRates rr;
            const RateRecord hyb = hybrid_rates(ctx);
            rr.hybrid = hyb.per_user;
            rr.hybrid_sum = hyb.sum;
            if (exp == Experiment::RateSingleUser) rr.single = single_user_rates(ctx).per_user;
            if (exp == Experiment::Ratio) {
                rr.tdma_sum = tdma_sum_rate(scenario.topology, fading, noise, config.total_power_w,
                                            config.tdma_baseline);
            }
            per[r] = std::move(rr);
        });

        const auto n = static_cast<std::uint64_t>(config.realizations);
        if (exp == Experiment::Rate || exp == Experiment::RateSingleUser) {
            for (std::size_t k = 0; k < users; ++k) {
                Moments m;
                for (const auto& rr : per) m.add(rr.hybrid[k]);
                out.rows.push_back({snr, user_entity(k), "rate", m.mean(), n, m.stderr_()});
                if (exp == Experiment::RateSingleUser) {
                    Moments s;
                    for (const auto& rr : per) s.add(rr.single[k]);
                    out.rows.push_back({snr, user_entity(k), "rate_single_user", s.mean(), n, s.stderr_()});
                }
            }
            Moments sum;
            for (const auto& rr : per) sum.add(rr.hybrid_sum);
            out.rows.push_back({snr, "sum", "rate", sum.mean(), n, sum.stderr_()});
        } else {
            Moments h;
            Moments t;
            double cross = 0.0;
            for (const auto& rr : per) {
                h.add(rr.hybrid_sum);
                t.add(rr.tdma_sum);
                cross += rr.hybrid_sum * rr.tdma_sum;
            }
            const double mh = h.mean();
            const double mt = t.mean();
            const double nn = static_cast<double>(n);
            const double cov = n < 2 ? 0.0 : (cross - nn * mh * mt) / (nn - 1.0);
            const double ratio = rate_ratio(mh, mt);
            // Delta-method standard error of a ratio of means.
            const double var_ratio =
                (h.variance() / (mt * mt) - 2.0 * mh * cov / (mt * mt * mt) +
                 mh * mh * t.variance() / (mt * mt * mt * mt)) / nn;
            out.rows.push_back({snr, "sum", "hybrid_sum_rate", mh, n, h.stderr_()});
            out.rows.push_back({snr, "sum", "tdma_sum_rate", mt, n, t.stderr_()});
            out.rows.push_back({snr, "sum", "ratio", ratio, n, std::sqrt(std::max(0.0, var_ratio))});
        }
    }
    sort_rows(out);
    return out;
}

} // namespace

ExperimentResult run_single_user_experiment(const SimConfig& config, std::size_t workers) {
    validate(config);
    workers = resolve_workers(workers);
    if (config.experiment == Experiment::RateSingleUser) return run_rates(config, workers);
    if (config.experiment != Experiment::BerSingleUser) {
        throw ConfigValidationError({"simulation.experiment: single-user run needs "
                                     "ber_single_user or rate_single_user"});
    }
    return run_single_user_ber(config, workers);
}

ExperimentResult run_rate_experiment(const SimConfig& config, std::size_t workers) {
    validate(config);
    workers = resolve_workers(workers);
    if (config.experiment != Experiment::Rate && config.experiment != Experiment::Ratio) {
        throw ConfigValidationError({"simulation.experiment: rate run needs rate or ratio"});
    }
    return run_rates(config, workers);
}

ExperimentResult run_experiment(const SimConfig& config, std::size_t workers) {
    switch (config.experiment) {
    case Experiment::Ber: return run_ber_experiment(config, workers);
    case Experiment::BerSingleUser:
    case Experiment::RateSingleUser: return run_single_user_experiment(config, workers);
    case Experiment::Rate:
    case Experiment::Ratio: return run_rate_experiment(config, workers);
    }
    return {};
}

namespace {

void write_number(std::ostream& out, double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    out.write(buf, ptr - buf);
}

} // namespace

void emit_csv(const ExperimentResult& result, std::ostream& out) {
    out << "snr_db,entity,metric,value,samples,stderr\n";
    for (const auto& row : result.rows) {
        write_number(out, row.snr_db);
        out << ',' << row.entity << ',' << row.metric << ',';
        write_number(out, row.value);
        out << ',' << row.samples << ',';
        write_number(out, row.stderr_);
        out << '\n';
    }
}

std::string to_csv(const ExperimentResult& result) {
    std::ostringstream os;
    emit_csv(result, os);
    return os.str();
}

void emit_csv(const ExperimentResult& result, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    emit_csv(result, out);
    out.flush();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

} // namespace timnoma
