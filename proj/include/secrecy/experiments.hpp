#ifndef SECRECY_EXPERIMENTS_HPP
#define SECRECY_EXPERIMENTS_HPP

// Commands that turn a scenario into report records.
//
//   rate               per-link secrecy rate at the budget as transmit power (default 1)
//   allocate           water-filling over the gaussian links
//   allocate-fading    water level of each fading link for an average power budget
//   ergodic            ergodic secrecy rate of the calibrated policy, with a
//                      constant-power baseline in the metrics
//   pair               classification and greedy cooperative pairing
//   discrete-capacity  grid-search secrecy capacity of each discrete link
//   pick-prob          feasible helper sets and the helper-contention probability
//   fig4               `pair` on the three-qualified/six-disqualified reference
//                      bank, plus efficiency curves (fig4_curves)
//
// Randomised commands draw channel i from sub-stream i of the seed.

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "channel.hpp"
#include "cooperation.hpp"
#include "discrete.hpp"
#include "power_alloc.hpp"
#include "report.hpp"
#include "rng.hpp"
#include "scenario.hpp"

namespace secrecy {

inline constexpr std::string_view library_version = "0.1.0";
inline constexpr std::uint64_t default_samples = 100000;

enum class Command { rate, allocate, allocate_fading, ergodic, pair, discrete_capacity, pick_prob, fig4 };

/// A required option is missing or a value is out of range.
class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

inline std::optional<Command> parse_command(std::string_view name) {
    if (name == "rate") return Command::rate;
    if (name == "allocate") return Command::allocate;
    if (name == "allocate-fading") return Command::allocate_fading;
    if (name == "ergodic") return Command::ergodic;
    if (name == "pair") return Command::pair;
    if (name == "discrete-capacity") return Command::discrete_capacity;
    if (name == "pick-prob") return Command::pick_prob;
    if (name == "fig4") return Command::fig4;
    return std::nullopt;
}

inline std::string_view command_name(Command c) {
    switch (c) {
        case Command::rate: return "rate";
        case Command::allocate: return "allocate";
        case Command::allocate_fading: return "allocate-fading";
        case Command::ergodic: return "ergodic";
        case Command::pair: return "pair";
        case Command::discrete_capacity: return "discrete-capacity";
        case Command::pick_prob: return "pick-prob";
        case Command::fig4: return "fig4";
    }
    return "";
}

struct RunOptions {
    std::optional<double> budget;
    std::optional<std::uint64_t> samples;
    double grid_step = 0.01;
    std::uint64_t seed = 0;
};

/// Three qualified links facing weak, medium and strong eavesdroppers, and six
/// disqualified links that the greedy strategy turns into three jamming pairs
/// with weak, medium and strong helpers.
inline constexpr std::string_view fig4_scenario_text = R"({
  "schema_version": 1,
  "name": "three qualified and six disqualified fading links",
  "seed": 0,
  "channels": [
    {"kind": "fading", "id": 1, "a": 10, "b": 1,   "sigma_m_sq": 1, "sigma_w_sq": 1},
    {"kind": "fading", "id": 2, "a": 10, "b": 6,   "sigma_m_sq": 1, "sigma_w_sq": 2},
    {"kind": "fading", "id": 3, "a": 10, "b": 6,   "sigma_m_sq": 1, "sigma_w_sq": 1},
    {"kind": "fading", "id": 4, "a": 1,  "b": 1.2, "sigma_m_sq": 1, "sigma_w_sq": 1},
    {"kind": "fading", "id": 5, "a": 3,  "b": 2,   "sigma_m_sq": 2, "sigma_w_sq": 1},
    {"kind": "fading", "id": 6, "a": 2,  "b": 6,   "sigma_m_sq": 1, "sigma_w_sq": 2},
    {"kind": "fading", "id": 7, "a": 4,  "b": 5,   "sigma_m_sq": 1, "sigma_w_sq": 1},
    {"kind": "fading", "id": 8, "a": 16, "b": 10,  "sigma_m_sq": 2, "sigma_w_sq": 1},
    {"kind": "fading", "id": 9, "a": 16, "b": 40,  "sigma_m_sq": 1, "sigma_w_sq": 2}
  ]
}
)";

inline Scenario fig4_scenario() { return parse_scenario(fig4_scenario_text, "fig4.scenario"); }

namespace detail {

inline ReportRecord base_record(std::string_view experiment, std::int64_t id, const RunOptions& opt) {
    ReportRecord r;
    r.experiment = std::string(experiment);
    r.channel_id = id;
    r.seed = opt.seed;
    r.metadata["version"] = std::string(library_version);
    return r;
}

inline double require_budget(const Scenario& sc, const RunOptions& opt, std::string_view cmd) {
    const auto budget = opt.budget ? opt.budget : sc.budget;
    if (!budget) throw UsageError(std::string(cmd) + " requires a power budget (--budget or scenario \"budget\")");
    if (!std::isfinite(*budget) || !(*budget > 0.0)) throw UsageError("budget must be positive");
    return *budget;
}

inline std::uint64_t resolve_samples(const Scenario& sc, const RunOptions& opt) {
    const auto n = opt.samples ? *opt.samples : sc.samples.value_or(default_samples);
    if (n == 0) throw UsageError("samples must be positive");
    return n;
}

[[noreturn]] inline void wrong_kind(std::size_t index, const TaggedChannel& tc, std::string_view cmd) {
    throw ScenarioValidationError("/channels/" + std::to_string(index),
                                  std::string(cmd) + " does not accept " + channel_kind(tc.channel) + " channels");
}

/// Agent view of every agent or fading channel in the scenario.
inline std::vector<AgentChannel> agent_bank(const Scenario& sc, std::string_view cmd) {
    std::vector<AgentChannel> bank;
    for (std::size_t i = 0; i < sc.channels.size(); ++i) {
        const auto& tc = sc.channels[i];
        if (const auto* a = tc.get_if<AgentChannel>())
            bank.push_back(*a);
        else if (const auto* f = tc.get_if<FadingWiretapChannel>())
            bank.push_back(to_agent_channel(*f, tc.id));
        else
            wrong_kind(i, tc, cmd);
    }
    return bank;
}

inline std::vector<ReportRecord> run_rate(const Scenario& sc, const RunOptions& opt) {
    const double power = opt.budget ? *opt.budget : sc.budget.value_or(1.0);
    if (!std::isfinite(power) || power < 0.0) throw UsageError("budget must be non-negative");
    std::vector<ReportRecord> out;
    for (const auto& tc : sc.channels) {
        auto r = base_record("rate", tc.id, opt);
        if (const auto* g = tc.get_if<GaussianWiretapChannel>()) {
            r.main_snr = power / g->sigma_m_sq();
            r.eaves_snr = power / g->sigma_w_sq();
            r.power = power;
            r.rate_bits = gaussian_secrecy_rate(power, *g);
        } else if (const auto* f = tc.get_if<FadingWiretapChannel>()) {
            r.main_snr = f->main_snr();
            r.eaves_snr = f->eaves_snr();
            r.power = power;
            r.rate_bits = instantaneous_fading_secrecy_rate(power, ChannelState(f->main_snr(), f->eaves_snr()));
        } else if (const auto* a = tc.get_if<AgentChannel>()) {
            r.main_snr = a->main_snr;
            r.eaves_snr = a->eaves_snr;
            r.rate_bits = std::max(0.0, std::log2(1.0 + a->main_snr) - std::log2(1.0 + a->eaves_snr));
            if (!(a->main_snr < a->eaves_snr)) r.efficiency = efficiency_qualified(*a);
        } else {
            const auto& d = std::get<DiscreteWiretapChannel>(tc.channel);
            r.rate_bits = secrecy_rate_discrete(d, DiscretePmf::uniform(d.input_size()));
        }
        out.push_back(std::move(r));
    }
    return out;
}

inline std::vector<ReportRecord> run_allocate(const Scenario& sc, const RunOptions& opt) {
    const double budget = require_budget(sc, opt, "allocate");
    std::vector<GaussianWiretapChannel> chs;
    for (std::size_t i = 0; i < sc.channels.size(); ++i) {
        const auto* g = sc.channels[i].get_if<GaussianWiretapChannel>();
        if (!g) wrong_kind(i, sc.channels[i], "allocate");
        chs.push_back(*g);
    }
    const auto alloc = awgn_waterfill(chs, budget);
    std::vector<ReportRecord> out;
    for (std::size_t i = 0; i < chs.size(); ++i) {
        auto r = base_record("allocate", sc.channels[i].id, opt);
        r.power = alloc.powers[i];
        r.rate_bits = gaussian_secrecy_rate(alloc.powers[i], chs[i]);
        r.metrics = {{"lambda", alloc.lambda},
                     {"sum_rate", alloc.sum_rate},
                     {"budget", budget},
                     {"sigma_m_sq", chs[i].sigma_m_sq()},
                     {"sigma_w_sq", chs[i].sigma_w_sq()}};
        out.push_back(std::move(r));
    }
    return out;
}

inline std::vector<ReportRecord> run_fading(const Scenario& sc, const RunOptions& opt, bool with_rate) {
    const std::string_view cmd = with_rate ? "ergodic" : "allocate-fading";
    const double budget = require_budget(sc, opt, cmd);
    const auto samples = resolve_samples(sc, opt);
    std::vector<ReportRecord> out;
    for (std::size_t i = 0; i < sc.channels.size(); ++i) {
        const auto& tc = sc.channels[i];
        const auto* f = tc.get_if<FadingWiretapChannel>();
        if (!f) wrong_kind(i, tc, cmd);
        const std::uint64_t channel_seed = stream_seed(opt.seed, i);
        const std::uint64_t calibration_seed = stream_seed(channel_seed, 0);
        const auto policy = calibrate_fading_lambda(*f, budget, samples, calibration_seed);

        auto r = base_record(cmd, tc.id, opt);
        r.main_snr = f->main_snr();
        r.eaves_snr = f->eaves_snr();
        r.power = mean_fading_power(policy, samples, calibration_seed);
        r.metrics = {{"lambda", policy.lambda},
                     {"budget", budget},
                     {"samples", static_cast<double>(samples)},
                     {"zero_secrecy", policy.zero_secrecy ? 1.0 : 0.0}};
        if (with_rate) {
            const std::uint64_t eval_seed = stream_seed(channel_seed, 1);
            const auto est = ergodic_secrecy_capacity(*f, policy, samples, eval_seed);
            const auto base = ergodic_secrecy_capacity(*f, constant_power_baseline(*f, budget), samples, eval_seed);
            r.rate_bits = est.estimate;
            r.metrics["std_error"] = est.std_error;
            r.metrics["baseline_rate"] = base.estimate;
            r.metrics["baseline_std_error"] = base.std_error;
        }
        out.push_back(std::move(r));
    }
    return out;
}

inline std::vector<ReportRecord> run_pair(const Scenario& sc, const RunOptions& opt, std::string_view experiment) {
    const auto bank = agent_bank(sc, experiment);
    const auto cls = classify(bank);
    const auto plan = greedy_pairing(cls.disqualified);
    const std::string channel_exp = std::string(experiment);
    const std::string pair_exp = channel_exp + ".pair";

    auto partner_of = [&](std::int64_t id) -> std::optional<std::int64_t> {
        for (const auto& p : plan.pairs) {
            if (p.helped == id) return p.helper;
            if (p.helper == id) return p.helped;
        }
        return std::nullopt;
    };

    std::vector<ReportRecord> out;
    for (const auto& ch : bank) {
        auto r = base_record(channel_exp, ch.id, opt);
        r.main_snr = ch.main_snr;
        r.eaves_snr = ch.eaves_snr;
        r.rate_bits = std::max(0.0, std::log2(1.0 + ch.main_snr) - std::log2(1.0 + ch.eaves_snr));
        r.pair_with = partner_of(ch.id);
        r.metrics["qualified"] = ch.qualified() ? 1.0 : 0.0;
        if (ch.qualified()) r.efficiency = efficiency_qualified(ch);
        out.push_back(std::move(r));
    }
    for (const auto& p : plan.pairs) {
        const auto& helped = *std::find_if(bank.begin(), bank.end(), [&](const auto& c) { return c.id == p.helped; });
        const auto& helper = *std::find_if(bank.begin(), bank.end(), [&](const auto& c) { return c.id == p.helper; });
        auto r = base_record(pair_exp, p.helped, opt);
        r.main_snr = helped.main_snr;
        r.eaves_snr = helped.eaves_snr;
        r.rate_bits = std::log2(1.0 + helped.main_snr);
        r.pair_with = p.helper;
        r.efficiency = p.efficiency;
        r.metrics["helper_snr"] = helper.main_snr;
        out.push_back(std::move(r));
    }
    return out;
}

inline std::vector<ReportRecord> run_discrete(const Scenario& sc, const RunOptions& opt) {
    std::vector<ReportRecord> out;
    for (std::size_t i = 0; i < sc.channels.size(); ++i) {
        const auto& tc = sc.channels[i];
        const auto* d = tc.get_if<DiscreteWiretapChannel>();
        if (!d) wrong_kind(i, tc, "discrete-capacity");
        const auto best = max_secrecy_rate_grid(*d, opt.grid_step);
        auto r = base_record("discrete-capacity", tc.id, opt);
        r.rate_bits = best.rate;
        for (std::size_t x = 0; x < best.argmax.size(); ++x) r.metrics["argmax_p" + std::to_string(x)] = best.argmax[x];
        r.metrics["grid_step"] = opt.grid_step;
        r.metrics["uniform_input_rate"] = secrecy_rate_discrete(*d, DiscretePmf::uniform(d->input_size()));
        out.push_back(std::move(r));
    }
    return out;
}

inline std::vector<ReportRecord> run_pick_prob(const Scenario& sc, const RunOptions& opt) {
    const auto bank = agent_bank(sc, "pick-prob");
    const auto cls = classify(bank);
    std::vector<FeasibleSet> sets;
    for (const auto& ch : cls.disqualified) sets.push_back(feasible_set(ch.id, cls.disqualified));

    std::vector<ReportRecord> out;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        auto r = base_record("pick-prob", cls.disqualified[i].id, opt);
        r.main_snr = cls.disqualified[i].main_snr;
        r.eaves_snr = cls.disqualified[i].eaves_snr;
        r.metrics["feasible_set_size"] = static_cast<double>(sets[i].size());
        out.push_back(std::move(r));
    }

    ReportRecord summary;
    summary.experiment = "pick-prob.summary";
    summary.seed = opt.seed;
    summary.metadata["version"] = std::string(library_version);
    if (const auto x = critical_agent(sets)) {
        std::vector<std::size_t> sizes;
        for (std::size_t j = 0; j < *x; ++j) sizes.push_back(sets[j].size());
        const auto trials = resolve_samples(sc, opt);
        const std::int64_t contested = sets[*x].members.front();
        summary.channel_id = cls.disqualified[*x].id;
        summary.pair_with = contested;
        summary.metrics["pr_formula"] = pr_picking_k(sizes);
        summary.metrics["pr_simulated"] = simulate_random_picking(cls.disqualified, *x, contested, trials, opt.seed);
        summary.metrics["trials"] = static_cast<double>(trials);
    } else {
        summary.metrics["pr_formula"] = 0.0;
    }
    out.push_back(std::move(summary));
    return out;
}

}  // namespace detail

/// Runs `cmd` on the scenario. Output is a pure function of (cmd, scenario, options).
inline std::vector<ReportRecord> run(Command cmd, const Scenario& sc, const RunOptions& opt) {
    if (!(opt.grid_step > 0.0)) throw UsageError("grid step must be positive");
    switch (cmd) {
        case Command::rate: return detail::run_rate(sc, opt);
        case Command::allocate: return detail::run_allocate(sc, opt);
        case Command::allocate_fading: return detail::run_fading(sc, opt, false);
        case Command::ergodic: return detail::run_fading(sc, opt, true);
        case Command::pair: return detail::run_pair(sc, opt, "pair");
        case Command::discrete_capacity: return detail::run_discrete(sc, opt);
        case Command::pick_prob: return detail::run_pick_prob(sc, opt);
        case Command::fig4: return detail::run_pair(sc, opt, "fig4");
    }
    throw UsageError("unknown command");
}

/// One sample of a normalized efficiency curve.
struct CurvePoint {
    std::string series;
    double snr_db;
    double efficiency;
};

/// Efficiency against main-link SNR (dB, -10..30 in 0.5 dB steps):
///  - "qualified:<id>": each qualified link with its eavesdropper SNR held fixed,
///    zero where the sweep falls below that SNR;
///  - "pair:<helped>-<helper>": each greedy pair with the helper's SNR held fixed,
///    over helped SNRs below the helper's.
inline std::vector<CurvePoint> fig4_curves(const Scenario& sc) {
    const auto bank = detail::agent_bank(sc, "fig4");
    const auto cls = classify(bank);
    const auto plan = greedy_pairing(cls.disqualified);
    std::vector<CurvePoint> out;
    for (const auto& q : cls.qualified) {
        const std::string name = "qualified:" + std::to_string(q.id);
        for (int step = -20; step <= 60; ++step) {
            const double db = 0.5 * step;
            const double snr = std::pow(10.0, db / 10.0);
            const double eff = snr > q.eaves_snr ? efficiency_qualified(AgentChannel(q.id, snr, q.eaves_snr)) : 0.0;
            out.push_back({name, db, eff});
        }
    }
    for (const auto& p : plan.pairs) {
        const auto helper = *std::find_if(bank.begin(), bank.end(), [&](const auto& c) { return c.id == p.helper; });
        const std::string name = "pair:" + std::to_string(p.helped) + "-" + std::to_string(p.helper);
        for (int step = -20; step <= 60; ++step) {
            const double db = 0.5 * step;
            const double snr = std::pow(10.0, db / 10.0);
            if (!(snr < helper.main_snr)) break;
            out.push_back({name, db, pair_efficiency_value(snr, helper.main_snr)});
        }
    }
    return out;
}

inline std::string render_curves_csv(const std::vector<CurvePoint>& points) {
    std::string out = "series,snr_db,efficiency\n";
    for (const auto& p : points) out += p.series + "," + format_number(p.snr_db) + "," + format_number(p.efficiency) + "\n";
    return out;
}

}  // namespace secrecy

#endif
