#ifndef SECRECY_COOPERATION_HPP
#define SECRECY_COOPERATION_HPP

// Cooperative jamming between agents.
//
// An agent whose eavesdropper hears it at least as well as the receiver does
// (A <= E) cannot talk secretly on its own. Another such agent h can jam that
// eavesdropper if its own link is stronger than the eavesdropper: A_h > E_i > A_i.
// The helper spends its slot jamming, so each agent takes part in at most one
// pair, and only disqualified agents act as helpers.
//
// Agents are identified by AgentChannel::id. Disqualified lists are ordered by
// main SNR ascending with ties broken by id; greedy_pairing expects that order.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "channel.hpp"
#include "errors.hpp"
#include "rng.hpp"

namespace secrecy {

struct Classification {
    std::vector<AgentChannel> qualified;     ///< input order
    std::vector<AgentChannel> disqualified;  ///< ascending main SNR, then id
};

struct FeasibleSet {
    std::int64_t agent_id;
    std::vector<std::int64_t> members;  ///< in the order of the disqualified list

    std::size_t size() const noexcept { return members.size(); }
};

struct PairingPlan {
    struct Pair {
        std::int64_t helped;
        std::int64_t helper;
        double efficiency;
    };
    std::vector<Pair> pairs;
    std::vector<std::int64_t> unpaired;  ///< disqualified agents in no pair
};

namespace detail {

inline bool snr_order(const AgentChannel& x, const AgentChannel& y) {
    if (x.main_snr != y.main_snr) return x.main_snr < y.main_snr;
    return x.id < y.id;
}

inline void require_unique_ids(std::span<const AgentChannel> bank) {
    std::unordered_set<std::int64_t> seen;
    for (const auto& ch : bank)
        if (!seen.insert(ch.id).second) throw InvalidInput("duplicate agent id " + std::to_string(ch.id));
}

/// A_helper > E_helped > A_helped.
inline bool can_jam_for(const AgentChannel& helped, const AgentChannel& helper) {
    return helped.eaves_snr > helped.main_snr && helper.main_snr > helped.eaves_snr;
}

}  // namespace detail

inline Classification classify(std::span<const AgentChannel> bank) {
    detail::require_unique_ids(bank);
    Classification out;
    for (const auto& ch : bank) (ch.qualified() ? out.qualified : out.disqualified).push_back(ch);
    std::sort(out.disqualified.begin(), out.disqualified.end(), detail::snr_order);
    return out;
}

/// Agents able to jam for agent `id`: every other entry with A_j > E_id.
inline FeasibleSet feasible_set(std::int64_t id, std::span<const AgentChannel> disqualified) {
    const auto it = std::find_if(disqualified.begin(), disqualified.end(), [&](const auto& c) { return c.id == id; });
    if (it == disqualified.end()) throw InvalidInput("unknown agent id " + std::to_string(id));
    FeasibleSet set{id, {}};
    for (const auto& other : disqualified)
        if (other.id != id && other.main_snr > it->eaves_snr) set.members.push_back(other.id);
    return set;
}

/// log2(1 + A_i) / (log2(1 + A_i) + log2(1 + A_h)), without checking the jamming condition.
inline double pair_efficiency_value(double helped_snr, double helper_snr) {
    const double own = std::log1p(helped_snr);
    return own / (own + std::log1p(helper_snr));
}

/// Share of the pair's pooled capacity that carries the helped agent's secret traffic.
inline double efficiency_pair(const AgentChannel& helped, const AgentChannel& helper) {
    if (!detail::can_jam_for(helped, helper))
        throw InvalidPair("agent " + std::to_string(helper.id) + " cannot jam for agent " + std::to_string(helped.id));
    return pair_efficiency_value(helped.main_snr, helper.main_snr);
}

/// [log2(1+A) − log2(1+E)] / log2(1+A) for a link with A >= E.
inline double efficiency_qualified(const AgentChannel& ch) {
    if (ch.main_snr < ch.eaves_snr) throw InvalidInput("agent " + std::to_string(ch.id) + " is disqualified");
    return 1.0 - std::log1p(ch.eaves_snr) / std::log1p(ch.main_snr);
}

/// Walks the disqualified agents in ascending SNR; each one that is still free
/// takes the weakest free agent able to jam for it.
inline PairingPlan greedy_pairing(std::span<const AgentChannel> disqualified) {
    detail::require_unique_ids(disqualified);
    for (std::size_t i = 0; i < disqualified.size(); ++i) {
        if (disqualified[i].qualified())
            throw InvalidInput("agent " + std::to_string(disqualified[i].id) + " is qualified");
        if (i > 0 && detail::snr_order(disqualified[i], disqualified[i - 1]))
            throw InvalidInput("disqualified agents must be sorted by ascending main SNR");
    }

    const std::size_t k = disqualified.size();
    std::vector<bool> used(k, false);
    PairingPlan plan;
    for (std::size_t i = 0; i < k; ++i) {
        if (used[i]) continue;
        for (std::size_t s = i + 1; s < k; ++s) {
            if (used[s] || !detail::can_jam_for(disqualified[i], disqualified[s])) continue;
            used[i] = used[s] = true;
            plan.pairs.push_back(
                {disqualified[i].id, disqualified[s].id, efficiency_pair(disqualified[i], disqualified[s])});
            break;
        }
    }
    for (std::size_t i = 0; i < k; ++i)
        if (!used[i]) plan.unpaired.push_back(disqualified[i].id);
    return plan;
}

inline constexpr std::size_t max_oracle_agents = 12;

/// Largest number of disjoint (helped, helper) pairs, by exhaustive search over subsets.
inline std::size_t max_matching_oracle(std::span<const AgentChannel> agents) {
    const std::size_t k = agents.size();
    if (k > max_oracle_agents)
        throw UnsupportedSize("exhaustive matching supports at most " + std::to_string(max_oracle_agents) + " agents");

    std::vector<std::uint32_t> adjacent(k, 0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (i != j && (detail::can_jam_for(agents[i], agents[j]) || detail::can_jam_for(agents[j], agents[i])))
                adjacent[i] |= std::uint32_t{1} << j;

    // best[mask]: maximum matching among the agents in mask
    const std::uint32_t full = (std::uint32_t{1} << k) - 1;
    std::vector<std::uint8_t> best(std::size_t{full} + 1, 0);
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        const int u = std::countr_zero(mask);
        const std::uint32_t rest = mask & (mask - 1);
        std::uint8_t value = best[rest];
        for (std::uint32_t cand = rest & adjacent[u]; cand; cand &= cand - 1) {
            const std::uint32_t v = std::uint32_t{1} << std::countr_zero(cand);
            value = std::max<std::uint8_t>(value, static_cast<std::uint8_t>(1 + best[rest & ~v]));
        }
        best[mask] = value;
    }
    return best[full];
}

/// 1 − Π (|S(j)| − 1) / |S(j)|: chance that some earlier agent, picking a
/// helper uniformly from its feasible set, takes a particular shared helper.
/// Treats the picks as independent.
inline double pr_picking_k(std::span<const std::size_t> set_sizes) {
    if (set_sizes.empty()) return 0.0;
    double keep = 1.0;
    for (std::size_t s : set_sizes) {
        if (s < 1) throw InvalidInput("feasible set sizes must be at least 1");
        keep *= static_cast<double>(s - 1) / static_cast<double>(s);
    }
    return 1.0 - keep;
}

/// First agent (index into the disqualified list) whose only feasible helper
/// is contested: |S(x)| = 1 while |S(x − 1)| > 1.
inline std::optional<std::size_t> critical_agent(std::span<const FeasibleSet> sets) {
    for (std::size_t x = 1; x < sets.size(); ++x)
        if (sets[x].size() == 1 && sets[x - 1].size() > 1) return x;
    return std::nullopt;
}

/// Monte Carlo of the sequential process behind pr_picking_k: the first
/// `pickers` agents in list order each take a uniformly random free helper
/// from their feasible set (skipping agents already taken). Returns the
/// fraction of trials in which `target` ends up taken.
inline double simulate_random_picking(std::span<const AgentChannel> disqualified, std::size_t pickers,
                                      std::int64_t target, std::size_t trials, std::uint64_t seed) {
    detail::require(pickers <= disqualified.size(), "more pickers than agents");
    detail::require(trials > 0, "trials must be positive");
    const std::size_t k = disqualified.size();
    std::vector<std::vector<std::size_t>> options(k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (j != i && disqualified[j].main_snr > disqualified[i].eaves_snr) options[i].push_back(j);

    Rng rng(seed);
    std::size_t hits = 0;
    std::vector<bool> used(k);
    std::vector<std::size_t> free;
    for (std::size_t t = 0; t < trials; ++t) {
        std::fill(used.begin(), used.end(), false);
        bool taken = false;
        for (std::size_t i = 0; i < pickers; ++i) {
            if (used[i]) continue;
            free.clear();
            for (std::size_t j : options[i])
                if (!used[j]) free.push_back(j);
            if (free.empty()) continue;
            const std::size_t pick = free[rng.below(free.size())];
            used[i] = used[pick] = true;
            if (disqualified[pick].id == target) taken = true;
        }
        hits += taken ? 1 : 0;
    }
    return static_cast<double>(hits) / static_cast<double>(trials);
}

}  // namespace secrecy

#endif
