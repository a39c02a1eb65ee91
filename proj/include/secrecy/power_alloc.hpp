#ifndef SECRECY_POWER_ALLOC_HPP
#define SECRECY_POWER_ALLOC_HPP

// Secrecy water-filling.
//
// For parallel links the transmitter maximises
//     sum_i ½log(1 + P_i/σ²_M,i) − ½log(1 + P_i/σ²_W,i)   s.t.  sum_i P_i = P.
// Stationarity of the Lagrangian gives, on every active link,
//     (P_i + σ²_M)(P_i + σ²_W) = (σ²_W − σ²_M) / (2λ),
// whose positive root is P_i(λ) = ½(√(Δ² + 2Δ/λ) − Σ) with Δ = σ²_W − σ²_M and
// Σ = σ²_W + σ²_M. The link is active iff 1/σ²_M − 1/σ²_W > 2λ. λ is the
// multiplier of the natural-log objective.
//
// The fading case is the same problem per slot with effective noise 1/a and
// 1/b, and λ is tuned against the average power E[P(γ)] instead of a sum.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "channel.hpp"
#include "errors.hpp"
#include "rng.hpp"

namespace secrecy {

struct AllocationResult {
    std::vector<double> powers;
    /// Water level multiplier. +inf when no link can carry secrets.
    double lambda = std::numeric_limits<double>::infinity();
    double sum_rate = 0.0;
};

namespace detail {

/// Positive root of (P + n_m)(P + n_w) = (n_w − n_m)/(2λ), or 0 when inactive.
///
/// Written as ½(D − Σ²)/(√D + Σ) with D − Σ² = 2Δ/λ − 4 n_m n_w so that small
/// powers near the activation boundary do not lose digits to cancellation.
inline double kkt_power(double n_m, double n_w, double lambda) {
    const double delta = n_w - n_m;
    if (!(delta > 0.0)) return 0.0;
    const double excess = 2.0 * delta / lambda - 4.0 * n_m * n_w;
    if (!(excess > 0.0)) return 0.0;
    const double sum = n_w + n_m;
    const double root = std::sqrt(delta * delta + 2.0 * delta / lambda);
    return 0.5 * excess / (root + sum);
}

/// Finds λ with total(λ) = target for a continuous, nonincreasing total that
/// vanishes at lambda_max and diverges as λ → 0.
template <typename Total>
double solve_lambda(Total&& total, double lambda_max, double target, double tol) {
    double hi = lambda_max;
    double lo = 0.5 * lambda_max;
    int expansions = 0;
    while (total(lo) < target) {
        lo *= 0.5;
        if (++expansions > 2000 || !(lo > 0.0)) throw NumericalFailure("could not bracket the water level");
    }

    double best = lo;
    double best_residual = std::abs(total(lo) - target);
    for (int iter = 0; iter < 200 && best_residual > tol; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double value = total(mid);
        const double residual = std::abs(value - target);
        if (residual < best_residual) {
            best = mid;
            best_residual = residual;
        }
        if (value > target)
            lo = mid;
        else
            hi = mid;
    }
    return best;
}

}  // namespace detail

inline double power_at_lambda(const GaussianWiretapChannel& ch, double lambda) {
    if (std::isnan(lambda) || !(lambda > 0.0)) throw InvalidInput("lambda must be positive");
    if (std::isinf(lambda)) return 0.0;
    return detail::kkt_power(ch.sigma_m_sq(), ch.sigma_w_sq(), lambda);
}

/// Largest λ at which the link still receives power; zero for links the eavesdropper dominates.
inline double activation_lambda(const GaussianWiretapChannel& ch) noexcept {
    return std::max(0.0, 0.5 * (1.0 / ch.sigma_m_sq() - 1.0 / ch.sigma_w_sq()));
}

inline double sum_secrecy_rate(std::span<const GaussianWiretapChannel> channels, std::span<const double> powers) {
    if (channels.size() != powers.size()) throw InvalidInput("channel and power lists differ in length");
    double total = 0.0;
    for (std::size_t i = 0; i < channels.size(); ++i) total += gaussian_secrecy_rate(powers[i], channels[i]);
    return total;
}

/// Distributes `budget` over the links so the sum secrecy rate is maximal.
/// `tol` bounds |sum(powers) − budget| whenever some link is eligible.
inline AllocationResult awgn_waterfill(std::span<const GaussianWiretapChannel> channels, double budget,
                                       double tol = 1e-12) {
    if (channels.empty()) throw InvalidInput("at least one channel is required");
    detail::require_positive(budget, "power budget");
    detail::require_positive(tol, "tolerance");

    AllocationResult result;
    result.powers.assign(channels.size(), 0.0);

    double lambda_max = 0.0;
    for (const auto& ch : channels) lambda_max = std::max(lambda_max, activation_lambda(ch));
    if (lambda_max == 0.0) return result;

    auto total = [&](double lambda) {
        double s = 0.0;
        for (const auto& ch : channels) s += detail::kkt_power(ch.sigma_m_sq(), ch.sigma_w_sq(), lambda);
        return s;
    };

    result.lambda = detail::solve_lambda(total, lambda_max, budget, tol);
    for (std::size_t i = 0; i < channels.size(); ++i) result.powers[i] = power_at_lambda(channels[i], result.lambda);
    result.sum_rate = sum_secrecy_rate(channels, result.powers);
    return result;
}

/// Power policy for a fading link with full channel-state knowledge.
struct FadingPolicy {
    enum class Kind {
        water_filling,   ///< root formula at multiplier `lambda`
        gated_constant,  ///< `level` in every slot with a > b, nothing otherwise
        constant,        ///< `level` in every slot
    };

    Kind kind;
    double lambda;
    double level;
    FadingWiretapChannel channel;
    /// Set when no slot can favour the legitimate receiver; the policy then never transmits.
    bool zero_secrecy = false;

    static FadingPolicy water_filling(const FadingWiretapChannel& ch, double lambda) {
        if (std::isnan(lambda) || !(lambda > 0.0)) throw InvalidInput("lambda must be positive");
        return {Kind::water_filling, lambda, 0.0, ch, std::isinf(lambda)};
    }

    static FadingPolicy gated_constant(const FadingWiretapChannel& ch, double level) {
        detail::require_non_negative(level, "power level");
        return {Kind::gated_constant, 0.0, level, ch, false};
    }

    static FadingPolicy constant(const FadingWiretapChannel& ch, double level) {
        detail::require_non_negative(level, "power level");
        return {Kind::constant, 0.0, level, ch, false};
    }
};

inline double fading_power(const FadingPolicy& policy, const ChannelState& state) {
    switch (policy.kind) {
        case FadingPolicy::Kind::constant:
            return policy.level;
        case FadingPolicy::Kind::gated_constant:
            return state.a_draw > state.b_draw ? policy.level : 0.0;
        case FadingPolicy::Kind::water_filling:
            break;
    }
    if (state.a_draw <= state.b_draw || std::isinf(policy.lambda)) return 0.0;
    if (state.b_draw == 0.0) return std::max(0.0, 0.5 / policy.lambda - 1.0 / state.a_draw);
    return detail::kkt_power(1.0 / state.a_draw, 1.0 / state.b_draw, policy.lambda);
}

namespace detail {

inline std::vector<ChannelState> draw_states(const FadingWiretapChannel& ch, std::size_t samples, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<ChannelState> states;
    states.reserve(samples);
    for (std::size_t k = 0; k < samples; ++k) states.push_back(ch.draw_state(rng));
    return states;
}

inline double mean_power(const FadingPolicy& policy, std::span<const ChannelState> states) {
    double s = 0.0;
    for (const auto& st : states) s += fading_power(policy, st);
    return s / static_cast<double>(states.size());
}

}  // namespace detail

/// Monte Carlo estimate of E[P(γ)] under `policy` on `samples` slots drawn with `seed`.
inline double mean_fading_power(const FadingPolicy& policy, std::size_t samples, std::uint64_t seed) {
    if (samples == 0) throw InvalidInput("samples must be positive");
    const auto states = detail::draw_states(policy.channel, samples, seed);
    return detail::mean_power(policy, states);
}

/// Tunes λ so that the sample mean of the water-filling power over `samples`
/// slots drawn with `seed` equals `avg_budget` (relative residual ≤ 1e-9).
inline FadingPolicy calibrate_fading_lambda(const FadingWiretapChannel& ch, double avg_budget, std::size_t samples,
                                            std::uint64_t seed) {
    detail::require_positive(avg_budget, "average power budget");
    if (samples == 0) throw InvalidInput("samples must be positive");

    const auto states = detail::draw_states(ch, samples, seed);
    double lambda_max = 0.0;
    for (const auto& st : states)
        if (st.a_draw > st.b_draw) lambda_max = std::max(lambda_max, 0.5 * (st.a_draw - st.b_draw));
    if (lambda_max == 0.0) return FadingPolicy::water_filling(ch, std::numeric_limits<double>::infinity());

    auto total = [&](double lambda) { return detail::mean_power(FadingPolicy::water_filling(ch, lambda), states); };
    const double lambda = detail::solve_lambda(total, lambda_max, avg_budget, 1e-9 * avg_budget);
    return FadingPolicy::water_filling(ch, lambda);
}

/// Reference policy: the same average power spread evenly over the slots that favour the receiver.
inline FadingPolicy constant_power_baseline(const FadingWiretapChannel& ch, double avg_budget) {
    detail::require_positive(avg_budget, "average power budget");
    const double p = ch.prob_main_stronger();
    if (p == 0.0) {
        auto policy = FadingPolicy::gated_constant(ch, 0.0);
        policy.zero_secrecy = true;
        return policy;
    }
    return FadingPolicy::gated_constant(ch, avg_budget / p);
}

struct ErgodicEstimate {
    double estimate;
    double std_error;
};

/// Sample mean (and its standard error) of the instantaneous secrecy rate under `policy`.
inline ErgodicEstimate ergodic_secrecy_capacity(const FadingWiretapChannel& ch, const FadingPolicy& policy,
                                                std::size_t samples, std::uint64_t seed) {
    if (samples == 0) throw InvalidInput("samples must be positive");
    Rng rng(seed);
    double mean = 0.0;
    double m2 = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
        const auto st = ch.draw_state(rng);
        const double rate = instantaneous_fading_secrecy_rate(fading_power(policy, st), st);
        const double d = rate - mean;
        mean += d / static_cast<double>(k + 1);
        m2 += d * (rate - mean);
    }
    const double n = static_cast<double>(samples);
    const double std_error = samples > 1 ? std::sqrt(m2 / (n - 1.0) / n) : 0.0;
    return {mean, std_error};
}

}  // namespace secrecy

#endif
