#ifndef SECRECY_CHANNEL_HPP
#define SECRECY_CHANNEL_HPP

// Channel models for a transmitter talking to one legitimate receiver while a
// single eavesdropper listens, plus the single-link secrecy-rate formulas.
//
// Rates are reported in bits per channel use. Negative secrecy rates clamp to
// zero: a link on which the eavesdropper is at least as strong carries no
// secret information.

#include <cmath>
#include <cstdint>
#include <numbers>

#include "errors.hpp"
#include "rng.hpp"

namespace secrecy {

/// Additive white Gaussian noise link: Y = X + N_M to the receiver, Z = X + N_W to the eavesdropper.
class GaussianWiretapChannel {
   public:
    GaussianWiretapChannel(double sigma_m_sq, double sigma_w_sq) : sigma_m_sq_(sigma_m_sq), sigma_w_sq_(sigma_w_sq) {
        detail::require_positive(sigma_m_sq, "main noise variance");
        detail::require_positive(sigma_w_sq, "eavesdropper noise variance");
    }

    double sigma_m_sq() const noexcept { return sigma_m_sq_; }
    double sigma_w_sq() const noexcept { return sigma_w_sq_; }

    /// Eavesdropper minus main noise variance. Positive iff the link can carry secrets.
    double noise_difference() const noexcept { return sigma_w_sq_ - sigma_m_sq_; }
    double noise_sum() const noexcept { return sigma_w_sq_ + sigma_m_sq_; }

    bool operator==(const GaussianWiretapChannel&) const = default;

   private:
    double sigma_m_sq_;
    double sigma_w_sq_;
};

enum class FadingModel {
    rayleigh,  ///< power gains exponentially distributed around the stated means
    fixed,     ///< power gains equal the stated means in every slot
};

/// Instantaneous channel state of a fading link, already divided by the
/// respective noise variance (i.e. received SNR per unit transmit power).
struct ChannelState {
    double a_draw;
    double b_draw;

    ChannelState(double a, double b) : a_draw(a), b_draw(b) {
        detail::require_non_negative(a, "main channel gain");
        detail::require_non_negative(b, "eavesdropper channel gain");
    }
};

/// Block-fading link Y = g_M X + N_M, Z = g_W X + N_W with mean power gains a and b.
class FadingWiretapChannel {
   public:
    FadingWiretapChannel(double a, double b, double sigma_m_sq, double sigma_w_sq,
                         FadingModel model = FadingModel::rayleigh)
        : a_(a), b_(b), sigma_m_sq_(sigma_m_sq), sigma_w_sq_(sigma_w_sq), model_(model) {
        detail::require_positive(a, "main fading gain");
        detail::require_positive(b, "eavesdropper fading gain");
        detail::require_positive(sigma_m_sq, "main noise variance");
        detail::require_positive(sigma_w_sq, "eavesdropper noise variance");
    }

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    double sigma_m_sq() const noexcept { return sigma_m_sq_; }
    double sigma_w_sq() const noexcept { return sigma_w_sq_; }
    FadingModel model() const noexcept { return model_; }

    /// Average received SNR at the legitimate receiver.
    double main_snr() const noexcept { return a_ / sigma_m_sq_; }
    /// Average received SNR at the eavesdropper.
    double eaves_snr() const noexcept { return b_ / sigma_w_sq_; }

    /// Draws one slot. Zero-mean Gaussian amplitude gains give exponential power gains.
    ChannelState draw_state(Rng& rng) const {
        if (model_ == FadingModel::fixed) return {main_snr(), eaves_snr()};
        const double a = rng.exponential(main_snr());
        const double b = rng.exponential(eaves_snr());
        return {a, b};
    }

    /// Probability that a slot favours the legitimate receiver.
    double prob_main_stronger() const noexcept {
        if (model_ == FadingModel::fixed) return main_snr() > eaves_snr() ? 1.0 : 0.0;
        // independent exponentials: P(A > B) = mean_A / (mean_A + mean_B)
        return main_snr() / (main_snr() + eaves_snr());
    }

    bool operator==(const FadingWiretapChannel&) const = default;

   private:
    double a_;
    double b_;
    double sigma_m_sq_;
    double sigma_w_sq_;
    FadingModel model_;
};

/// SNR pair of one agent's link: A to the legitimate receiver, E to its eavesdropper.
struct AgentChannel {
    std::int64_t id;
    double main_snr;
    double eaves_snr;

    AgentChannel(std::int64_t id_, double a, double e) : id(id_), main_snr(a), eaves_snr(e) {
        detail::require_positive(a, "main SNR");
        detail::require_positive(e, "eavesdropper SNR");
    }

    bool qualified() const noexcept { return main_snr > eaves_snr; }

    bool operator==(const AgentChannel&) const = default;
};

namespace detail {

inline constexpr double ln2 = std::numbers::ln2;

/// ½[log2(1+x) − log2(1+y)], clamped at zero.
inline double half_log_ratio_bits(double x, double y) {
    const double r = (std::log1p(x) - std::log1p(y)) / (2.0 * ln2);
    return r > 0.0 ? r : 0.0;
}

}  // namespace detail

inline double gaussian_secrecy_rate(double power, const GaussianWiretapChannel& ch) {
    detail::require_non_negative(power, "power");
    if (ch.sigma_w_sq() <= ch.sigma_m_sq() || power == 0.0) return 0.0;
    return detail::half_log_ratio_bits(power / ch.sigma_m_sq(), power / ch.sigma_w_sq());
}

inline double instantaneous_fading_secrecy_rate(double power, const ChannelState& state) {
    detail::require_non_negative(power, "power");
    if (state.a_draw <= state.b_draw || power == 0.0) return 0.0;
    return detail::half_log_ratio_bits(power * state.a_draw, power * state.b_draw);
}

/// Strict: a link whose SNRs tie is disqualified.
inline bool is_qualified(const FadingWiretapChannel& ch) noexcept { return ch.main_snr() > ch.eaves_snr(); }

inline AgentChannel to_agent_channel(const FadingWiretapChannel& ch, std::int64_t id) {
    return {id, ch.main_snr(), ch.eaves_snr()};
}

}  // namespace secrecy

#endif
