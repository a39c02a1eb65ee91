#ifndef SECRECY_DISCRETE_HPP
#define SECRECY_DISCRETE_HPP

// Finite-alphabet wiretap channels.
//
// Secrecy rates here are evaluated with the auxiliary variable equal to the
// channel input (U = X), which is optimal when the eavesdropper's channel is
// a degraded version of the main one. For non-degraded pairs the grid maximum
// is only a lower bound on the secrecy capacity.
//
// Entropies use 0·log 0 = 0. All results are in bits.

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace secrecy {

/// Dense row-major matrix of probabilities.
class ProbMatrix {
   public:
    ProbMatrix() = default;
    ProbMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    ProbMatrix(std::initializer_list<std::initializer_list<double>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        for (const auto& r : rows) {
            detail::require(r.size() == cols_, "ragged matrix");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static ProbMatrix from_rows(const std::vector<std::vector<double>>& rows) {
        ProbMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            detail::require(rows[r].size() == m.cols_, "ragged matrix");
            for (std::size_t c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> values() const noexcept { return data_; }

    std::vector<std::vector<double>> to_rows() const {
        std::vector<std::vector<double>> out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) out[r].assign(row(r).begin(), row(r).end());
        return out;
    }

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

inline constexpr double normalization_tol = 1e-12;

namespace detail {

inline bool is_distribution(std::span<const double> p) {
    double s = 0.0;
    for (double v : p) {
        if (!std::isfinite(v) || v < 0.0) return false;
        s += v;
    }
    return std::abs(s - 1.0) <= normalization_tol;
}

inline double plogp(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

}  // namespace detail

class DiscretePmf {
   public:
    explicit DiscretePmf(std::vector<double> probs) : probs_(std::move(probs)) {
        detail::require(!probs_.empty(), "empty distribution");
        detail::require(detail::is_distribution(probs_), "probabilities must be non-negative and sum to 1");
    }

    static DiscretePmf uniform(std::size_t n) { return DiscretePmf(std::vector<double>(n, 1.0 / static_cast<double>(n))); }

    static DiscretePmf point_mass(std::size_t n, std::size_t at) {
        std::vector<double> p(n, 0.0);
        p.at(at) = 1.0;
        return DiscretePmf(std::move(p));
    }

    std::size_t size() const noexcept { return probs_.size(); }
    double operator[](std::size_t i) const { return probs_[i]; }
    const std::vector<double>& probs() const noexcept { return probs_; }

    bool operator==(const DiscretePmf&) const = default;

   private:
    std::vector<double> probs_;
};

/// Memoryless wiretap channel p(y, z | x) = p(y | x) p(z | x).
class DiscreteWiretapChannel {
   public:
    DiscreteWiretapChannel(ProbMatrix main, ProbMatrix eaves) : main_(std::move(main)), eaves_(std::move(eaves)) {
        detail::require(main_.rows() > 0 && main_.cols() > 0, "main channel matrix is empty");
        detail::require(eaves_.cols() > 0, "eavesdropper channel matrix is empty");
        detail::require(main_.rows() == eaves_.rows(), "main and eavesdropper matrices must share the input alphabet");
        for (std::size_t r = 0; r < main_.rows(); ++r) {
            detail::require(detail::is_distribution(main_.row(r)), "main channel row " + std::to_string(r) + " is not a distribution");
            detail::require(detail::is_distribution(eaves_.row(r)), "eavesdropper channel row " + std::to_string(r) + " is not a distribution");
        }
    }

    /// Binary symmetric main and eavesdropper channels with crossover probabilities p and q.
    static DiscreteWiretapChannel binary_symmetric(double p, double q) {
        detail::require(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0, "crossover probability outside [0, 1]");
        return {ProbMatrix{{1.0 - p, p}, {p, 1.0 - p}}, ProbMatrix{{1.0 - q, q}, {q, 1.0 - q}}};
    }

    std::size_t input_size() const noexcept { return main_.rows(); }
    const ProbMatrix& main() const noexcept { return main_; }
    const ProbMatrix& eaves() const noexcept { return eaves_; }

   private:
    ProbMatrix main_;
    ProbMatrix eaves_;
};

inline double binary_entropy(double p) { return -detail::plogp(p) - detail::plogp(1.0 - p); }

/// I(A;B) of a joint distribution given as a |A|×|B| matrix.
inline double mutual_information(const ProbMatrix& joint) {
    detail::require(detail::is_distribution(joint.values()), "joint distribution must be non-negative and sum to 1");
    std::vector<double> pa(joint.rows(), 0.0);
    std::vector<double> pb(joint.cols(), 0.0);
    for (std::size_t a = 0; a < joint.rows(); ++a)
        for (std::size_t b = 0; b < joint.cols(); ++b) {
            pa[a] += joint(a, b);
            pb[b] += joint(a, b);
        }
    double info = 0.0;
    for (std::size_t a = 0; a < joint.rows(); ++a)
        for (std::size_t b = 0; b < joint.cols(); ++b) {
            const double p = joint(a, b);
            if (p > 0.0) info += p * std::log2(p / (pa[a] * pb[b]));
        }
    return info > 0.0 ? info : 0.0;
}

/// Joint p(x, y) = p(x) W(y | x).
inline ProbMatrix input_output_joint(const DiscretePmf& input, const ProbMatrix& transition) {
    detail::require(input.size() == transition.rows(), "input alphabet does not match channel");
    ProbMatrix joint(transition.rows(), transition.cols());
    for (std::size_t x = 0; x < transition.rows(); ++x)
        for (std::size_t y = 0; y < transition.cols(); ++y) joint(x, y) = input[x] * transition(x, y);
    return joint;
}

/// I(X;Y) − I(X;Z) at a fixed input law. Not clamped: negative values mean the eavesdropper learns more.
inline double secrecy_rate_discrete(const DiscreteWiretapChannel& ch, const DiscretePmf& input) {
    detail::require(input.size() == ch.input_size(), "input alphabet does not match channel");
    return mutual_information(input_output_joint(input, ch.main())) -
           mutual_information(input_output_joint(input, ch.eaves()));
}

struct GridMaximum {
    double rate;
    DiscretePmf argmax;
};

inline constexpr std::size_t max_grid_alphabet = 4;

/// Exhaustive search over input laws whose entries are multiples of `grid_step`.
/// Ties keep the lexicographically smallest law.
inline GridMaximum max_secrecy_rate_grid(const DiscreteWiretapChannel& ch, double grid_step) {
    const std::size_t k = ch.input_size();
    if (k > max_grid_alphabet)
        throw UnsupportedSize("grid search supports at most " + std::to_string(max_grid_alphabet) + " input symbols");
    detail::require(grid_step >= 1e-3 && grid_step <= 0.1, "grid step must lie in [1e-3, 0.1]");
    const auto units = static_cast<std::size_t>(std::llround(1.0 / grid_step));
    detail::require(std::abs(static_cast<double>(units) * grid_step - 1.0) < 1e-9, "grid step must divide 1");

    std::vector<std::size_t> counts(k, 0);
    std::vector<double> probs(k, 0.0);
    double best_rate = -std::numeric_limits<double>::infinity();
    std::vector<double> best;

    const double scale = 1.0 / static_cast<double>(units);
    auto visit = [&](auto&& self, std::size_t pos, std::size_t remaining) -> void {
        if (pos + 1 == k) {
            counts[pos] = remaining;
            for (std::size_t i = 0; i < k; ++i) probs[i] = static_cast<double>(counts[i]) * scale;
            const double rate = secrecy_rate_discrete(ch, DiscretePmf(probs));
            if (rate > best_rate) {
                best_rate = rate;
                best = probs;
            }
            return;
        }
        for (std::size_t c = 0; c <= remaining; ++c) {
            counts[pos] = c;
            self(self, pos + 1, remaining - c);
        }
    };
    visit(visit, 0, units);
    return {best_rate, DiscretePmf(std::move(best))};
}

inline double parallel_sum_rate(std::span<const DiscreteWiretapChannel> channels, std::span<const DiscretePmf> inputs) {
    detail::require(channels.size() == inputs.size(), "channel and input lists differ in length");
    double total = 0.0;
    for (std::size_t i = 0; i < channels.size(); ++i) total += secrecy_rate_discrete(channels[i], inputs[i]);
    return total;
}

inline constexpr std::size_t max_aggregation_alphabet = 3;

namespace detail {

inline void check_pair(const DiscreteWiretapChannel& ch1, const DiscreteWiretapChannel& ch2, const ProbMatrix& joint,
                       std::size_t which) {
    require(which < 2, "channel index must be 0 or 1");
    require(joint.rows() == ch1.input_size() && joint.cols() == ch2.input_size(),
            "joint input shape does not match the channels");
    require(is_distribution(joint.values()), "joint input must be non-negative and sum to 1");
    for (const auto* m : {&ch1.main(), &ch1.eaves(), &ch2.main(), &ch2.eaves()})
        if (m->rows() > max_aggregation_alphabet || m->cols() > max_aggregation_alphabet)
            throw UnsupportedSize("aggregation supports alphabets of at most 3 symbols");
}

}  // namespace detail

/// Marginal law of input `which` (0 or 1) of a two-input joint.
inline DiscretePmf input_marginal(const ProbMatrix& joint, std::size_t which) {
    detail::require(which < 2, "input index must be 0 or 1");
    std::vector<double> p(which == 0 ? joint.rows() : joint.cols(), 0.0);
    for (std::size_t r = 0; r < joint.rows(); ++r)
        for (std::size_t c = 0; c < joint.cols(); ++c) p[which == 0 ? r : c] += joint(r, c);
    double s = 0.0;
    for (double v : p) s += v;
    for (double& v : p) v /= s;
    return DiscretePmf(std::move(p));
}

/// I(X_which; Z_1, Z_2): what an eavesdropper pooling both taps learns about one input
/// when the two inputs are jointly distributed as `joint`.
inline double aggregated_leakage(const DiscreteWiretapChannel& ch1, const DiscreteWiretapChannel& ch2,
                                 const ProbMatrix& joint, std::size_t which) {
    detail::check_pair(ch1, ch2, joint, which);
    const ProbMatrix& e1 = ch1.eaves();
    const ProbMatrix& e2 = ch2.eaves();
    const std::size_t n_own = which == 0 ? joint.rows() : joint.cols();
    ProbMatrix xz(n_own, e1.cols() * e2.cols());
    for (std::size_t x1 = 0; x1 < joint.rows(); ++x1)
        for (std::size_t x2 = 0; x2 < joint.cols(); ++x2) {
            const double px = joint(x1, x2);
            if (px == 0.0) continue;
            for (std::size_t z1 = 0; z1 < e1.cols(); ++z1)
                for (std::size_t z2 = 0; z2 < e2.cols(); ++z2)
                    xz(which == 0 ? x1 : x2, z1 * e2.cols() + z2) += px * e1(x1, z1) * e2(x2, z2);
        }
    return mutual_information(xz);
}

/// I(X_i; Y_i) − I(X_i; Z_1, Z_2) for i = `which`.
inline double aggregated_eavesdropper_rate(const DiscreteWiretapChannel& ch1, const DiscreteWiretapChannel& ch2,
                                           const ProbMatrix& joint, std::size_t which) {
    detail::check_pair(ch1, ch2, joint, which);
    const auto& own = which == 0 ? ch1 : ch2;
    const double to_receiver = mutual_information(input_output_joint(input_marginal(joint, which), own.main()));
    return to_receiver - aggregated_leakage(ch1, ch2, joint, which);
}

}  // namespace secrecy

#endif
