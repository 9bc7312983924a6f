#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mtype/errors.hpp"

namespace mtype {

// Tolerance on |sum - 1| when accepting a probability vector as-is.
inline constexpr double simplex_tolerance = 1e-9;

// A validated discrete probability distribution: entries nonnegative,
// summing to one within simplex_tolerance. Zero entries are kept, not
// stripped, so index positions stay stable across a target, its
// approximations, and Markov rows. Immutable after construction.
class target_distribution {
public:
    explicit target_distribution(std::vector<double> probs, bool normalize = false)
        : probs_(std::move(probs)) {
        if (probs_.empty())
            throw invalid_input("target distribution: empty input");
        double sum = 0.0;
        for (double p : probs_) {
            if (!std::isfinite(p))
                throw invalid_input("target distribution: non-finite entry");
            if (p < 0.0)
                throw invalid_input("target distribution: negative entry");
            sum += p;
        }
        if (normalize) {
            if (sum == 0.0)
                throw invalid_input("target distribution: cannot normalize a zero-sum vector");
            for (double& p : probs_) p /= sum;
        } else if (std::abs(sum - 1.0) > simplex_tolerance) {
            throw invalid_input("target distribution: entries sum to " + std::to_string(sum) +
                                ", expected 1");
        }
        for (double p : probs_) {
            if (p > 0.0) {
                ++support_;
                min_positive_ = std::min(min_positive_, p);
            }
        }
    }

    std::size_t size() const { return probs_.size(); }
    double operator[](std::size_t i) const { return probs_[i]; }
    const std::vector<double>& probs() const { return probs_; }

    // Number of strictly positive entries (at least 1 for any valid input).
    std::size_t support_size() const { return support_; }
    // Smallest strictly positive entry.
    double min_positive() const { return min_positive_; }

    friend bool operator==(const target_distribution&, const target_distribution&) = default;

private:
    std::vector<double> probs_;
    std::size_t support_ = 0;
    double min_positive_ = std::numeric_limits<double>::infinity();
};

inline target_distribution validate_target(std::vector<double> raw, bool normalize = false) {
    return target_distribution(std::move(raw), normalize);
}

// H(t) = -sum_{t_i > 0} t_i log t_i, natural log.
inline double entropy(const target_distribution& t) {
    double h = 0.0;
    for (double p : t.probs())
        if (p > 0.0) h -= p * std::log(p);
    return h;
}

// Copy of t with its zero entries dropped.
inline target_distribution restrict_to_support(const target_distribution& t) {
    if (t.support_size() == t.size()) return t;
    std::vector<double> positive;
    positive.reserve(t.support_size());
    for (double p : t.probs())
        if (p > 0.0) positive.push_back(p);
    return target_distribution(std::move(positive));
}

// An M-type distribution: every mass is counts[i] / M for nonnegative
// integer counts summing to M exactly.
class quantized_distribution {
public:
    quantized_distribution(std::int64_t precision, std::vector<std::int64_t> counts)
        : m_(precision), counts_(std::move(counts)) {
        if (m_ < 1)
            throw invalid_input("quantized distribution: precision must be positive");
        if (counts_.empty())
            throw invalid_input("quantized distribution: empty counts");
        std::int64_t sum = 0;
        for (std::int64_t c : counts_) {
            if (c < 0 || c > m_)
                throw invalid_input("quantized distribution: count outside [0, M]");
            sum += c;
        }
        if (sum != m_)
            throw invalid_input("quantized distribution: counts sum to " + std::to_string(sum) +
                                ", expected M = " + std::to_string(m_));
    }

    std::int64_t precision() const { return m_; }
    const std::vector<std::int64_t>& counts() const { return counts_; }
    std::size_t size() const { return counts_.size(); }
    double prob(std::size_t i) const { return double(counts_[i]) / double(m_); }

    std::vector<double> probs() const {
        std::vector<double> p(counts_.size());
        for (std::size_t i = 0; i < counts_.size(); ++i) p[i] = prob(i);
        return p;
    }

    friend bool operator==(const quantized_distribution&, const quantized_distribution&) = default;

private:
    std::int64_t m_;
    std::vector<std::int64_t> counts_;
};

// The five cost functions the greedy allocator can minimize.
enum class cost_kind {
    variational_distance,  // ||p - t||_1
    kl_approx_first,       // D(p || t)
    kl_target_first,       // D(t || p)
    chi2_approx_first,     // chi^2(p || t)
    chi2_target_first,     // chi^2(t || p)
};

inline constexpr std::array<cost_kind, 5> all_cost_kinds = {
    cost_kind::variational_distance, cost_kind::kl_approx_first, cost_kind::kl_target_first,
    cost_kind::chi2_approx_first,    cost_kind::chi2_target_first,
};

// Kinds whose cost is infinite unless the approximation covers the full
// target support; these require M >= |support(t)|.
inline constexpr bool is_target_first(cost_kind kind) {
    return kind == cost_kind::kl_target_first || kind == cost_kind::chi2_target_first;
}

inline constexpr std::string_view to_string(cost_kind kind) {
    switch (kind) {
        case cost_kind::variational_distance: return "variational";
        case cost_kind::kl_approx_first: return "kl-approx-first";
        case cost_kind::kl_target_first: return "kl-target-first";
        case cost_kind::chi2_approx_first: return "chi2-approx-first";
        case cost_kind::chi2_target_first: return "chi2-target-first";
    }
    return "unknown";
}

inline std::optional<cost_kind> cost_kind_from_string(std::string_view name) {
    for (cost_kind kind : all_cost_kinds)
        if (name == to_string(kind)) return kind;
    return std::nullopt;
}

// D(a || b) = sum_{a_i > 0} a_i log(a_i / b_i), natural log; +inf as soon
// as b lacks mass somewhere a has it.
inline double kl_divergence(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw invalid_input("kl_divergence: dimension mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > 0.0) {
            if (b[i] == 0.0) return std::numeric_limits<double>::infinity();
            sum += a[i] * std::log(a[i] / b[i]);
        }
    }
    return sum;
}

inline double l1_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw invalid_input("l1_distance: dimension mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
    return sum;
}

}  // namespace mtype
