#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>

#include "mtype/distribution.hpp"
#include "mtype/greedy.hpp"

namespace mtype {

// Increment cost of the k-th unit in queue i under the given cost kind,
// i.e. f_i(k) - f_i(k - 1) for the convex per-index summand f_i of the
// rewritten objective. Singular cases follow the convex-difference
// definition:
//   - kl_approx_first at k == 1 is the limit -log t_i (f_i(0) = 0 log 0 = 0);
//   - target-first kinds at k == 1 give -inf for t_i > 0 (the first unit is
//     mandatory) and 0 for t_i == 0 (the index is inert for the cost);
//   - approx-first kinds price any unit on a zero-mass index at +inf.
inline double delta(cost_kind kind, const target_distribution& t, std::int64_t m, std::size_t i,
                    std::int64_t k) {
    if (i >= t.size())
        throw invalid_input("delta: index out of range");
    if (m < 1)
        throw invalid_input("delta: M must be positive");
    if (k < 1)
        throw invalid_input("delta: k must be at least 1");
    constexpr double inf = std::numeric_limits<double>::infinity();
    const double ti = t[i];
    const double kd = double(k);
    switch (kind) {
        case cost_kind::variational_distance:
            return std::abs(kd - double(m) * ti) - std::abs(kd - 1.0 - double(m) * ti);
        case cost_kind::kl_approx_first:
            if (ti == 0.0) return inf;
            if (k == 1) return -std::log(ti);
            return kd * std::log(kd / (kd - 1.0)) + std::log(kd - 1.0) - std::log(ti);
        case cost_kind::kl_target_first:
            if (ti == 0.0) return 0.0;
            if (k == 1) return -inf;
            return ti * std::log((kd - 1.0) / kd);
        case cost_kind::chi2_approx_first: {
            if (ti == 0.0) return inf;
            const auto f = [&](double x) {
                const double d = x / double(m) - ti;
                return d * d / ti;
            };
            return f(kd) - f(kd - 1.0);
        }
        case cost_kind::chi2_target_first:
            if (ti == 0.0) return 0.0;
            if (k == 1) return -inf;
            return ti * ti * double(m) * (1.0 / kd - 1.0 / (kd - 1.0));
    }
    throw invalid_input("delta: unknown cost kind");
}

// Pre-allocation c_{i,0}: floor(M t_i) for variational distance, ceil(t_i)
// for D(t||p), zero otherwise. Floor and ceil are raw floating-point
// operations, no epsilon snapping.
inline std::int64_t prealloc(cost_kind kind, const target_distribution& t, std::int64_t m,
                             std::size_t i) {
    if (i >= t.size())
        throw invalid_input("prealloc: index out of range");
    if (m < 1)
        throw invalid_input("prealloc: M must be positive");
    switch (kind) {
        case cost_kind::variational_distance:
            return std::int64_t(std::floor(double(m) * t[i]));
        case cost_kind::kl_target_first:
            return std::int64_t(std::ceil(t[i]));
        default:
            return 0;
    }
}

// A cost kind bound to a concrete (target, M) pair: the delta source that
// drives greedy_allocate for that instance.
class cost_instance {
public:
    cost_instance(cost_kind kind, target_distribution target, std::int64_t m)
        : kind_(kind), target_(std::move(target)), m_(m) {
        if (m_ < 1)
            throw invalid_input("cost_instance: M must be positive");
        if (is_target_first(kind_) && std::uint64_t(m_) < target_.support_size())
            throw infeasible("cost_instance: M is below the target support size, "
                             "no finite-cost allocation exists");
    }

    double delta(std::size_t i, std::int64_t k) const { return mtype::delta(kind_, target_, m_, i, k); }
    std::int64_t prealloc(std::size_t i) const { return mtype::prealloc(kind_, target_, m_, i); }

    cost_kind kind() const { return kind_; }
    const target_distribution& target() const { return target_; }
    std::int64_t precision() const { return m_; }

private:
    cost_kind kind_;
    target_distribution target_;
    std::int64_t m_;
};

namespace detail {

// Exact cost of the integer allocation `counts` against t, without building
// a quantized_distribution first (hot path of the exhaustive oracle).
inline double evaluate_counts(cost_kind kind, const target_distribution& t, std::int64_t m,
                              std::span<const std::int64_t> counts) {
    if (counts.size() != t.size())
        throw invalid_input("evaluate: dimension mismatch");
    constexpr double inf = std::numeric_limits<double>::infinity();
    const std::size_t n = t.size();
    double sum = 0.0;
    switch (kind) {
        case cost_kind::variational_distance:
            for (std::size_t i = 0; i < n; ++i)
                sum += std::abs(double(counts[i]) / double(m) - t[i]);
            return sum;
        case cost_kind::kl_approx_first:
            for (std::size_t i = 0; i < n; ++i) {
                if (counts[i] == 0) continue;
                if (t[i] == 0.0) return inf;
                const double p = double(counts[i]) / double(m);
                sum += p * std::log(p / t[i]);
            }
            return sum;
        case cost_kind::kl_target_first:
            for (std::size_t i = 0; i < n; ++i) {
                if (t[i] == 0.0) continue;
                if (counts[i] == 0) return inf;
                sum += t[i] * std::log(t[i] * double(m) / double(counts[i]));
            }
            return sum;
        case cost_kind::chi2_approx_first:
            for (std::size_t i = 0; i < n; ++i) {
                const double p = double(counts[i]) / double(m);
                if (t[i] == 0.0) {
                    if (p > 0.0) return inf;
                    continue;
                }
                sum += (p - t[i]) * (p - t[i]) / t[i];
            }
            return sum;
        case cost_kind::chi2_target_first:
            for (std::size_t i = 0; i < n; ++i) {
                if (counts[i] == 0) {
                    if (t[i] > 0.0) return inf;
                    continue;
                }
                const double p = double(counts[i]) / double(m);
                sum += (t[i] - p) * (t[i] - p) / p;
            }
            return sum;
    }
    throw invalid_input("evaluate: unknown cost kind");
}

}  // namespace detail

// Exact cost of the pair (t, p) under the given kind; +inf where the
// respective divergence diverges.
inline double evaluate(cost_kind kind, const target_distribution& t,
                       const quantized_distribution& p) {
    return detail::evaluate_counts(kind, t, p.precision(), p.counts());
}

// Optimal M-type approximation of t under the given cost: wires the kind's
// deltas and pre-allocation into the greedy allocator. Target-first kinds
// require M >= |support(t)|.
inline quantized_distribution quantize(const target_distribution& t, std::int64_t m,
                                       cost_kind kind) {
    cost_instance instance(kind, t, m);
    allocation_result alloc = greedy_allocate(instance, t.size(), m);
    if (is_target_first(kind)) {
        // The allocator must end up positive exactly on support(t); a
        // zero-mass index being selected would mean broken deltas.
        for (std::size_t i = 0; i < t.size(); ++i)
            if ((alloc.counts[i] > 0) != (t[i] > 0.0))
                throw numeric_error("quantize: allocation support deviates from target support");
    }
    return quantized_distribution(m, std::move(alloc.counts));
}

}  // namespace mtype
