#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "mtype/costs.hpp"
#include "mtype/distribution.hpp"

namespace mtype {

// Reverse I-projection of a target onto P_M = {p : p_i >= 1/M, ||p||_1 = 1}:
// masses below the water line nu/M are raised to exactly 1/M (the saturated
// set K), everything else is scaled down by nu = (1 - T_K) / (1 - k/M).
struct projection_result {
    std::vector<double> t_star;
    double nu = 1.0;
    std::vector<std::size_t> saturated;  // K = {i : t_i < nu/M}, ascending
    double saturated_mass = 0.0;         // T_K

    std::size_t saturated_count() const { return saturated.size(); }
};

// Requires a strictly positive target (restrict to support first) and
// M >= n so that P_M is non-empty. Closed-form: with masses sorted
// ascending, nu is determined by the saturated prefix size k; the right k
// is the smallest one whose water line stays at or below the first
// unsaturated mass, and k = n - 1 is always consistent when M >= n.
inline projection_result reverse_i_projection(const target_distribution& t, std::int64_t m) {
    const std::size_t n = t.size();
    if (t.support_size() != n)
        throw invalid_input("reverse_i_projection: target has zero entries, restrict to support first");
    if (m < 1 || std::uint64_t(m) < n)
        throw infeasible("reverse_i_projection: M below the number of mass points, P_M is empty");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return t[a] != t[b] ? t[a] < t[b] : a < b;
    });

    projection_result out;
    double prefix_mass = 0.0;
    std::size_t k = 0;
    for (;; ++k) {
        const double nu = (1.0 - prefix_mass) * double(m) / double(m - std::int64_t(k));
        if (k + 1 == n || t[order[k]] >= nu / double(m)) {
            out.nu = nu;
            break;
        }
        prefix_mass += t[order[k]];
    }

    out.saturated.assign(order.begin(), order.begin() + k);
    std::sort(out.saturated.begin(), out.saturated.end());
    out.saturated_mass = prefix_mass;
    out.t_star.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out.t_star[i] = std::max(t[i] / out.nu, 1.0 / double(m));
    for (std::size_t i : out.saturated) out.t_star[i] = 1.0 / double(m);
    return out;
}

namespace detail {

inline double projection_bound_value(double nu, std::size_t support, std::int64_t m) {
    return std::log(nu) +
           0.5 * std::log(2.0) * (1.0 - nu * (1.0 - double(support) / double(m)));
}

}  // namespace detail

// Upper bound on D(t || t^a) via the reverse I-projection; holds for every
// M >= |support(t)|. Zero entries of t are ignored (they are inert for the
// divergence), so n in the formula is the support size.
inline double projection_bound(const target_distribution& t, std::int64_t m) {
    const target_distribution support = restrict_to_support(t);
    const projection_result proj = reverse_i_projection(support, m);
    return detail::projection_bound_value(proj.nu, support.size(), m);
}

struct vd_bound_result {
    double value = 0.0;  // log(1 + n / (2M)), n = |support(t)|
    bool valid = false;  // bound holds once M * min positive mass >= 1
};

// Upper bound on D(t || t^a) through the variational-distance optimal
// approximation. Only valid once every positive mass exceeds 1/M.
inline vd_bound_result vd_bound(const target_distribution& t, std::int64_t m) {
    if (m < 1)
        throw invalid_input("vd_bound: M must be positive");
    const double n = double(t.support_size());
    return {std::log1p(n / (2.0 * double(m))), double(m) * t.min_positive() >= 1.0};
}

struct bound_report {
    std::int64_t m = 0;
    double exact = 0.0;  // D(t || t^a) at this precision
    double projection_bound = 0.0;
    double vd_bound = 0.0;
    bool vd_bound_valid = false;
    double nu = 1.0;
};

// Exact optimal divergence and both bounds for every M in [m_min, m_max].
inline std::vector<bound_report> bound_sweep(const target_distribution& t, std::int64_t m_min,
                                             std::int64_t m_max) {
    if (m_min < 1 || m_min > m_max)
        throw invalid_input("bound_sweep: invalid M range");
    if (std::uint64_t(m_min) < t.support_size())
        throw infeasible("bound_sweep: M range starts below the support size");
    const target_distribution support = restrict_to_support(t);
    std::vector<bound_report> reports;
    reports.reserve(std::size_t(m_max - m_min + 1));
    for (std::int64_t m = m_min; m <= m_max; ++m) {
        bound_report r;
        r.m = m;
        r.exact = evaluate(cost_kind::kl_target_first, t, quantize(t, m, cost_kind::kl_target_first));
        const projection_result proj = reverse_i_projection(support, m);
        r.nu = proj.nu;
        r.projection_bound = detail::projection_bound_value(proj.nu, support.size(), m);
        const vd_bound_result vb = vd_bound(t, m);
        r.vd_bound = vb.value;
        r.vd_bound_valid = vb.valid;
        reports.push_back(r);
    }
    return reports;
}

struct divergence_check {
    double lhs = 0.0;
    double rhs = 0.0;
};

// Pythagorean identity of the projection: D(t || t_vd) equals
// D(t || t*) + nu D(t* || t_vd), where t_vd is the variational-distance
// optimal M-type approximation of t*. Returns both sides.
inline divergence_check pythagorean_check(const target_distribution& t, std::int64_t m) {
    const target_distribution support = restrict_to_support(t);
    const projection_result proj = reverse_i_projection(support, m);
    const target_distribution t_star(proj.t_star);
    const std::vector<double> vd_probs =
        quantize(t_star, m, cost_kind::variational_distance).probs();
    const double lhs = kl_divergence(support.probs(), vd_probs);
    const double rhs = kl_divergence(support.probs(), proj.t_star) +
                       proj.nu * kl_divergence(proj.t_star, vd_probs);
    return {lhs, rhs};
}

// Reverse Pinsker step: D(t* || t_vd) <= log(2) ||t* - t_vd||_1 for
// t* in P_M and t_vd its variational-distance optimal approximation.
inline divergence_check reverse_pinsker_check(const target_distribution& t_star,
                                              const quantized_distribution& t_vd) {
    if (t_star.size() != t_vd.size())
        throw invalid_input("reverse_pinsker_check: dimension mismatch");
    const double floor_mass = 1.0 / double(t_vd.precision());
    for (std::size_t i = 0; i < t_star.size(); ++i) {
        if (t_star[i] < floor_mass - 1e-12)
            throw invalid_input("reverse_pinsker_check: first argument is not in P_M");
        if (t_star[i] > 0.0 && t_vd.counts()[i] == 0)
            throw invalid_input("reverse_pinsker_check: support mismatch");
    }
    const std::vector<double> vd_probs = t_vd.probs();
    return {kl_divergence(t_star.probs(), vd_probs),
            std::log(2.0) * l1_distance(t_star.probs(), vd_probs)};
}

// Projection residual bound: D(t || t*) <= log nu.
inline divergence_check log_nu_check(const target_distribution& t, std::int64_t m) {
    const target_distribution support = restrict_to_support(t);
    const projection_result proj = reverse_i_projection(support, m);
    return {kl_divergence(support.probs(), proj.t_star), std::log(proj.nu)};
}

}  // namespace mtype
