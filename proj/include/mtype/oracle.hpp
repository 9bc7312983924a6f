#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "mtype/costs.hpp"
#include "mtype/distribution.hpp"

namespace mtype {

// Hard cap on the number of compositions the exhaustive oracle will visit.
inline constexpr std::uint64_t oracle_candidate_guard = 10'000'000;

struct oracle_result {
    double best_cost = 0.0;
    std::vector<std::int64_t> best_counts;
    std::uint64_t num_candidates = 0;
};

// C(m + n - 1, n - 1), the number of compositions of m into n nonnegative
// parts, saturating at cap + 1.
inline std::uint64_t composition_count(std::int64_t m, std::size_t n, std::uint64_t cap) {
    if (m < 0 || n == 0)
        throw invalid_input("composition_count: need m >= 0 and n >= 1");
    const std::uint64_t top = std::uint64_t(m) + n - 1;
    const std::uint64_t k = std::min<std::uint64_t>(n - 1, std::uint64_t(m));
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (top - k + i) / i;  // stays exact: r is C(top - k + i, i)
        if (r > cap) return cap + 1;
    }
    return std::uint64_t(r);
}

// Ground truth for small instances: enumerates every composition of M into
// n nonnegative parts in lexicographic order and returns a cheapest one
// (the lexicographically smallest on cost ties). When every composition has
// infinite cost (target-first kind with M < |support|), the verdict is an
// infinite best_cost rather than an error.
inline oracle_result brute_force(const target_distribution& t, std::int64_t m, cost_kind kind) {
    if (m < 1)
        throw invalid_input("brute_force: M must be positive");
    const std::size_t n = t.size();
    if (composition_count(m, n, oracle_candidate_guard) > oracle_candidate_guard)
        throw too_large("brute_force: composition count exceeds " +
                        std::to_string(oracle_candidate_guard));

    oracle_result out;
    std::vector<std::int64_t> counts(n, 0);
    const auto consider = [&]() {
        const double cost = detail::evaluate_counts(kind, t, m, counts);
        ++out.num_candidates;
        if (out.best_counts.empty() || cost < out.best_cost) {
            out.best_cost = cost;
            out.best_counts = counts;
        }
    };
    const auto recurse = [&](auto&& self, std::size_t pos, std::int64_t remaining) -> void {
        if (pos + 1 == n) {
            counts[pos] = remaining;
            consider();
            counts[pos] = 0;
            return;
        }
        for (std::int64_t c = 0; c <= remaining; ++c) {
            counts[pos] = c;
            self(self, pos + 1, remaining - c);
        }
        counts[pos] = 0;
    };
    recurse(recurse, 0, m);
    return out;
}

struct trial_instance {
    target_distribution target;
    std::int64_t m = 0;
};

// Deterministic random instance for (seed, trial): n in [2,5], M in [n,12],
// Dirichlet-uniform entries rounded to 6 decimals and renormalized. Uses
// raw engine words only, so results are identical across platforms.
inline trial_instance agreement_trial(std::uint64_t seed, std::uint64_t trial) {
    std::seed_seq seq{seed, trial};
    std::mt19937_64 rng(seq);
    const auto uniform01 = [&rng]() {  // in (0, 1]
        return double((rng() >> 11) + 1) * 0x1.0p-53;
    };
    const std::size_t n = 2 + std::size_t(rng() % 4);
    const std::int64_t m = std::int64_t(n + rng() % (13 - n));
    std::vector<double> raw(n);
    double sum = 0.0;
    do {
        sum = 0.0;
        for (double& x : raw) {
            x = -std::log(uniform01());
            sum += x;
        }
    } while (sum == 0.0);
    for (double& x : raw) x = std::round(x / sum * 1e6) / 1e6;
    return {target_distribution(std::move(raw), /*normalize=*/true), m};
}

struct agreement_report {
    std::uint64_t trials = 0;
    double max_gap = 0.0;  // max |greedy cost - oracle cost| over all runs
    // worst offender, for diagnosis
    cost_kind worst_kind = cost_kind::variational_distance;
    std::int64_t worst_m = 0;
    std::vector<double> worst_target;

    friend bool operator==(const agreement_report&, const agreement_report&) = default;
};

// Runs greedy and exhaustive optimization on `trials` random instances for
// every cost kind and reports the largest cost discrepancy seen.
inline agreement_report agreement_suite(std::uint64_t seed, std::uint64_t trials) {
    agreement_report report;
    report.trials = trials;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        const trial_instance instance = agreement_trial(seed, trial);
        for (cost_kind kind : all_cost_kinds) {
            const double greedy_cost =
                evaluate(kind, instance.target, quantize(instance.target, instance.m, kind));
            const oracle_result exact = brute_force(instance.target, instance.m, kind);
            const double gap = std::abs(greedy_cost - exact.best_cost);
            if (gap > report.max_gap) {
                report.max_gap = gap;
                report.worst_kind = kind;
                report.worst_m = instance.m;
                report.worst_target = instance.target.probs();
            }
        }
    }
    return report;
}

}  // namespace mtype
