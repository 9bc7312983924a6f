#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <functional>
#include <queue>
#include <utility>
#include <vector>

#include "mtype/errors.hpp"

namespace mtype {

// Anything able to drive the greedy allocator: delta(i, k) is the increment
// cost of taking the k-th unit in queue i (k >= 1), prealloc(i) the number
// of units queue i must receive up front. Optimality of the allocator
// requires delta(i, k) non-decreasing in k; that is a property of the
// source, checked by tests rather than enforced here. A +inf delta marks a
// unit that must never be taken while finite alternatives remain; NaN is
// rejected.
template <typename S>
concept delta_source = requires(const S& s, std::size_t i, std::int64_t k) {
    { s.delta(i, k) } -> std::convertible_to<double>;
    { s.prealloc(i) } -> std::convertible_to<std::int64_t>;
};

struct allocation_result {
    std::vector<std::int64_t> counts;  // final allocation, sums to M
    std::int64_t steps_taken = 0;      // M - ||prealloc||_1
    double cost_sum = 0.0;             // sum of the selected delta values
};

struct trace_step {
    std::int64_t step = 0;    // 1-based position in the selection sequence
    std::size_t index = 0;    // chosen queue
    double delta = 0.0;       // its increment cost

    friend bool operator==(const trace_step&, const trace_step&) = default;
};

namespace detail {

template <delta_source S, typename OnPick>
allocation_result greedy_run(const S& source, std::size_t n, std::int64_t m, OnPick&& on_pick) {
    if (n == 0)
        throw invalid_input("greedy_allocate: need at least one queue");
    if (m < 1)
        throw invalid_input("greedy_allocate: M must be positive");

    allocation_result out;
    out.counts.resize(n);
    std::int64_t allocated = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t c0 = source.prealloc(i);
        if (c0 < 0)
            throw invalid_input("greedy_allocate: negative pre-allocation");
        out.counts[i] = c0;
        allocated += c0;
    }
    if (allocated > m)
        throw infeasible("greedy_allocate: pre-allocation exceeds M");
    out.steps_taken = m - allocated;
    if (out.steps_taken == 0) return out;

    auto next_delta = [&](std::size_t i) {
        const double d = source.delta(i, out.counts[i] + 1);
        if (std::isnan(d))
            throw numeric_error("greedy_allocate: delta evaluated to NaN");
        return d;
    };

    // One live candidate per queue, keyed by (delta, index); the pair
    // ordering realizes the lowest-index tie-break exactly.
    using candidate = std::pair<double, std::size_t>;
    std::vector<candidate> initial;
    initial.reserve(n);
    for (std::size_t i = 0; i < n; ++i) initial.emplace_back(next_delta(i), i);
    std::priority_queue<candidate, std::vector<candidate>, std::greater<>> heap(
        std::greater<>{}, std::move(initial));

    for (std::int64_t step = 1; step <= out.steps_taken; ++step) {
        const auto [d, j] = heap.top();
        heap.pop();
        ++out.counts[j];
        out.cost_sum += d;
        on_pick(step, j, d);
        if (step < out.steps_taken) heap.emplace(next_delta(j), j);
    }
    return out;
}

}  // namespace detail

// Greedy allocation of M units over n queues: repeat M - ||prealloc||_1
// times, each time taking the unit with the smallest increment cost
// (lowest index on ties). For non-decreasing deltas the result minimizes
// the summed increment cost over all feasible final allocations.
template <delta_source S>
allocation_result greedy_allocate(const S& source, std::size_t n, std::int64_t m) {
    return detail::greedy_run(source, n, m, [](std::int64_t, std::size_t, double) {});
}

// The step-by-step selection sequence of greedy_allocate; replaying it onto
// the pre-allocation reproduces the final counts.
template <delta_source S>
std::vector<trace_step> selection_trace(const S& source, std::size_t n, std::int64_t m) {
    std::vector<trace_step> trace;
    detail::greedy_run(source, n, m, [&](std::int64_t step, std::size_t index, double d) {
        trace.push_back({step, index, d});
    });
    return trace;
}

}  // namespace mtype
