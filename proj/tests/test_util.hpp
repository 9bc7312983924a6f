#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

// Shared helpers for the test suites. Random draws use raw engine words
// only, so every suite is reproducible across platforms.
namespace testutil {

// Uniform in (0, 1].
inline double uniform01(std::mt19937_64& rng) {
    return double((rng() >> 11) + 1) * 0x1.0p-53;
}

// Strictly positive point on the simplex (Dirichlet-uniform).
inline std::vector<double> random_positive_target(std::mt19937_64& rng, std::size_t n) {
    std::vector<double> g(n);
    double sum = 0.0;
    do {
        sum = 0.0;
        for (double& x : g) {
            x = -std::log(uniform01(rng));
            sum += x;
        }
    } while (sum == 0.0);
    for (double& x : g) x /= sum;
    return g;
}

// Visits every composition of m into n nonnegative parts, in lexicographic
// order. Test-side ground truth, independent of the library's enumerator.
template <typename Fn>
void for_each_composition(std::int64_t m, std::size_t n, Fn&& fn) {
    std::vector<std::int64_t> counts(n, 0);
    const auto recurse = [&](auto&& self, std::size_t pos, std::int64_t remaining) -> void {
        if (pos + 1 == n) {
            counts[pos] = remaining;
            fn(counts);
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
}

}  // namespace testutil
