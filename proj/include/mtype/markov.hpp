#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "mtype/costs.hpp"
#include "mtype/distribution.hpp"

namespace mtype {

// A row-stochastic transition matrix; every row is a validated
// distribution over the n states.
class markov_model {
public:
    explicit markov_model(const std::vector<std::vector<double>>& rows) {
        if (rows.empty())
            throw invalid_input("markov_model: empty matrix");
        const std::size_t n = rows.size();
        rows_.reserve(n);
        for (const auto& row : rows) {
            if (row.size() != n)
                throw invalid_input("markov_model: matrix must be square");
            rows_.emplace_back(row);
        }
    }

    std::size_t states() const { return rows_.size(); }
    const target_distribution& row(std::size_t i) const { return rows_[i]; }
    double entry(std::size_t i, std::size_t j) const { return rows_[i][j]; }

private:
    std::vector<target_distribution> rows_;
};

// Strong connectivity of the positive-entry digraph, via one forward and
// one backward reachability sweep from state 0.
inline bool is_irreducible(const markov_model& chain) {
    const std::size_t n = chain.states();
    const auto sweep = [&](bool forward) {
        std::vector<char> seen(n, 0);
        std::vector<std::size_t> stack{0};
        seen[0] = 1;
        std::size_t visited = 1;
        while (!stack.empty()) {
            const std::size_t u = stack.back();
            stack.pop_back();
            for (std::size_t v = 0; v < n; ++v) {
                const double w = forward ? chain.entry(u, v) : chain.entry(v, u);
                if (w > 0.0 && !seen[v]) {
                    seen[v] = 1;
                    ++visited;
                    stack.push_back(v);
                }
            }
        }
        return visited == n;
    };
    return sweep(true) && sweep(false);
}

// Unique mu with mu T = mu, mu >= 0, sum mu = 1. Dense solve of
// (T' - I) mu = 0 with the last equation replaced by the normalization;
// Gaussian elimination with partial pivoting. Accepted only if the
// residual ||mu T - mu||_1 stays within 1e-10.
inline target_distribution stationary_distribution(const markov_model& chain) {
    if (!is_irreducible(chain))
        throw invalid_input("stationary_distribution: chain is not irreducible");
    const std::size_t n = chain.states();

    std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
    for (std::size_t r = 0; r + 1 < n; ++r) {
        for (std::size_t c = 0; c < n; ++c)
            a[r][c] = chain.entry(c, r) - (r == c ? 1.0 : 0.0);
    }
    for (std::size_t c = 0; c < n; ++c) a[n - 1][c] = 1.0;
    a[n - 1][n] = 1.0;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        std::swap(a[col], a[pivot]);
        if (a[col][col] == 0.0)
            throw numeric_error("stationary_distribution: singular system");
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = a[r][col] / a[col][col];
            if (factor == 0.0) continue;
            for (std::size_t c = col; c <= n; ++c) a[r][c] -= factor * a[col][c];
        }
    }
    std::vector<double> mu(n);
    for (std::size_t r = n; r-- > 0;) {
        double s = a[r][n];
        for (std::size_t c = r + 1; c < n; ++c) s -= a[r][c] * mu[c];
        mu[r] = s / a[r][r];
    }
    for (double& x : mu)
        if (x < 0.0 && x > -1e-12) x = 0.0;  // scrub elimination noise

    target_distribution result(std::move(mu), /*normalize=*/true);
    double residual = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double column = 0.0;
        for (std::size_t i = 0; i < n; ++i) column += result[i] * chain.entry(i, j);
        residual += std::abs(column - result[j]);
    }
    if (residual > 1e-10)
        throw numeric_error("stationary_distribution: residual exceeds 1e-10");
    return result;
}

// Row-wise M-type quantization of a transition matrix; every row of counts
// sums to M.
struct quantized_markov {
    std::int64_t m = 0;
    std::vector<std::vector<std::int64_t>> count_rows;

    std::size_t states() const { return count_rows.size(); }
    double prob(std::size_t i, std::size_t j) const {
        return double(count_rows[i][j]) / double(m);
    }
    std::vector<double> row_probs(std::size_t i) const {
        std::vector<double> p(count_rows[i].size());
        for (std::size_t j = 0; j < p.size(); ++j) p[j] = prob(i, j);
        return p;
    }
};

// Positivity patterns of source and quantized matrix coincide, i.e. both
// chains share one transition graph.
inline bool same_transition_graph(const markov_model& chain, const quantized_markov& q) {
    const std::size_t n = chain.states();
    if (q.count_rows.size() != n) return false;
    for (std::size_t i = 0; i < n; ++i) {
        if (q.count_rows[i].size() != n) return false;
        for (std::size_t j = 0; j < n; ++j)
            if ((chain.entry(i, j) > 0.0) != (q.count_rows[i][j] > 0)) return false;
    }
    return true;
}

// Quantizes each row separately under D(row || .). Requires M at least the
// largest row support; the quantized chain then has the same transition
// graph as the source, so irreducibility carries over.
inline quantized_markov quantize_markov(const markov_model& chain, std::int64_t m) {
    const std::size_t n = chain.states();
    std::size_t max_support = 0;
    for (std::size_t i = 0; i < n; ++i)
        max_support = std::max(max_support, chain.row(i).support_size());
    if (m < 1 || std::uint64_t(m) < max_support)
        throw infeasible("quantize_markov: M below the largest row support");

    quantized_markov out;
    out.m = m;
    out.count_rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.count_rows.push_back(quantize(chain.row(i), m, cost_kind::kl_target_first).counts());
    if (!same_transition_graph(chain, out))
        throw numeric_error("quantize_markov: transition graph not preserved");
    return out;
}

// Informational divergence rate between the source chain and a quantized
// counterpart: sum_i mu_i D(row_i(T) || row_i(P)) with mu the stationary
// distribution of the source.
inline double divergence_rate(const markov_model& chain, const quantized_markov& q) {
    const std::size_t n = chain.states();
    if (q.count_rows.size() != n || q.m < 1)
        throw invalid_input("divergence_rate: dimension mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        if (q.count_rows[i].size() != n)
            throw invalid_input("divergence_rate: dimension mismatch");
        for (std::size_t j = 0; j < n; ++j)
            if (chain.entry(i, j) > 0.0 && q.count_rows[i][j] == 0)
                throw invalid_input("divergence_rate: quantized chain lacks mass on a "
                                    "transition of the source");
    }
    const target_distribution mu = stationary_distribution(chain);
    double rate = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        rate += mu[i] * kl_divergence(chain.row(i).probs(), q.row_probs(i));
    return rate;
}

}  // namespace mtype
