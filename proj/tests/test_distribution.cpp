#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include <mtype/distribution.hpp>

#include "test_util.hpp"

using namespace mtype;

TEST_CASE("validate_target accepts exact simplex points") {
    const target_distribution t = validate_target({0.5, 0.5});
    REQUIRE(t.size() == 2);
    REQUIRE(t[0] == 0.5);
    REQUIRE(t[1] == 0.5);
    REQUIRE(t.support_size() == 2);
}

TEST_CASE("validate_target rescales when normalization is requested") {
    const target_distribution t = validate_target({2.0, 2.0}, /*normalize=*/true);
    REQUIRE(t[0] == 0.5);
    REQUIRE(t[1] == 0.5);
}

TEST_CASE("validate_target rejects negative entries regardless of flags") {
    REQUIRE_THROWS_AS(validate_target({0.5, -0.1, 0.6}), invalid_input);
    REQUIRE_THROWS_AS(validate_target({0.5, -0.1, 0.6}, true), invalid_input);
}

TEST_CASE("validate_target error paths") {
    REQUIRE_THROWS_AS(validate_target({}), invalid_input);
    REQUIRE_THROWS_AS(validate_target({0.5, 0.4}), invalid_input);        // sum far from 1
    REQUIRE_THROWS_AS(validate_target({0.0, 0.0}, true), invalid_input);  // zero sum
    REQUIRE_THROWS_AS(validate_target({0.5, std::nan("")}), invalid_input);
}

TEST_CASE("validate_target is idempotent") {
    std::mt19937_64 rng(101);
    for (int round = 0; round < 20; ++round) {
        const std::size_t n = 1 + rng() % 8;
        const target_distribution t(testutil::random_positive_target(rng, n));
        const target_distribution again = validate_target(t.probs());
        REQUIRE(again == t);
    }
}

TEST_CASE("entropy of simple distributions") {
    REQUIRE(entropy(validate_target({1.0})) == 0.0);
    REQUIRE(std::abs(entropy(validate_target({0.5, 0.5})) - std::log(2.0)) < 1e-15);
    // direct summation over the three masses
    const double expected = -(0.85 * std::log(0.85) + 2 * 0.075 * std::log(0.075));
    const double h = entropy(validate_target({0.85, 0.075, 0.075}));
    REQUIRE(std::abs(h - expected) < 1e-15);
    REQUIRE(std::abs(h - 0.5266811648899827) < 1e-12);
}

TEST_CASE("entropy stays inside [0, log n]") {
    std::mt19937_64 rng(202);
    for (int round = 0; round < 50; ++round) {
        const std::size_t n = 1 + rng() % 10;
        const target_distribution t(testutil::random_positive_target(rng, n));
        const double h = entropy(t);
        REQUIRE(h >= 0.0);
        REQUIRE(h <= std::log(double(n)) + 1e-12);
    }
}

TEST_CASE("uniform entropy equals log n") {
    for (std::size_t n : {2, 3, 5, 17, 64, 256}) {
        const target_distribution t(std::vector<double>(n, 1.0 / double(n)), true);
        REQUIRE(std::abs(entropy(t) - std::log(double(n))) < 1e-12);
    }
}

TEST_CASE("zero entries are kept, support is counted") {
    const target_distribution t = validate_target({0.5, 0.0, 0.5, 0.0});
    REQUIRE(t.size() == 4);
    REQUIRE(t.support_size() == 2);
    REQUIRE(t.min_positive() == 0.5);
    const target_distribution r = restrict_to_support(t);
    REQUIRE(r.size() == 2);
    REQUIRE(r[0] == 0.5);
    REQUIRE(r[1] == 0.5);
}

TEST_CASE("quantized_distribution validates its counts") {
    const quantized_distribution q(4, {2, 1, 1});
    REQUIRE(q.prob(0) == 0.5);
    REQUIRE(q.probs() == std::vector<double>{0.5, 0.25, 0.25});
    REQUIRE_THROWS_AS(quantized_distribution(4, {2, 1}), invalid_input);      // sums to 3
    REQUIRE_THROWS_AS(quantized_distribution(4, {5, -1}), invalid_input);     // out of range
    REQUIRE_THROWS_AS(quantized_distribution(0, {0}), invalid_input);         // M < 1
    REQUIRE_THROWS_AS(quantized_distribution(4, {}), invalid_input);
}

TEST_CASE("divergence helpers") {
    const std::vector<double> a{0.5, 0.5};
    const std::vector<double> b{0.25, 0.75};
    REQUIRE(kl_divergence(a, a) == 0.0);
    REQUIRE(std::abs(kl_divergence(a, b) -
                     (0.5 * std::log(0.5 / 0.25) + 0.5 * std::log(0.5 / 0.75))) < 1e-15);
    REQUIRE(std::isinf(kl_divergence(a, std::vector<double>{1.0, 0.0})));
    REQUIRE(l1_distance(a, b) == 0.5);
    REQUIRE_THROWS_AS(kl_divergence(a, std::vector<double>{1.0}), invalid_input);
    REQUIRE_THROWS_AS(l1_distance(a, std::vector<double>{1.0}), invalid_input);
}

TEST_CASE("cost kind names round-trip") {
    for (cost_kind kind : all_cost_kinds) {
        const auto parsed = cost_kind_from_string(to_string(kind));
        REQUIRE(parsed.has_value());
        REQUIRE(*parsed == kind);
    }
    REQUIRE_FALSE(cost_kind_from_string("nonsense").has_value());
}
