#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "giantwalk/oracle.hpp"
#include "giantwalk/stats.hpp"

using namespace giantwalk;
using Catch::Matchers::WithinAbs;

TEST_CASE("sample_graph degenerate probabilities", "[oracle]") {
    RngStream rng(1, 0);
    const ComponentStats full = sample_graph(10, 1.0, rng);
    REQUIRE(full.L1 == 10);
    REQUIRE(full.L2 == 0);
    REQUIRE(full.count == 1);
    const ComponentStats empty = sample_graph(10, 0.0, rng);
    REQUIRE(empty.L1 == 1);
    REQUIRE(empty.L2 == 1);
    REQUIRE(empty.count == 10);
    const ComponentStats single = sample_graph(1, 0.5, rng);
    REQUIRE(single.L1 == 1);
    REQUIRE(single.count == 1);
}

TEST_CASE("sample_graph validates its arguments", "[oracle]") {
    RngStream rng(1, 0);
    REQUIRE_THROWS_AS(sample_graph(0, 0.5, rng), std::domain_error);
    REQUIRE_THROWS_AS(sample_graph(10001, 0.5, rng), std::domain_error);
    REQUIRE_THROWS_AS(sample_graph(10, -0.1, rng), std::domain_error);
    REQUIRE_THROWS_AS(sample_graph(10, 1.5, rng), std::domain_error);
}

TEST_CASE("enumerate_pmf exact references", "[oracle]") {
    // n=2: L1=2 iff the single edge is present.
    for (const double p : {0.0, 0.3, 0.5, 0.9, 1.0}) {
        const ExactPmf pmf = enumerate_pmf(2, p);
        const double p2 = pmf.mass.count(2) ? pmf.mass.at(2) : 0.0;
        const double p1 = pmf.mass.count(1) ? pmf.mass.at(1) : 0.0;
        REQUIRE_THAT(p2, WithinAbs(p, 1e-15));
        REQUIRE_THAT(p1, WithinAbs(1.0 - p, 1e-15));
    }

    // n=3, p=1/2: 8 graphs, L1 counts 1:1, 2:3, 3:4.
    const ExactPmf three = enumerate_pmf(3, 0.5);
    REQUIRE_THAT(three.mass.at(1), WithinAbs(1.0 / 8.0, 1e-15));
    REQUIRE_THAT(three.mass.at(2), WithinAbs(3.0 / 8.0, 1e-15));
    REQUIRE_THAT(three.mass.at(3), WithinAbs(4.0 / 8.0, 1e-15));

    // n=4, p=1/2: all 64 graphs, counts 1, 9, 16, 38.
    const ExactPmf four = enumerate_pmf(4, 0.5);
    REQUIRE_THAT(four.mass.at(1), WithinAbs(1.0 / 64.0, 1e-14));
    REQUIRE_THAT(four.mass.at(2), WithinAbs(9.0 / 64.0, 1e-14));
    REQUIRE_THAT(four.mass.at(3), WithinAbs(16.0 / 64.0, 1e-14));
    REQUIRE_THAT(four.mass.at(4), WithinAbs(38.0 / 64.0, 1e-14));

    // Frozen references from an exact-rational reimplementation.
    const ExactPmf five = enumerate_pmf(5, 0.3);
    REQUIRE_THAT(five.mass.at(1), WithinAbs(0.0282475249, 1e-12));
    REQUIRE_THAT(five.mass.at(2), WithinAbs(0.1988856345, 1e-12));
    REQUIRE_THAT(five.mass.at(3), WithinAbs(0.25412184, 1e-12));
    REQUIRE_THAT(five.mass.at(4), WithinAbs(0.262484523, 1e-12));
    REQUIRE_THAT(five.mass.at(5), WithinAbs(0.2562604776, 1e-12));

    const ExactPmf six = enumerate_pmf(6, 0.5);
    REQUIRE_THAT(six.mass.at(1), WithinAbs(3.0517578125e-05, 1e-15));
    REQUIRE_THAT(six.mass.at(2), WithinAbs(0.002288818359375, 1e-15));
    REQUIRE_THAT(six.mass.at(3), WithinAbs(0.0146484375, 1e-14));
    REQUIRE_THAT(six.mass.at(4), WithinAbs(0.0347900390625, 1e-14));
    REQUIRE_THAT(six.mass.at(5), WithinAbs(0.13330078125, 1e-14));
    REQUIRE_THAT(six.mass.at(6), WithinAbs(0.81494140625, 1e-14));
}

TEST_CASE("enumerate_pmf degenerate and boundary cases", "[oracle]") {
    const ExactPmf one = enumerate_pmf(1, 0.7);
    REQUIRE(one.mass.size() == 1);
    REQUIRE(one.mass.at(1) == 1.0);
    // p=0 and p=1 are exact point masses; zero-mass sizes are omitted.
    const ExactPmf empty = enumerate_pmf(5, 0.0);
    REQUIRE(empty.mass.size() == 1);
    REQUIRE(empty.mass.at(1) == 1.0);
    const ExactPmf full = enumerate_pmf(5, 1.0);
    REQUIRE(full.mass.size() == 1);
    REQUIRE(full.mass.at(5) == 1.0);
    REQUIRE_THROWS_AS(enumerate_pmf(9, 0.5), std::domain_error);
    REQUIRE_THROWS_AS(enumerate_pmf(0, 0.5), std::domain_error);
    REQUIRE_THROWS_AS(enumerate_pmf(4, 1.0001), std::domain_error);
}

TEST_CASE("enumerate_pmf masses sum to one", "[oracle]") {
    for (std::int64_t n = 1; n <= 6; ++n) {
        for (const double p : {0.1, 0.5, 0.9}) {
            const ExactPmf pmf = enumerate_pmf(n, p);
            double total = 0.0;
            for (const auto& [k, mass] : pmf.mass) {
                REQUIRE(k >= 1);
                REQUIRE(k <= n);
                REQUIRE(mass > 0.0);
                total += mass;
            }
            CAPTURE(n, p);
            REQUIRE_THAT(total, WithinAbs(1.0, 1e-12));
        }
    }
}

TEST_CASE("sample_graph matches enumeration at n=4, p=0.5", "[oracle]") {
    // L1 distribution and mean component count (exact value 49/32) against
    // the exhaustive enumeration.
    const int R = 200000;
    std::vector<std::int64_t> counts(4, 0);
    double count_sum = 0.0;
    for (int r = 0; r < R; ++r) {
        RngStream rng(5150, r);
        const ComponentStats cs = sample_graph(4, 0.5, rng);
        counts[static_cast<std::size_t>(cs.L1 - 1)]++;
        count_sum += static_cast<double>(cs.count);
    }
    const ExactPmf pmf = enumerate_pmf(4, 0.5);
    std::vector<double> expected(4, 0.0);
    for (const auto& [k, mass] : pmf.mass) expected[static_cast<std::size_t>(k - 1)] = mass;
    REQUIRE(chi_square(counts, expected).p_value > 0.001);
    // sd(count) < 1, so a 4-sigma window is 4/sqrt(R).
    REQUIRE_THAT(count_sum / R, WithinAbs(49.0 / 32.0, 4.0 / std::sqrt(static_cast<double>(R))));
}
