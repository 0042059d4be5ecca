#include <catch2/catch_amalgamated.hpp>

#include "bmatrix/complexity.hpp"
#include "oracle.hpp"

using namespace bmx;

TEST_CASE("binomial coefficients match Pascal's triangle") {
    CHECK(binomial(64, 2) == 2016);
    CHECK(binomial(64, 2) == oracle::binomial(64, 2));
    CHECK(binomial(10, 0) == 1);
    CHECK(binomial(4, 3) == 4);
    CHECK_THROWS_AS(binomial(3, 4), std::domain_error);

    for (unsigned n = 0; n <= 40; ++n) {
        for (unsigned k = 0; k <= n; ++k) {
            CHECK(binomial(n, k) == oracle::binomial(n, k));
        }
    }
    // overflow-safe well past 64 bits
    CHECK(binomial(128, 64) == BigInt("23951146041928082866135587776380551750"));
}

TEST_CASE("classical sweep cost") {
    // term-by-term: 64c1*2 + 64c2*4 + 64c3*8 + 64c4*16
    const BigInt by_terms = binomial(64, 1) * 2 + binomial(64, 2) * 4 + binomial(64, 3) * 8 +
                            binomial(64, 4) * 16;
    CHECK(cost_classical(64, 4) == by_terms);
    CHECK(cost_classical(64, 4) == 10507520);

    CHECK(cost_classical(1, 1) == 2);
    CHECK(cost_classical(4, 4) == cost_active(4));
    CHECK_THROWS_AS(cost_classical(4, 5), std::domain_error);
    CHECK_THROWS_AS(cost_classical(4, 0), std::domain_error);
}

TEST_CASE("active-sites sweep cost and the 3^r - 1 identity") {
    CHECK(cost_active(4) == 80);  // 8 + 24 + 32 + 16
    CHECK(cost_active(1) == 2);
    CHECK(cost_active(2) == 8);
    CHECK_THROWS_AS(cost_active(0), std::domain_error);

    BigInt pow3 = 1;
    for (unsigned r = 1; r <= 20; ++r) {
        pow3 *= 3;
        CHECK(cost_active(r) == pow3 - 1);
        CHECK(cost_classical(r, r) == cost_active(r));
    }
}

TEST_CASE("costs are strictly increasing in n and r") {
    for (unsigned n = 2; n <= 24; ++n) {
        for (unsigned r = 1; r <= n; ++r) {
            CHECK(cost_classical(n, r) > cost_classical(n - 1, std::min(r, n - 1)));
            if (r >= 2) CHECK(cost_classical(n, r) > cost_classical(n, r - 1));
        }
    }
}

TEST_CASE("literal enumeration of stimulations matches the formulas") {
    for (unsigned n = 1; n <= 6; ++n) {
        for (unsigned r = 1; r <= std::min(n, 3u); ++r) {
            CHECK(cost_classical(n, r) == oracle::count_stimulations(n, r));
        }
    }
    for (unsigned r = 1; r <= 3; ++r) {
        CHECK(cost_active(r) == oracle::count_stimulations(r, r));
    }
}

TEST_CASE("cost report carries the classical/active ratio") {
    const CostReport report = cost_report(64, 4);
    CHECK(report.n == 64);
    CHECK(report.r == 4);
    CHECK(report.classical_ops == 10507520);
    CHECK(report.active_ops == 80);
    CHECK(report.ratio == Catch::Approx(10507520.0 / 80.0));
    CHECK(report.classical_ops >= report.active_ops);
}
