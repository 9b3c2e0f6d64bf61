#include <doctest.h>

#include "randten/checks.hpp"

using namespace randten;

TEST_CASE("beta sandwich suite holds on random coefficients") {
    const SuiteResult result = beta_sandwich_suite(5, 1234);
    CHECK(result.lines.size() == 20);  // 5 per order, r = 2..5
    CHECK(result.violated == 0);
    CHECK(result.holds == 20);
    CHECK(!result.failed());
}

TEST_CASE("donsker-varadhan suite holds") {
    const SuiteResult result = donsker_varadhan_suite(25, 99);
    CHECK(result.lines.size() == 25);
    CHECK(result.violated == 0);
}

TEST_CASE("second moment suite agrees at modest sample counts") {
    const SuiteResult result = second_moment_suite(3, 60000, 7);
    CHECK(result.lines.size() == 3);
    CHECK(result.violated == 0);
}

TEST_CASE("symmetric comparison suite issues verdicts on small models") {
    const AscentConfig cfg{.restarts = 8};
    const SuiteResult result = symmetric_comparison_suite(2, 11, cfg, 32);
    CHECK(result.violated == 0);
    CHECK(result.holds > 0);
}

TEST_CASE("partition variance suite issues verdicts on small models") {
    const AscentConfig cfg{.restarts = 8};
    const SuiteResult result = partition_variance_suite(2, 13, cfg, 32);
    CHECK(result.violated == 0);
    CHECK(result.holds > 0);
}
