#include "doctest.h"
#include "gpas/validation.hpp"

TEST_SUITE("validation") {

TEST_CASE("under-powered runs warn but pass") {
    const auto results = gpas::run_validation(10, 0);
    REQUIRE_FALSE(results.empty());
    for (const auto& r : results) {
        CAPTURE(r.name);
        CHECK(r.passed);
        CHECK(r.warning.find("insufficient replicates") != std::string::npos);
    }
}

TEST_CASE("default-size suite passes across a seed sweep") {
    int passing = 0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        bool all = true;
        for (const auto& r : gpas::run_validation(1000, seed)) {
            CAPTURE(seed);
            CAPTURE(r.name);
            CHECK(r.passed);
            CHECK(r.warning.empty());
            all = all && r.passed;
        }
        passing += all ? 1 : 0;
    }
    CHECK(passing == 5);
}

}
