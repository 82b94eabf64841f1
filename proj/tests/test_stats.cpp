#include <cmath>
#include <vector>

#include "doctest.h"
#include "gpas/stats.hpp"

TEST_SUITE("stats") {

TEST_CASE("summary") {
    const std::vector<double> x{1, 2, 3, 4};
    const auto s = gpas::stats::summarize(x);
    CHECK(s.mean == 2.5);
    CHECK(s.variance == doctest::Approx(5.0 / 3.0));
    CHECK(gpas::stats::summarize(std::vector<double>{7.0}).variance == 0.0);
}

TEST_CASE("one-sample KS statistic by hand") {
    // Sample {0.1, 0.5, 0.9} against U(0,1): max gap is 1/3 - 0.1... = 0.2333 at 0.1.
    const std::vector<double> x{0.9, 0.1, 0.5};
    const double d = gpas::stats::ks_statistic(x, [](double t) { return t; });
    CHECK(d == doctest::Approx(0.2333333333));
}

TEST_CASE("two-sample KS statistic by hand") {
    const std::vector<double> a{1, 2, 3}, b{4, 5, 6};
    CHECK(gpas::stats::ks_two_sample(a, b) == 1.0);
    const std::vector<double> c{1, 3, 5}, d{2, 4, 6};
    CHECK(gpas::stats::ks_two_sample(c, d) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("critical values and z") {
    CHECK(gpas::stats::ks_critical(0.001, 1) == doctest::Approx(1.9495).epsilon(1e-4));
    CHECK(gpas::stats::two_sided_z(0.001) == doctest::Approx(3.2905).epsilon(1e-4));
    CHECK(gpas::stats::two_sided_z(0.05) == doctest::Approx(1.95996).epsilon(1e-5));
}

TEST_CASE("chi-square against a fair die shape") {
    // Counts exactly proportional to the pmf give statistic 0, p = 1.
    std::vector<std::uint64_t> obs;
    for (std::uint64_t v = 0; v < 4; ++v)
        for (int i = 0; i < 25; ++i) obs.push_back(v);
    const auto chi = gpas::stats::chi_square_gof(obs, [](std::uint64_t i) { return i < 4 ? 0.25 : 0.0; });
    CHECK(chi.statistic == doctest::Approx(0.0));
    CHECK(chi.dof == 3);
    CHECK(chi.p_value == doctest::Approx(1.0));

    // Everything in one cell: statistic 300 on 3 dof.
    std::vector<std::uint64_t> skew(100, 0);
    const auto bad = gpas::stats::chi_square_gof(skew, [](std::uint64_t i) { return i < 4 ? 0.25 : 0.0; });
    CHECK(bad.p_value < 1e-10);
}

TEST_CASE("poisson pmf") {
    CHECK(gpas::stats::poisson_pmf(3.0, 0) == doctest::Approx(std::exp(-3.0)));
    CHECK(gpas::stats::poisson_pmf(3.0, 4) == doctest::Approx(std::exp(-3.0) * 81.0 / 24.0));
    CHECK(gpas::stats::poisson_pmf(0.0, 0) == 1.0);
}

}
