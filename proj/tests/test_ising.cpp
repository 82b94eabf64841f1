#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "gpas/errors.hpp"
#include "gpas/ising.hpp"
#include "gpas/stats.hpp"
#include "oracles.hpp"

using gpas::ising::Graph;

namespace {

std::vector<std::pair<int, int>> as_pairs(const Graph& g) {
    std::vector<std::pair<int, int>> out;
    for (auto [u, v] : g.edges()) out.emplace_back(static_cast<int>(u), static_cast<int>(v));
    return out;
}

}  // namespace

TEST_SUITE("ising") {

TEST_CASE("lattice edge counts and structure") {
    for (std::size_t w = 1; w <= 5; ++w) {
        for (std::size_t h = 1; h <= 5; ++h) {
            const auto g = Graph::lattice(w, h);
            CHECK(g.vertex_count() == w * h);
            CHECK(g.edge_count() == w * (h - 1) + h * (w - 1));
            for (auto [u, v] : g.edges()) CHECK(u < v);
        }
    }
    CHECK_THROWS_AS(Graph::lattice(0, 3), gpas::DomainError);
}

TEST_CASE("graph validation") {
    CHECK_THROWS_AS(Graph(3, {{0, 0}}), gpas::DomainError);
    CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), gpas::DomainError);
    CHECK_THROWS_AS(Graph(3, {{0, 3}}), gpas::DomainError);
}

TEST_CASE("edge list parsing") {
    std::istringstream in("# triangle plus a pendant\n0 1\n1 2\n\n2 0\n2 3\n");
    const auto g = Graph::from_edge_list(in);
    CHECK(g.vertex_count() == 4);
    CHECK(g.edge_count() == 4);

    std::istringstream padded("0 1\n");
    CHECK(Graph::from_edge_list(padded, 6).vertex_count() == 6);

    std::istringstream bad("0 1\n1 x\n");
    CHECK_THROWS_AS(Graph::from_edge_list(bad), gpas::DomainError);
    std::istringstream extra("0 1 2\n");
    CHECK_THROWS_AS(Graph::from_edge_list(extra), gpas::DomainError);
    std::istringstream negative("-1 2\n");
    CHECK_THROWS_AS(Graph::from_edge_list(negative), gpas::DomainError);
}

TEST_CASE("histograms of tiny lattices") {
    const auto one_edge = gpas::ising::build_histogram(Graph::lattice(1, 2));
    CHECK(one_edge.counts == std::vector<std::uint64_t>{2, 2});

    const auto square = gpas::ising::build_histogram(Graph::lattice(2, 2));
    const auto oracle = oracle::enumerate_levels(4, as_pairs(Graph::lattice(2, 2)));
    CHECK(square.counts == oracle);
    CHECK(square.counts == std::vector<std::uint64_t>{2, 0, 12, 0, 2});

    const auto big = gpas::ising::build_histogram(Graph::lattice(4, 4));
    CHECK(big.total() == 65536);
    CHECK(big.counts.back() >= 2);
    CHECK(big.counts == oracle::enumerate_levels(16, as_pairs(Graph::lattice(4, 4))));
}

TEST_CASE("parallel and serial enumeration agree") {
    std::vector<Graph> graphs{Graph::lattice(3, 4), Graph::lattice(5, 4), Graph::lattice(1, 7),
                              Graph(6, {{0, 5}, {1, 3}, {2, 4}, {0, 2}, {3, 5}, {1, 4}, {0, 3}}),
                              Graph(5, {})};
    for (const auto& g : graphs) {
        const auto a = gpas::ising::build_histogram(g);
        const auto b = gpas::ising::build_histogram_serial(g);
        CHECK(a.counts == b.counts);
        CHECK(a.total() == (std::uint64_t{1} << g.vertex_count()));
        CHECK(a.counts.back() >= 2);
    }
}

TEST_CASE("enumeration bound") {
    CHECK_THROWS_AS(gpas::ising::build_histogram(Graph::lattice(5, 5)), gpas::SizeExceeded);
    CHECK_THROWS_AS(gpas::ising::build_histogram_serial(Graph::lattice(5, 5)),
                    gpas::SizeExceeded);
}

TEST_CASE("partition function values") {
    for (auto [w, h] : {std::pair{1, 1}, std::pair{2, 2}, std::pair{3, 4}, std::pair{4, 4}}) {
        const auto hist = gpas::ising::build_histogram(Graph::lattice(w, h));
        CHECK(gpas::ising::partition_function(hist, 0.0) == std::ldexp(1.0, w * h));
    }
    const auto square = gpas::ising::build_histogram(Graph::lattice(2, 2));
    CHECK(gpas::ising::partition_function(square, 1.0) ==
          doctest::Approx(2 * std::exp(4.0) + 12 * std::exp(2.0) + 2).epsilon(1e-14));

    const auto big = gpas::ising::build_histogram(Graph::lattice(4, 4));
    const double z1 = gpas::ising::partition_function(big, 1.0);
    // Published figures 3.219e11 and 15.40 are these values truncated.
    CHECK(std::trunc(z1 / 1e8) / 1e3 == doctest::Approx(3.219));
    CHECK(z1 == doctest::Approx(321965754390.78).epsilon(1e-12));
    const double log_ratio = std::log(z1 / 65536.0);
    CHECK(std::trunc(log_ratio * 100.0) / 100.0 == doctest::Approx(15.40));
    CHECK(log_ratio == doctest::Approx(15.407356135).epsilon(1e-9));
    CHECK(gpas::ising::log_partition_function(big, 1.0) == doctest::Approx(std::log(z1)).epsilon(1e-14));
}

TEST_CASE("partition function is strictly increasing in beta") {
    const auto hist = gpas::ising::build_histogram(Graph::lattice(3, 3));
    double prev = 0.0;
    for (int i = -20; i <= 20; ++i) {
        const double z = gpas::ising::partition_function(hist, 0.1 * i);
        CHECK(z > prev);
        prev = z;
    }
}

TEST_CASE("sampling an edgeless graph always gives 0") {
    const auto hist = gpas::ising::build_histogram(Graph(4, {}));
    CHECK(hist.counts == std::vector<std::uint64_t>{16});
    gpas::RngStream rng(1, 0);
    for (int i = 0; i < 100; ++i) CHECK(gpas::ising::sample_hamiltonian(hist, 2.0, rng) == 0);
}

TEST_CASE("level frequencies at beta = 0") {
    const auto hist = gpas::ising::build_histogram(Graph::lattice(2, 2));
    gpas::RngStream rng(2, 0);
    const int n = 100000;
    std::vector<double> freq(5, 0.0);
    for (int i = 0; i < n; ++i) freq[gpas::ising::sample_hamiltonian(hist, 0.0, rng)] += 1.0;
    CHECK(freq[1] == 0.0);
    CHECK(freq[3] == 0.0);
    for (auto [level, p] : {std::pair{4, 2.0 / 16}, std::pair{2, 12.0 / 16}, std::pair{0, 2.0 / 16}}) {
        CAPTURE(level);
        CHECK(std::fabs(freq[level] / n - p) <= 3.0 * gpas::stats::binomial_sigma(p, n));
    }
}

TEST_CASE("mean level at beta = 1") {
    const auto hist = gpas::ising::build_histogram(Graph::lattice(2, 2));
    const double z = 2 * std::exp(4.0) + 12 * std::exp(2.0) + 2;
    const double mean = (4 * 2 * std::exp(4.0) + 2 * 12 * std::exp(2.0)) / z;
    const double second = (16 * 2 * std::exp(4.0) + 4 * 12 * std::exp(2.0)) / z;
    const double sd = std::sqrt(second - mean * mean);
    gpas::RngStream rng(3, 0);
    const int n = 100000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += static_cast<double>(gpas::ising::sample_hamiltonian(hist, 1.0, rng));
    CHECK(std::fabs(sum / n - mean) <= 3.0 * sd / std::sqrt(n));
}

TEST_CASE("sampling survives extreme beta") {
    const auto hist = gpas::ising::build_histogram(Graph::lattice(4, 4));
    gpas::RngStream rng(4, 0);
    CHECK(gpas::ising::sample_hamiltonian(hist, 1000.0, rng) == 24);
    CHECK(gpas::ising::sample_hamiltonian(hist, -1000.0, rng) == 0);
    CHECK(std::isfinite(gpas::ising::log_partition_function(hist, 1000.0)));
}

TEST_CASE("Ising family contract") {
    const gpas::ising::IsingFamily family(gpas::ising::build_histogram(Graph::lattice(3, 2)));
    CHECK(family.beta_inner() < family.beta_outer());
    CHECK(family.max_hamiltonian() == 7.0);
    gpas::RngStream rng(5, 0);
    for (double beta : {-3.0, 0.0, 0.4, 1.0}) {
        for (int i = 0; i < 200; ++i) {
            const double h = family.sample_hamiltonian(beta, rng);
            REQUIRE(h >= 0.0);
            REQUIRE(h <= family.max_hamiltonian());
        }
    }
    CHECK_THROWS_AS(gpas::ising::IsingFamily(family.histogram(), 0.0, 1.0), gpas::DomainError);
}

}
