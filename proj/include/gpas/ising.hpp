#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "gpas/rng.hpp"
#include "gpas/tpa.hpp"

namespace gpas::ising {

inline constexpr std::size_t kMaxEnumerationVertices = 24;

/// Undirected simple graph on vertices 0..vertex_count-1.
class Graph {
public:
    using Edge = std::pair<std::uint32_t, std::uint32_t>;

    /// Throws DomainError on self-loops, duplicate edges or out-of-range ends.
    Graph(std::size_t vertex_count, std::vector<Edge> edges);

    /// width x height grid, 4-neighbour, free boundary. Vertex (x, y) is y*width + x.
    static Graph lattice(std::size_t width, std::size_t height);

    /// Parses "u v" pairs, one per line, 0-indexed. Blank lines and lines
    /// starting with '#' are skipped. The vertex count is max index + 1 unless
    /// `vertex_count` is given.
    static Graph from_edge_list(std::istream& in, std::size_t vertex_count = 0);

    std::size_t vertex_count() const noexcept { return vertex_count_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

private:
    std::size_t vertex_count_;
    std::vector<Edge> edges_;  // normalized so first < second
};

/// counts[h] = number of 0/1 configurations with exactly h agreeing edges.
struct HamiltonianHistogram {
    std::size_t vertex_count = 0;
    std::vector<std::uint64_t> counts;

    std::size_t edge_count() const noexcept { return counts.empty() ? 0 : counts.size() - 1; }
    std::uint64_t total() const noexcept;
};

/// Exact histogram by enumerating all 2^V configurations (OpenMP-parallel).
/// Throws SizeExceeded above kMaxEnumerationVertices.
HamiltonianHistogram build_histogram(const Graph& graph);

/// Single-threaded reference for build_histogram; one edge at a time.
HamiltonianHistogram build_histogram_serial(const Graph& graph);

/// Z(beta) = sum_h counts[h] exp(beta h).
double partition_function(const HamiltonianHistogram& hist, double beta);

/// ln Z(beta), evaluated in log space.
double log_partition_function(const HamiltonianHistogram& hist, double beta);

/// Draw H(X) for X ~ Gibbs(beta): level h with probability counts[h] e^{beta h} / Z(beta).
std::uint64_t sample_hamiltonian(const HamiltonianHistogram& hist, double beta, RngStream& rng);

/// Nested Gibbs family backed by an exact level histogram. Immutable.
class IsingFamily final : public NestedGibbsFamily {
public:
    explicit IsingFamily(HamiltonianHistogram hist, double beta_outer = 1.0,
                         double beta_inner = 0.0);

    double sample_hamiltonian(double beta, RngStream& rng) const override;
    double beta_outer() const noexcept override { return beta_outer_; }
    double beta_inner() const noexcept override { return beta_inner_; }
    double max_hamiltonian() const noexcept override {
        return static_cast<double>(hist_.edge_count());
    }

    const HamiltonianHistogram& histogram() const noexcept { return hist_; }

    /// Exact ln(Z(beta_outer) / Z(beta_inner)).
    double log_ratio() const;

private:
    HamiltonianHistogram hist_;
    double beta_outer_;
    double beta_inner_;
};

}  // namespace gpas::ising
