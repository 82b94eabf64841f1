#include "gpas/ising.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "gpas/errors.hpp"

namespace gpas::ising {

Graph::Graph(std::size_t vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
    std::set<Edge> seen;
    for (auto& [u, v] : edges_) {
        if (u == v) throw DomainError("graph: self-loop at vertex " + std::to_string(u));
        if (u >= vertex_count_ || v >= vertex_count_)
            throw DomainError("graph: edge endpoint out of range");
        if (u > v) std::swap(u, v);
        if (!seen.insert({u, v}).second)
            throw DomainError("graph: duplicate edge " + std::to_string(u) + " " +
                              std::to_string(v));
    }
}

Graph Graph::lattice(std::size_t width, std::size_t height) {
    if (width == 0 || height == 0) throw DomainError("lattice: width and height must be positive");
    std::vector<Edge> edges;
    for (std::size_t y = 0; y < height; ++y) {
        for (std::size_t x = 0; x < width; ++x) {
            const auto v = static_cast<std::uint32_t>(y * width + x);
            if (x + 1 < width) edges.emplace_back(v, v + 1);
            if (y + 1 < height) edges.emplace_back(v, static_cast<std::uint32_t>(v + width));
        }
    }
    return Graph(width * height, std::move(edges));
}

Graph Graph::from_edge_list(std::istream& in, std::size_t vertex_count) {
    std::vector<Edge> edges;
    std::size_t max_index = 0;
    bool any = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream fields(line);
        long long u = -1, v = -1;
        std::string extra;
        if (!(fields >> u >> v) || (fields >> extra) || u < 0 || v < 0)
            throw DomainError("edge list: malformed line " + std::to_string(line_no));
        edges.emplace_back(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
        max_index = std::max<std::size_t>(max_index, static_cast<std::size_t>(std::max(u, v)));
        any = true;
    }
    const std::size_t inferred = any ? max_index + 1 : 0;
    if (vertex_count == 0) vertex_count = inferred;
    if (vertex_count < inferred) throw DomainError("edge list: vertex index exceeds vertex count");
    return Graph(vertex_count, std::move(edges));
}

std::uint64_t HamiltonianHistogram::total() const noexcept {
    std::uint64_t sum = 0;
    for (auto c : counts) sum += c;
    return sum;
}

namespace {

void check_size(const Graph& graph) {
    if (graph.vertex_count() > kMaxEnumerationVertices)
        throw SizeExceeded("ising: " + std::to_string(graph.vertex_count()) +
                           " vertices exceeds the enumeration bound of " +
                           std::to_string(kMaxEnumerationVertices));
}

// Edges (u, u + d) grouped by offset d as bit masks over u. For a state s,
// popcount((s ^ (s >> d)) & mask_d) counts the disagreeing edges with offset d.
std::vector<std::pair<unsigned, std::uint32_t>> offset_masks(const Graph& graph) {
    std::map<unsigned, std::uint32_t> masks;
    for (const auto& [u, v] : graph.edges()) masks[v - u] |= std::uint32_t{1} << u;
    return {masks.begin(), masks.end()};
}

}  // namespace

HamiltonianHistogram build_histogram(const Graph& graph) {
    check_size(graph);
    const auto masks = offset_masks(graph);
    const std::size_t edges = graph.edge_count();
    const std::int64_t states = std::int64_t{1} << graph.vertex_count();

    HamiltonianHistogram hist;
    hist.vertex_count = graph.vertex_count();
    hist.counts.assign(edges + 1, 0);

#pragma omp parallel
    {
        std::vector<std::uint64_t> local(edges + 1, 0);
#pragma omp for schedule(static) nowait
        for (std::int64_t s = 0; s < states; ++s) {
            const auto state = static_cast<std::uint32_t>(s);
            unsigned disagree = 0;
            for (const auto& [offset, mask] : masks)
                disagree += std::popcount((state ^ (state >> offset)) & mask);
            ++local[edges - disagree];
        }
#pragma omp critical
        for (std::size_t h = 0; h <= edges; ++h) hist.counts[h] += local[h];
    }
    return hist;
}

HamiltonianHistogram build_histogram_serial(const Graph& graph) {
    check_size(graph);
    const std::size_t edges = graph.edge_count();
    const std::uint64_t states = std::uint64_t{1} << graph.vertex_count();

    HamiltonianHistogram hist;
    hist.vertex_count = graph.vertex_count();
    hist.counts.assign(edges + 1, 0);
    for (std::uint64_t s = 0; s < states; ++s) {
        std::size_t agree = 0;
        for (const auto& [u, v] : graph.edges())
            if (((s >> u) & 1U) == ((s >> v) & 1U)) ++agree;
        ++hist.counts[agree];
    }
    return hist;
}

double log_partition_function(const HamiltonianHistogram& hist, double beta) {
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t h = 0; h < hist.counts.size(); ++h)
        if (hist.counts[h] > 0) peak = std::max(peak, beta * static_cast<double>(h));
    double sum = 0.0;
    for (std::size_t h = 0; h < hist.counts.size(); ++h)
        if (hist.counts[h] > 0)
            sum += static_cast<double>(hist.counts[h]) *
                   std::exp(beta * static_cast<double>(h) - peak);
    return peak + std::log(sum);
}

double partition_function(const HamiltonianHistogram& hist, double beta) {
    double z = 0.0;
    for (std::size_t h = 0; h < hist.counts.size(); ++h)
        if (hist.counts[h] > 0)
            z += static_cast<double>(hist.counts[h]) * std::exp(beta * static_cast<double>(h));
    return z;
}

std::uint64_t sample_hamiltonian(const HamiltonianHistogram& hist, double beta, RngStream& rng) {
    const std::size_t levels = hist.counts.size();
    if (levels <= 1) return 0;

    // Weights relative to the heaviest exponent so nothing overflows.
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t h = 0; h < levels; ++h)
        if (hist.counts[h] > 0) peak = std::max(peak, beta * static_cast<double>(h));

    thread_local std::vector<double> cumulative;
    cumulative.resize(levels);
    double total = 0.0;
    for (std::size_t h = 0; h < levels; ++h) {
        if (hist.counts[h] > 0)
            total += static_cast<double>(hist.counts[h]) *
                     std::exp(beta * static_cast<double>(h) - peak);
        cumulative[h] = total;
    }

    const double target = rng.uniform() * total;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
    auto level = static_cast<std::size_t>(it - cumulative.begin());
    if (level < levels) return level;
    // target rounded up to total: take the top nonempty level.
    level = levels - 1;
    while (level > 0 && hist.counts[level] == 0) --level;
    return level;
}

IsingFamily::IsingFamily(HamiltonianHistogram hist, double beta_outer, double beta_inner)
    : hist_(std::move(hist)), beta_outer_(beta_outer), beta_inner_(beta_inner) {
    if (!(beta_inner_ < beta_outer_))
        throw DomainError("ising family: beta_inner must be below beta_outer");
    if (hist_.counts.empty()) throw DomainError("ising family: empty histogram");
}

double IsingFamily::sample_hamiltonian(double beta, RngStream& rng) const {
    return static_cast<double>(ising::sample_hamiltonian(hist_, beta, rng));
}

double IsingFamily::log_ratio() const {
    return log_partition_function(hist_, beta_outer_) - log_partition_function(hist_, beta_inner_);
}

}  // namespace gpas::ising
