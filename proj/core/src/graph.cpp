#include "dspec/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace dspec {

double WeightedGraph::weight(int x, int y) const {
    const auto& row = adj.at(static_cast<std::size_t>(x));
    auto it = std::lower_bound(row.begin(), row.end(), y,
                               [](const std::pair<int, double>& e, int id) { return e.first < id; });
    if (it != row.end() && it->first == y) return it->second;
    return 0.0;
}

double WeightedGraph::weighted_degree(int x) const {
    double s = 0.0;
    for (const auto& [y, w] : adj.at(static_cast<std::size_t>(x))) {
        (void)y;
        s += w;
    }
    return s;
}

std::size_t WeightedGraph::edge_count() const {
    std::size_t total = 0;
    for (const auto& row : adj) total += row.size();
    return total / 2;
}

WeightedGraph build_graph(int n, const std::vector<Edge>& edges,
                          const Eigen::VectorXd& kill,
                          const Eigen::VectorXd& measure) {
    if (n < 0) throw IndexOutOfRange("vertex count must be nonnegative");
    if (kill.size() != n || measure.size() != n)
        throw DimensionMismatch("kill/measure vectors must have length n");

    for (int x = 0; x < n; ++x) {
        if (!(measure[x] > 0.0) || !std::isfinite(measure[x]))
            throw NonPositiveMeasure("m(" + std::to_string(x) + ") must be finite and > 0");
        if (!(kill[x] >= 0.0) || !std::isfinite(kill[x]))
            throw NegativeWeight("c(" + std::to_string(x) + ") must be finite and >= 0");
    }

    // Accumulate on canonical (min,max) keys so duplicates in either
    // orientation land on the same entry.
    std::map<std::pair<int, int>, double> acc;
    for (const Edge& e : edges) {
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
            throw IndexOutOfRange("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                  ") out of range for n=" + std::to_string(n));
        if (e.u == e.v)
            throw SelfLoop("self-loop at vertex " + std::to_string(e.u));
        if (!(e.w >= 0.0) || !std::isfinite(e.w))
            throw NegativeWeight("edge weight b(" + std::to_string(e.u) + "," +
                                 std::to_string(e.v) + ") must be finite and >= 0");
        acc[{std::min(e.u, e.v), std::max(e.u, e.v)}] += e.w;
    }

    WeightedGraph g;
    g.n = n;
    g.adj.assign(static_cast<std::size_t>(n), {});
    g.kill = kill;
    g.measure = measure;
    for (const auto& [key, w] : acc) {
        if (w == 0.0) continue;
        g.adj[static_cast<std::size_t>(key.first)].emplace_back(key.second, w);
        g.adj[static_cast<std::size_t>(key.second)].emplace_back(key.first, w);
    }
    for (auto& row : g.adj)
        std::sort(row.begin(), row.end());
    return g;
}

WeightedGraph build_graph(int n, const std::vector<Edge>& edges, double kill, double measure) {
    return build_graph(n, edges, Eigen::VectorXd::Constant(n, kill),
                       Eigen::VectorXd::Constant(n, measure));
}

VertexSet::VertexSet(std::vector<int> ids) : ids_(std::move(ids)) {
    for (int x : ids_)
        if (x < 0) throw IndexOutOfRange("negative vertex index in set");
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

VertexSet::VertexSet(std::initializer_list<int> ids) : VertexSet(std::vector<int>(ids)) {}

VertexSet VertexSet::full(int n) {
    std::vector<int> ids(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) ids[static_cast<std::size_t>(i)] = i;
    VertexSet s;
    s.ids_ = std::move(ids);
    return s;
}

bool VertexSet::contains(int x) const {
    return std::binary_search(ids_.begin(), ids_.end(), x);
}

bool VertexSet::subset_of(const VertexSet& other) const {
    return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(), ids_.end());
}

VertexSet VertexSet::complement(int n) const {
    check_range(n);
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(n - size()));
    auto it = ids_.begin();
    for (int x = 0; x < n; ++x) {
        if (it != ids_.end() && *it == x) {
            ++it;
            continue;
        }
        out.push_back(x);
    }
    VertexSet s;
    s.ids_ = std::move(out);
    return s;
}

void VertexSet::check_range(int n) const {
    if (!ids_.empty() && ids_.back() >= n)
        throw IndexOutOfRange("vertex index " + std::to_string(ids_.back()) +
                              " out of range for n=" + std::to_string(n));
}

} // namespace dspec
