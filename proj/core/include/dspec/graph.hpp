#ifndef DSPEC_GRAPH_HPP
#define DSPEC_GRAPH_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "dspec/errors.hpp"

namespace dspec {

/// One undirected edge with a nonnegative rate weight.
struct Edge {
    int u = 0;
    int v = 0;
    double w = 0.0;
};

/// Finite symmetric weighted graph (b, c, m): jump weights b on edges,
/// killing weights c and a strictly positive measure m on vertices.
///
/// Storage is always symmetric: every edge appears in both adjacency rows
/// with the identical weight, and b(x,x) = 0 holds by construction.
struct WeightedGraph {
    int n = 0;
    std::vector<std::vector<std::pair<int, double>>> adj; // sorted by neighbor id
    Eigen::VectorXd kill;                                 // c(x) >= 0
    Eigen::VectorXd measure;                              // m(x) > 0

    /// b(x,y); zero when no edge is stored.
    double weight(int x, int y) const;

    /// sum_y b(x,y)
    double weighted_degree(int x) const;

    /// Number of unordered edges with nonzero weight.
    std::size_t edge_count() const;
};

/// Validates and assembles a WeightedGraph from an edge list.
/// Input edges may come in either orientation; duplicates of the same
/// unordered pair are summed. Self-loops are rejected.
WeightedGraph build_graph(int n, const std::vector<Edge>& edges,
                          const Eigen::VectorXd& kill,
                          const Eigen::VectorXd& measure);

/// Convenience overload with constant killing and measure.
WeightedGraph build_graph(int n, const std::vector<Edge>& edges,
                          double kill = 0.0, double measure = 1.0);

/// Sorted duplicate-free set of vertex indices.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::vector<int> ids);
    VertexSet(std::initializer_list<int> ids);

    static VertexSet full(int n);

    bool contains(int x) const;
    int size() const { return static_cast<int>(ids_.size()); }
    bool empty() const { return ids_.empty(); }
    const std::vector<int>& ids() const { return ids_; }

    bool subset_of(const VertexSet& other) const;
    VertexSet complement(int n) const;

    /// Throws IndexOutOfRange unless all members are < n.
    void check_range(int n) const;

    auto begin() const { return ids_.begin(); }
    auto end() const { return ids_.end(); }

    bool operator==(const VertexSet& other) const { return ids_ == other.ids_; }

private:
    std::vector<int> ids_;
};

} // namespace dspec

#endif
