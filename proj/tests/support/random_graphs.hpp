#ifndef DSPEC_TESTS_RANDOM_GRAPHS_HPP
#define DSPEC_TESTS_RANDOM_GRAPHS_HPP

#include <random>
#include <vector>

#include "dspec/forms.hpp"
#include "dspec/graph.hpp"

namespace dspec_tests {

// Seeded generator for random test instances. Degenerate shapes (isolated
// vertices, zero killing, disconnected graphs) appear on purpose.
class GraphGen {
public:
    explicit GraphGen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng_);
    }

    int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    bool coin(double p = 0.5) { return uniform(0.0, 1.0) < p; }

    std::mt19937_64& engine() { return rng_; }

    dspec::WeightedGraph random_graph(int n_min, int n_max) {
        const int n = uniform_int(n_min, n_max);
        const double density = uniform(0.15, 0.9);
        std::vector<dspec::Edge> edges;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (coin(density)) edges.push_back({i, j, uniform(0.05, 2.0)});

        Eigen::VectorXd kill = Eigen::VectorXd::Zero(n);
        if (coin(0.6))
            for (int i = 0; i < n; ++i) kill[i] = coin(0.5) ? uniform(0.0, 1.0) : 0.0;
        Eigen::VectorXd measure = Eigen::VectorXd::Ones(n);
        if (coin(0.7))
            for (int i = 0; i < n; ++i) measure[i] = uniform(0.2, 3.0);
        return dspec::build_graph(n, edges, kill, measure);
    }

    // path backbone plus random chords: always connected
    dspec::WeightedGraph random_connected_graph(int n_min, int n_max, bool allow_killing = true) {
        const int n = uniform_int(n_min, n_max);
        std::vector<dspec::Edge> edges;
        for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, uniform(0.2, 2.0)});
        const int extra = uniform_int(0, n);
        for (int e = 0; e < extra; ++e) {
            const int i = uniform_int(0, n - 1);
            const int j = uniform_int(0, n - 1);
            if (i != j) edges.push_back({std::min(i, j), std::max(i, j), uniform(0.05, 1.0)});
        }
        Eigen::VectorXd kill = Eigen::VectorXd::Zero(n);
        if (allow_killing && coin(0.4))
            for (int i = 0; i < n; ++i) kill[i] = coin(0.3) ? uniform(0.0, 0.5) : 0.0;
        Eigen::VectorXd measure = Eigen::VectorXd::Ones(n);
        if (coin(0.7))
            for (int i = 0; i < n; ++i) measure[i] = uniform(0.3, 2.5);
        return dspec::build_graph(n, edges, kill, measure);
    }

    // nonempty proper subset of {0..n-1}; needs n >= 2
    dspec::VertexSet random_removed_set(int n) {
        const int size = uniform_int(1, n - 1);
        std::vector<int> ids(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) ids[static_cast<std::size_t>(i)] = i;
        std::shuffle(ids.begin(), ids.end(), rng_);
        ids.resize(static_cast<std::size_t>(size));
        return dspec::VertexSet(std::move(ids));
    }

    dspec::VertexSet random_subset(int n) {
        std::vector<int> ids;
        for (int i = 0; i < n; ++i)
            if (coin(0.4)) ids.push_back(i);
        return dspec::VertexSet(std::move(ids));
    }

    Eigen::VectorXd random_vector(int n, double lo = -1.0, double hi = 1.0) {
        Eigen::VectorXd v(n);
        for (int i = 0; i < n; ++i) v[i] = uniform(lo, hi);
        return v;
    }

private:
    std::mt19937_64 rng_;
};

} // namespace dspec_tests

#endif
