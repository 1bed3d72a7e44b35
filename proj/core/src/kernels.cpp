#include "dspec/kernels.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <string>

namespace dspec {

int GridSpec::point_count() const {
    int total = 1;
    for (int e : extent) total *= e;
    return total;
}

std::vector<double> GridSpec::position(int flat_index) const {
    std::vector<double> x(static_cast<std::size_t>(dim));
    int rem = flat_index;
    for (int k = 0; k < dim; ++k) {
        const int e = extent[static_cast<std::size_t>(k)];
        x[static_cast<std::size_t>(k)] = h * static_cast<double>(rem % e);
        if (!origin.empty()) x[static_cast<std::size_t>(k)] += origin[static_cast<std::size_t>(k)];
        rem /= e;
    }
    return x;
}

void GridSpec::validate() const {
    if (dim < 1 || static_cast<int>(extent.size()) != dim)
        throw ConfigError("grid: extent must list one count per axis");
    for (int e : extent)
        if (e < 1) throw ConfigError("grid: point counts must be >= 1");
    if (!(h > 0.0) || !std::isfinite(h))
        throw ConfigError("grid: spacing h must be finite and > 0");
    if (!origin.empty() && static_cast<int>(origin.size()) != dim)
        throw ConfigError("grid: origin must match dim");
}

double euclidean_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        s += d * d;
    }
    return std::sqrt(s);
}

KernelFn power_law_kernel(const GridSpec& grid, double alpha) {
    const double exponent = -(static_cast<double>(grid.dim) + alpha);
    return [grid, exponent](int i, int j) {
        const double r = euclidean_distance(grid.position(i), grid.position(j));
        return std::pow(r, exponent);
    };
}

JumpGraphResult general_jump_graph(const GridSpec& grid, const KernelSpec& spec) {
    grid.validate();
    if (!(spec.alpha > 0.0 && spec.alpha < 2.0))
        throw InvalidAlpha("alpha must lie in (0,2)");
    if (!spec.kernel) throw ConfigError("kernel function is empty");

    const int n = grid.point_count();
    const double quad = std::pow(grid.h, 2.0 * grid.dim); // h^d per integration variable
    const double exponent = -(static_cast<double>(grid.dim) + spec.alpha);

    JumpGraphResult out;
    out.worst_ratio = std::numeric_limits<double>::infinity();

    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double jij = spec.kernel(i, j);
            const double jji = spec.kernel(j, i);
            if (!(jij >= 0.0) || !std::isfinite(jij))
                throw NegativeWeight("kernel value at (" + std::to_string(i) + "," +
                                     std::to_string(j) + ") must be finite and >= 0");
            if (jij != jji && std::abs(jij - jji) > 1e-12 * (std::abs(jij) + std::abs(jji)))
                throw AsymmetricKernel("j(" + std::to_string(i) + "," + std::to_string(j) +
                                       ") != j(" + std::to_string(j) + "," + std::to_string(i) + ")");
            if (spec.lower_const > 0.0) {
                const double r = euclidean_distance(grid.position(i), grid.position(j));
                const double floor = spec.lower_const * std::pow(r, exponent);
                const double ratio = jij / floor;
                if (ratio < out.worst_ratio) {
                    out.worst_ratio = ratio;
                    out.worst_u = i;
                    out.worst_v = j;
                }
            }
            edges.push_back({i, j, quad * jij});
        }
    }
    if (spec.lower_const > 0.0 && out.worst_ratio < 1.0)
        throw LowerBoundViolated("kernel falls below c|x-y|^{-d-alpha} at pair (" +
                                 std::to_string(out.worst_u) + "," + std::to_string(out.worst_v) +
                                 "), ratio " + std::to_string(out.worst_ratio));

    const double md = std::pow(grid.h, static_cast<double>(grid.dim));
    out.graph = build_graph(n, edges, Eigen::VectorXd::Zero(n), Eigen::VectorXd::Constant(n, md));
    return out;
}

WeightedGraph fractional_graph(const GridSpec& grid, double alpha) {
    KernelSpec spec;
    spec.alpha = alpha;
    spec.lower_const = 0.0;
    spec.kernel = power_law_kernel(grid, alpha);
    return general_jump_graph(grid, spec).graph;
}

WeightedGraph lattice_path(int n, double weight) {
    if (n < 1) throw IndexOutOfRange("path needs n >= 1");
    if (!(weight > 0.0)) throw NegativeWeight("path weight must be > 0");
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n > 0 ? n - 1 : 0));
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, weight});
    return build_graph(n, edges, 0.0, 1.0);
}

WeightedGraph lattice_graph(const std::vector<int>& extent, double weight) {
    if (extent.empty()) throw ConfigError("lattice: empty extent");
    if (!(weight > 0.0)) throw NegativeWeight("lattice weight must be > 0");
    int n = 1;
    std::vector<int> stride(extent.size());
    for (std::size_t k = 0; k < extent.size(); ++k) {
        if (extent[k] < 1) throw ConfigError("lattice: counts must be >= 1");
        stride[k] = n;
        n *= extent[k];
    }
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
        int rem = i;
        for (std::size_t k = 0; k < extent.size(); ++k) {
            const int coord = rem % extent[k];
            rem /= extent[k];
            if (coord + 1 < extent[k]) edges.push_back({i, i + stride[k], weight});
        }
    }
    return build_graph(n, edges, 0.0, 1.0);
}

std::vector<int> hop_distances(const WeightedGraph& g, int center) {
    if (center < 0 || center >= g.n) throw IndexOutOfRange("center out of range");
    std::vector<int> dist(static_cast<std::size_t>(g.n), -1);
    std::deque<int> queue{center};
    dist[static_cast<std::size_t>(center)] = 0;
    while (!queue.empty()) {
        const int x = queue.front();
        queue.pop_front();
        for (const auto& [y, w] : g.adj[static_cast<std::size_t>(x)]) {
            (void)w;
            if (dist[static_cast<std::size_t>(y)] < 0) {
                dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(x)] + 1;
                queue.push_back(y);
            }
        }
    }
    return dist;
}

WeightedGraph confining_potential(const WeightedGraph& g, int center, double growth_power) {
    if (!(growth_power > 0.0)) throw ConfigError("growth power must be > 0");
    const std::vector<int> dist = hop_distances(g, center);
    WeightedGraph out = g;
    for (int x = 0; x < g.n; ++x) {
        if (dist[static_cast<std::size_t>(x)] < 0)
            throw DisconnectedFromCenter("vertex " + std::to_string(x) +
                                         " cannot reach center " + std::to_string(center));
        out.kill[x] += std::pow(static_cast<double>(dist[static_cast<std::size_t>(x)]), growth_power);
    }
    return out;
}

} // namespace dspec
