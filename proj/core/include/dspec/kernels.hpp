#ifndef DSPEC_KERNELS_HPP
#define DSPEC_KERNELS_HPP

#include <functional>
#include <vector>

#include "dspec/graph.hpp"

namespace dspec {

/// Regular grid of points in R^d: extent[k] points along axis k with
/// spacing h, shifted by an optional origin.
struct GridSpec {
    int dim = 1;
    std::vector<int> extent;
    double h = 1.0;
    std::vector<double> origin; // empty means zero offset

    int point_count() const;
    std::vector<double> position(int flat_index) const;
    void validate() const;
};

double euclidean_distance(const std::vector<double>& a, const std::vector<double>& b);

/// Jump kernel evaluated at grid-point index pairs.
using KernelFn = std::function<double(int, int)>;

/// j(x,y) = |x-y|^{-d-alpha} on the given grid.
KernelFn power_law_kernel(const GridSpec& grid, double alpha);

struct KernelSpec {
    double alpha = 1.0;       // stability index in (0,2)
    double lower_const = 0.0; // c of the lower bound j >= c |x-y|^{-d-alpha}; 0 disables the check
    KernelFn kernel;
};

/// Collocation discretization of the alpha-stable form: all grid points are
/// pairwise coupled with b(x,y) = h^{2d} |x-y|^{-d-alpha}, m = h^d, c = 0.
/// The diagonal pair (x,x) is excluded.
WeightedGraph fractional_graph(const GridSpec& grid, double alpha);

struct JumpGraphResult {
    WeightedGraph graph;
    double worst_ratio = 0.0; // min over pairs of j / (c |x-y|^{-d-alpha}); +inf if unchecked
    int worst_u = -1;
    int worst_v = -1;
};

/// Same discretization for a general symmetric kernel. When lower_const > 0
/// the pairwise lower bound is certified; the worst ratio and its witness
/// pair are reported either way.
JumpGraphResult general_jump_graph(const GridSpec& grid, const KernelSpec& spec);

/// Path graph 0-1-...-n-1 with uniform edge weight, m = 1, c = 0.
WeightedGraph lattice_path(int n, double weight);

/// Nearest-neighbor lattice over a d-dimensional extent, m = 1, c = 0.
WeightedGraph lattice_graph(const std::vector<int>& extent, double weight);

/// Hop distances from a center vertex; -1 marks unreachable vertices.
std::vector<int> hop_distances(const WeightedGraph& g, int center);

/// Copy of g with kill(x) increased by dist(x,center)^p, dist = hop count.
/// Throws DisconnectedFromCenter when some vertex cannot reach the center.
WeightedGraph confining_potential(const WeightedGraph& g, int center, double growth_power);

} // namespace dspec

#endif
