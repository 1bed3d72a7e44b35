#include "dspec/forms.hpp"

#include <cmath>

namespace dspec {

double form_eval(const WeightedGraph& g, const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    if (u.size() != g.n || v.size() != g.n)
        throw DimensionMismatch("form_eval: vectors must have length n");
    double jump = 0.0;
    for (int x = 0; x < g.n; ++x)
        for (const auto& [y, w] : g.adj[static_cast<std::size_t>(x)])
            jump += w * (u[x] - u[y]) * (v[x] - v[y]);
    double killing = 0.0;
    for (int x = 0; x < g.n; ++x)
        killing += g.kill[x] * u[x] * v[x];
    return 0.5 * jump + killing;
}

double measure_norm_sq(const Eigen::VectorXd& m, const Eigen::VectorXd& u) {
    if (u.size() != m.size())
        throw DimensionMismatch("measure_norm_sq: length mismatch");
    return m.dot(u.cwiseProduct(u));
}

FormSystem assemble(const WeightedGraph& g) {
    const int n = g.n;
    Eigen::VectorXd d(n); // m^{-1/2}
    for (int x = 0; x < n; ++x) d[x] = 1.0 / std::sqrt(g.measure[x]);

    std::vector<Eigen::Triplet<double>> tq, ts;
    tq.reserve(2 * g.edge_count() + static_cast<std::size_t>(n));
    ts.reserve(tq.capacity());
    for (int x = 0; x < n; ++x) {
        const double diag = g.weighted_degree(x) + g.kill[x];
        tq.emplace_back(x, x, diag);
        ts.emplace_back(x, x, diag * d[x] * d[x]);
        for (const auto& [y, w] : g.adj[static_cast<std::size_t>(x)]) {
            if (y <= x) continue;
            // assign one value per unordered pair so both triangles are
            // bitwise identical
            const double q = -w;
            const double s = q * d[x] * d[y];
            tq.emplace_back(x, y, q);
            tq.emplace_back(y, x, q);
            ts.emplace_back(x, y, s);
            ts.emplace_back(y, x, s);
        }
    }

    FormSystem fs;
    fs.graph = g;
    fs.m = g.measure;
    fs.Q.resize(n, n);
    fs.Q.setFromTriplets(tq.begin(), tq.end());
    fs.S.resize(n, n);
    fs.S.setFromTriplets(ts.begin(), ts.end());
    return fs;
}

WeightedGraph restrict_graph(const WeightedGraph& g, const VertexSet& removed) {
    removed.check_range(g.n);
    const VertexSet keep = removed.complement(g.n);
    if (keep.empty()) throw EmptyComplement("restriction removes every vertex");

    std::vector<int> to_local(static_cast<std::size_t>(g.n), -1);
    int k = 0;
    for (int x : keep) to_local[static_cast<std::size_t>(x)] = k++;

    const int nu = keep.size();
    Eigen::VectorXd kill(nu), measure(nu);
    std::vector<Edge> edges;
    for (int x : keep) {
        const int lx = to_local[static_cast<std::size_t>(x)];
        double boundary = 0.0; // weight into the removed set, kept as killing
        for (const auto& [y, w] : g.adj[static_cast<std::size_t>(x)]) {
            const int ly = to_local[static_cast<std::size_t>(y)];
            if (ly < 0)
                boundary += w;
            else if (ly > lx)
                edges.push_back({lx, ly, w});
        }
        kill[lx] = g.kill[x] + boundary;
        measure[lx] = g.measure[x];
    }
    return build_graph(nu, edges, kill, measure);
}

RestrictedSystem restrict_system(const FormSystem& fs, const VertexSet& B) {
    B.check_range(fs.n());
    RestrictedSystem rs;
    rs.removed = B;
    rs.parent_n = fs.n();
    if (B.empty()) {
        rs.sub = fs;
        rs.to_global.resize(static_cast<std::size_t>(fs.n()));
        rs.to_local.resize(static_cast<std::size_t>(fs.n()));
        for (int x = 0; x < fs.n(); ++x) {
            rs.to_global[static_cast<std::size_t>(x)] = x;
            rs.to_local[static_cast<std::size_t>(x)] = x;
        }
        return rs;
    }
    rs.sub = assemble(restrict_graph(fs.graph, B));
    rs.to_global = B.complement(fs.n()).ids();
    rs.to_local.assign(static_cast<std::size_t>(fs.n()), -1);
    for (std::size_t i = 0; i < rs.to_global.size(); ++i)
        rs.to_local[static_cast<std::size_t>(rs.to_global[i])] = static_cast<int>(i);
    return rs;
}

Eigen::VectorXd extend_by_zero(const RestrictedSystem& rs, const Eigen::VectorXd& u_local) {
    if (u_local.size() != rs.n())
        throw DimensionMismatch("extend_by_zero: expected length " + std::to_string(rs.n()));
    Eigen::VectorXd out = Eigen::VectorXd::Zero(rs.parent_n);
    for (int i = 0; i < rs.n(); ++i)
        out[rs.to_global[static_cast<std::size_t>(i)]] = u_local[i];
    return out;
}

Eigen::VectorXd restrict_vector(const RestrictedSystem& rs, const Eigen::VectorXd& u_global) {
    if (u_global.size() != rs.parent_n)
        throw DimensionMismatch("restrict_vector: expected length " + std::to_string(rs.parent_n));
    Eigen::VectorXd out(rs.n());
    for (int i = 0; i < rs.n(); ++i)
        out[i] = u_global[rs.to_global[static_cast<std::size_t>(i)]];
    return out;
}

} // namespace dspec
