#ifndef DSPEC_TESTS_ORACLES_HPP
#define DSPEC_TESTS_ORACLES_HPP

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "dspec/forms.hpp"
#include "dspec/graph.hpp"

// Independent reference computations. Everything here is built directly from
// the raw (b, c, m) data with dense linear algebra and Pade matrix
// exponentials, deliberately avoiding the library's assembly and spectral
// code paths.
namespace dspec_tests {

// Generator of the absorbing chain on U + {B*, cemetery}: rows are transient
// states, column |U| collects the flux into B, column |U|+1 the killing flux.
inline Eigen::MatrixXd absorbing_generator(const dspec::WeightedGraph& g, const dspec::VertexSet& B,
                                           std::vector<int>& u_ids) {
    u_ids = B.complement(g.n).ids();
    std::vector<int> local(static_cast<std::size_t>(g.n), -1);
    for (std::size_t i = 0; i < u_ids.size(); ++i)
        local[static_cast<std::size_t>(u_ids[i])] = static_cast<int>(i);

    const int nu = static_cast<int>(u_ids.size());
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(nu + 2, nu + 2);
    for (int i = 0; i < nu; ++i) {
        const int x = u_ids[static_cast<std::size_t>(i)];
        double total = 0.0;
        for (const auto& [y, w] : g.adj[static_cast<std::size_t>(x)]) {
            const double rate = w / g.measure[x];
            if (B.contains(y))
                G(i, nu) += rate;
            else
                G(i, local[static_cast<std::size_t>(y)]) += rate;
            total += rate;
        }
        const double kill_rate = g.kill[x] / g.measure[x];
        G(i, nu + 1) += kill_rate;
        total += kill_rate;
        G(i, i) -= total;
    }
    return G;
}

// P^x{sigma_B <= t} through the Pade matrix exponential of the absorbing
// chain: the mass sitting on the collapsed B state at time t.
inline Eigen::VectorXd hitting_oracle_expm(const dspec::WeightedGraph& g, const dspec::VertexSet& B,
                                           double t) {
    std::vector<int> u_ids;
    const Eigen::MatrixXd G = absorbing_generator(g, B, u_ids);
    const Eigen::MatrixXd P = (t * G).exp();
    Eigen::VectorXd out = Eigen::VectorXd::Ones(g.n);
    const int nu = static_cast<int>(u_ids.size());
    for (int i = 0; i < nu; ++i) out[u_ids[static_cast<std::size_t>(i)]] = P(i, nu);
    return out;
}

// E_x[e^{-sigma_B}] as the alpha = 1 resolvent of the absorbing chain:
// (I - G_UU) u = flux into B.
inline Eigen::VectorXd equilibrium_oracle_resolvent(const dspec::WeightedGraph& g,
                                                    const dspec::VertexSet& B) {
    std::vector<int> u_ids;
    const Eigen::MatrixXd G = absorbing_generator(g, B, u_ids);
    const int nu = static_cast<int>(u_ids.size());
    const Eigen::MatrixXd A = Eigen::MatrixXd::Identity(nu, nu) - G.topLeftCorner(nu, nu);
    const Eigen::VectorXd u = A.fullPivLu().solve(G.col(nu).head(nu));
    Eigen::VectorXd out = Eigen::VectorXd::Ones(g.n);
    for (int i = 0; i < nu; ++i) out[u_ids[static_cast<std::size_t>(i)]] = u[i];
    return out;
}

} // namespace dspec_tests

#endif
