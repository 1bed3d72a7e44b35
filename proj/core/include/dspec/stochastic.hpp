#ifndef DSPEC_STOCHASTIC_HPP
#define DSPEC_STOCHASTIC_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "dspec/forms.hpp"

namespace dspec {

/// Cemetery state reached by killed paths.
inline constexpr int kCemetery = -1;

/// One trajectory of the minimal jump process: at x the chain holds for an
/// Exp((sum_y b(x,y) + c(x)) / m(x)) time, then jumps to y with probability
/// proportional to b(x,y) or dies with probability proportional to c(x).
struct JumpPath {
    std::vector<int> states;   // states[0] is the start; kCemetery if killed
    std::vector<double> times; // jump epochs, strictly increasing from 0
    double horizon = 0.0;
    bool killed = false;

    /// State occupied at time t <= horizon (kCemetery after killing).
    int state_at(double t) const;

    /// First entry time into B; +inf when the recorded path never enters.
    double first_hit(const VertexSet& B) const;
};

/// Derived per-sample stream seed; samples are independent of evaluation
/// order, so parallel estimation reproduces the serial result.
std::uint64_t sample_stream(std::uint64_t root_seed, std::uint64_t index);

JumpPath simulate_path(const FormSystem& fs, int x0, double horizon, std::uint64_t seed);

struct MCEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;
};

/// Monte Carlo estimate of (e^{-tL} f)(x); f is extended by 0 to the cemetery.
MCEstimate mc_semigroup(const FormSystem& fs, const Eigen::VectorXd& f, int x, double t,
                        std::size_t n_samples, std::uint64_t seed);

/// Estimate of the Dirichlet-restricted semigroup (e^{-tL_{X\B}} f)(x):
/// paths that enter B before t contribute zero.
MCEstimate mc_killed_semigroup(const FormSystem& fs, const VertexSet& B, const Eigen::VectorXd& f,
                               int x, double t, std::size_t n_samples, std::uint64_t seed);

/// Estimate of E_x[e^{-sigma_B}], the equilibrium potential. Paths are run
/// until they hit B, die, or exceed the horizon max(50, 10 / lambda_min_hint);
/// unresolved paths contribute 0, a downward bias of at most e^{-horizon}.
MCEstimate mc_hitting_laplace(const FormSystem& fs, const VertexSet& B, int x,
                              std::size_t n_samples, std::uint64_t seed,
                              double lambda_min_hint = 1.0);

double hitting_horizon(double lambda_min_hint);

/// Feynman-Kac estimate of (e^{-t(L_{X\B} + W)} f)(x) for W >= 0: surviving
/// paths are weighted by exp(-int_0^t W(X_s) ds), evaluated exactly on the
/// piecewise-constant trajectory.
MCEstimate mc_feynman_kac_potential(const FormSystem& fs, const VertexSet& B,
                                    const Eigen::VectorXd& W, const Eigen::VectorXd& f, int x,
                                    double t, std::size_t n_samples, std::uint64_t seed);

} // namespace dspec

#endif
