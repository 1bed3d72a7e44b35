#include "dspec/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dspec/parallel.hpp"

namespace dspec {

namespace {

constexpr std::size_t kBlock = 4096; // samples per reduction block

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// splitmix64 stream
struct PathRng {
    std::uint64_t state;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        return mix64(z);
    }

    // uniform in the open interval (0,1)
    double uniform() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

    double exponential(double rate) { return -std::log(uniform()) / rate; }
};

void simulate_into(JumpPath& path, const FormSystem& fs, int x0, double horizon, PathRng& rng) {
    path.states.clear();
    path.times.clear();
    path.horizon = horizon;
    path.killed = false;
    path.states.push_back(x0);
    path.times.push_back(0.0);

    const WeightedGraph& g = fs.graph;
    int x = x0;
    double now = 0.0;
    for (;;) {
        const double total = g.weighted_degree(x) + g.kill[x];
        if (total <= 0.0) return; // absorbing vertex, no clock to run
        const double rate = total / g.measure[x];
        now += rng.exponential(rate);
        if (now > horizon) return;
        const double pick = rng.uniform() * total;
        double acc = 0.0;
        int target = kCemetery;
        for (const auto& [y, w] : g.adj[static_cast<std::size_t>(x)]) {
            acc += w;
            if (pick < acc) {
                target = y;
                break;
            }
        }
        path.states.push_back(target);
        path.times.push_back(now);
        if (target == kCemetery) {
            path.killed = true;
            return;
        }
        x = target;
    }
}

// int_0^t W(X_s) ds on the piecewise-constant trajectory; W(cemetery) = 0.
double integrate_potential(const JumpPath& path, const Eigen::VectorXd& W, double t) {
    double acc = 0.0;
    for (std::size_t i = 0; i < path.states.size(); ++i) {
        const double seg_start = path.times[i];
        if (seg_start >= t) break;
        const double seg_end = i + 1 < path.times.size() ? std::min(path.times[i + 1], t) : t;
        if (path.states[i] != kCemetery) acc += W[path.states[i]] * (seg_end - seg_start);
    }
    return acc;
}

void check_start(const FormSystem& fs, int x) {
    if (x < 0 || x >= fs.n()) throw IndexOutOfRange("start vertex out of range");
}

void check_payoff_vector(const FormSystem& fs, const Eigen::VectorXd& f) {
    if (f.size() != fs.n()) throw DimensionMismatch("payoff vector must have length n");
    for (int i = 0; i < f.size(); ++i)
        if (!std::isfinite(f[i])) throw Error("payoff vector must be finite");
}

// Deterministic block-wise reduction: per-block partial sums are accumulated
// serially in block order, so the estimate does not depend on the number of
// workers.
template <typename Payoff>
MCEstimate run_estimator(const FormSystem& fs, int x0, double horizon, std::size_t n_samples,
                         std::uint64_t seed, Payoff&& payoff) {
    if (n_samples == 0) throw InvalidSeedStream("n_samples must be positive");
    const std::size_t blocks = (n_samples + kBlock - 1) / kBlock;
    std::vector<double> sum(blocks, 0.0), sumsq(blocks, 0.0);

    parallel_for(blocks, [&](std::size_t b) {
        JumpPath scratch;
        PathRng rng{0};
        double s = 0.0, s2 = 0.0;
        const std::size_t lo = b * kBlock;
        const std::size_t hi = std::min(lo + kBlock, n_samples);
        for (std::size_t i = lo; i < hi; ++i) {
            rng.state = sample_stream(seed, i);
            simulate_into(scratch, fs, x0, horizon, rng);
            const double p = payoff(scratch);
            s += p;
            s2 += p * p;
        }
        sum[b] = s;
        sumsq[b] = s2;
    });

    double total = 0.0, total_sq = 0.0;
    for (std::size_t b = 0; b < blocks; ++b) {
        total += sum[b];
        total_sq += sumsq[b];
    }

    MCEstimate est;
    est.n_samples = n_samples;
    est.seed = seed;
    est.mean = total / static_cast<double>(n_samples);
    if (n_samples > 1) {
        const double var =
            std::max(0.0, (total_sq - static_cast<double>(n_samples) * est.mean * est.mean) /
                              static_cast<double>(n_samples - 1));
        est.std_error = std::sqrt(var / static_cast<double>(n_samples));
    }
    return est;
}

} // namespace

int JumpPath::state_at(double t) const {
    auto it = std::upper_bound(times.begin(), times.end(), t);
    const std::size_t idx = static_cast<std::size_t>(it - times.begin()) - 1;
    return states[idx];
}

double JumpPath::first_hit(const VertexSet& B) const {
    for (std::size_t i = 0; i < states.size(); ++i)
        if (states[i] != kCemetery && B.contains(states[i])) return times[i];
    return std::numeric_limits<double>::infinity();
}

std::uint64_t sample_stream(std::uint64_t root_seed, std::uint64_t index) {
    return mix64(root_seed ^ mix64(index * 0xA0761D6478BD642Full + 0x8EBC6AF09C88C6E3ull));
}

JumpPath simulate_path(const FormSystem& fs, int x0, double horizon, std::uint64_t seed) {
    check_start(fs, x0);
    if (!(horizon > 0.0)) throw NegativeTime("horizon must be > 0");
    JumpPath path;
    PathRng rng{seed};
    simulate_into(path, fs, x0, horizon, rng);
    return path;
}

MCEstimate mc_semigroup(const FormSystem& fs, const Eigen::VectorXd& f, int x, double t,
                        std::size_t n_samples, std::uint64_t seed) {
    check_start(fs, x);
    check_payoff_vector(fs, f);
    if (t < 0.0) throw NegativeTime("time must be >= 0");
    if (t == 0.0) return {f[x], 0.0, n_samples, seed};
    return run_estimator(fs, x, t, n_samples, seed, [&](const JumpPath& path) {
        const int s = path.state_at(t);
        return s == kCemetery ? 0.0 : f[s];
    });
}

MCEstimate mc_killed_semigroup(const FormSystem& fs, const VertexSet& B, const Eigen::VectorXd& f,
                               int x, double t, std::size_t n_samples, std::uint64_t seed) {
    check_start(fs, x);
    check_payoff_vector(fs, f);
    B.check_range(fs.n());
    if (t < 0.0) throw NegativeTime("time must be >= 0");
    if (t == 0.0) return {B.contains(x) ? 0.0 : f[x], 0.0, n_samples, seed};
    return run_estimator(fs, x, t, n_samples, seed, [&](const JumpPath& path) {
        if (path.first_hit(B) <= t) return 0.0;
        const int s = path.state_at(t);
        return s == kCemetery ? 0.0 : f[s];
    });
}

double hitting_horizon(double lambda_min_hint) {
    if (!(lambda_min_hint > 0.0)) return 50.0;
    return std::max(50.0, 10.0 / lambda_min_hint);
}

MCEstimate mc_hitting_laplace(const FormSystem& fs, const VertexSet& B, int x,
                              std::size_t n_samples, std::uint64_t seed, double lambda_min_hint) {
    check_start(fs, x);
    if (B.empty()) throw EmptySet("hitting estimator needs a nonempty target set");
    B.check_range(fs.n());
    if (B.contains(x)) return {1.0, 0.0, n_samples, seed}; // sigma_B = 0
    const double horizon = hitting_horizon(lambda_min_hint);
    return run_estimator(fs, x, horizon, n_samples, seed, [&](const JumpPath& path) {
        const double sigma = path.first_hit(B);
        return std::isfinite(sigma) ? std::exp(-sigma) : 0.0;
    });
}

MCEstimate mc_feynman_kac_potential(const FormSystem& fs, const VertexSet& B,
                                    const Eigen::VectorXd& W, const Eigen::VectorXd& f, int x,
                                    double t, std::size_t n_samples, std::uint64_t seed) {
    check_start(fs, x);
    check_payoff_vector(fs, f);
    B.check_range(fs.n());
    if (W.size() != fs.n()) throw DimensionMismatch("potential must have length n");
    for (int i = 0; i < W.size(); ++i)
        if (!std::isfinite(W[i]) || W[i] < 0.0)
            throw UnboundedPotential("potential must be finite and >= 0");
    if (t < 0.0) throw NegativeTime("time must be >= 0");
    if (t == 0.0) return {B.contains(x) ? 0.0 : f[x], 0.0, n_samples, seed};
    return run_estimator(fs, x, t, n_samples, seed, [&](const JumpPath& path) {
        if (path.first_hit(B) <= t) return 0.0;
        const int s = path.state_at(t);
        if (s == kCemetery) return 0.0;
        return f[s] * std::exp(-integrate_potential(path, W, t));
    });
}

} // namespace dspec
