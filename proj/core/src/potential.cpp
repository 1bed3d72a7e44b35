#include "dspec/potential.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>

namespace dspec {

namespace {

constexpr int kDirectSolveLimit = 5000;

// Sparse SPD solve: direct factorization below kDirectSolveLimit unknowns,
// conjugate gradient with 1e-12 relative residual above.
Eigen::VectorXd solve_spd(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& b) {
    if (A.rows() < kDirectSolveLimit) {
        Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(A);
        if (ldlt.info() != Eigen::Success)
            throw SingularSystem("sparse factorization failed");
        return ldlt.solve(b);
    }
    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
    cg.setTolerance(1e-12);
    cg.setMaxIterations(20 * A.rows());
    cg.compute(A);
    Eigen::VectorXd x = cg.solve(b);
    if (cg.info() != Eigen::Success)
        throw SingularSystem("conjugate gradient did not converge");
    return x;
}

// Weight from x into B, divided by m(x): the jump rate into the removed set.
Eigen::VectorXd boundary_flux(const FormSystem& fs, const RestrictedSystem& rs) {
    Eigen::VectorXd flux(rs.n());
    for (int i = 0; i < rs.n(); ++i) {
        const int x = rs.to_global[static_cast<std::size_t>(i)];
        double into_b = 0.0;
        for (const auto& [y, w] : fs.graph.adj[static_cast<std::size_t>(x)])
            if (rs.removed.contains(y)) into_b += w;
        flux[i] = into_b / fs.m[x];
    }
    return flux;
}

// (1 - e^{-t l}) / l, continued through l = 0 by its limit t.
double absorbed_mass_weight(double t, double l) {
    if (std::abs(t * l) < 1e-12) return t * (1.0 - 0.5 * t * l);
    return -std::expm1(-t * l) / l;
}

} // namespace

EquilibriumData equilibrium_potential(const FormSystem& fs, const VertexSet& B) {
    if (B.empty()) throw EmptySet("equilibrium potential needs a nonempty target set");
    B.check_range(fs.n());

    EquilibriumData eq;
    eq.B = B;
    eq.e_B = Eigen::VectorXd::Ones(fs.n());

    if (B.size() < fs.n()) {
        const RestrictedSystem rs = restrict_system(fs, B);
        // (Q_U + M_U) e_U = b_B, where b_B(x) = sum_{y in B} b(x,y)
        Eigen::SparseMatrix<double> A = rs.sub.Q;
        Eigen::VectorXd rhs(rs.n());
        for (int i = 0; i < rs.n(); ++i) {
            A.coeffRef(i, i) += rs.sub.m[i];
            const int x = rs.to_global[static_cast<std::size_t>(i)];
            double into_b = 0.0;
            for (const auto& [y, w] : fs.graph.adj[static_cast<std::size_t>(x)])
                if (B.contains(y)) into_b += w;
            rhs[i] = into_b;
        }
        const Eigen::VectorXd e_U = solve_spd(A, rhs);
        const double scale = 1.0 + rhs.lpNorm<Eigen::Infinity>();
        const double resid = (A * e_U - rhs).lpNorm<Eigen::Infinity>();
        if (resid > 1e-10 * scale)
            throw SingularSystem("equilibrium solve residual " + std::to_string(resid));
        for (int i = 0; i < rs.n(); ++i) {
            const double v = e_U[i];
            if (v < -1e-9 || v > 1.0 + 1e-9)
                throw SingularSystem("equilibrium potential violates the maximum principle");
            eq.e_B[rs.to_global[static_cast<std::size_t>(i)]] = std::clamp(v, 0.0, 1.0);
        }
    }

    eq.cap_value = std::sqrt(form_eval(fs.graph, eq.e_B, eq.e_B) + measure_norm_sq(fs.m, eq.e_B));
    return eq;
}

double capacity_qp(const FormSystem& fs, const VertexSet& B) {
    if (B.empty()) return 0.0; // v = 0 is feasible and optimal
    B.check_range(fs.n());

    Eigen::VectorXd v = Eigen::VectorXd::Ones(fs.n());
    const VertexSet U = B.complement(fs.n());
    if (!U.empty()) {
        // Reduced problem: fix v = 1 on B (the constraint is active at the
        // optimum) and minimize the quadratic over U by matrix-free CG.
        const std::vector<int>& free_ids = U.ids();
        std::vector<int> local(static_cast<std::size_t>(fs.n()), -1);
        for (std::size_t i = 0; i < free_ids.size(); ++i)
            local[static_cast<std::size_t>(free_ids[i])] = static_cast<int>(i);

        const auto apply = [&](const Eigen::VectorXd& u) {
            Eigen::VectorXd out(u.size());
            for (std::size_t i = 0; i < free_ids.size(); ++i) {
                const int x = free_ids[i];
                double acc = (fs.graph.weighted_degree(x) + fs.graph.kill[x] + fs.m[x]) *
                             u[static_cast<Eigen::Index>(i)];
                for (const auto& [y, w] : fs.graph.adj[static_cast<std::size_t>(x)]) {
                    const int ly = local[static_cast<std::size_t>(y)];
                    if (ly >= 0) acc -= w * u[ly];
                }
                out[static_cast<Eigen::Index>(i)] = acc;
            }
            return out;
        };

        Eigen::VectorXd rhs(static_cast<Eigen::Index>(free_ids.size()));
        for (std::size_t i = 0; i < free_ids.size(); ++i) {
            const int x = free_ids[i];
            double into_b = 0.0;
            for (const auto& [y, w] : fs.graph.adj[static_cast<std::size_t>(x)])
                if (B.contains(y)) into_b += w;
            rhs[static_cast<Eigen::Index>(i)] = into_b;
        }

        Eigen::VectorXd u = Eigen::VectorXd::Zero(rhs.size());
        Eigen::VectorXd r = rhs - apply(u);
        Eigen::VectorXd p = r;
        double rr = r.squaredNorm();
        const double stop = 1e-12 * std::sqrt(std::max(rhs.squaredNorm(), 1e-300));
        const int max_iter = 10 * static_cast<int>(rhs.size()) + 50;
        for (int it = 0; it < max_iter && std::sqrt(rr) > stop; ++it) {
            const Eigen::VectorXd Ap = apply(p);
            const double alpha = rr / p.dot(Ap);
            u += alpha * p;
            r -= alpha * Ap;
            const double rr_next = r.squaredNorm();
            p = r + (rr_next / rr) * p;
            rr = rr_next;
        }
        for (std::size_t i = 0; i < free_ids.size(); ++i)
            v[free_ids[i]] = u[static_cast<Eigen::Index>(i)];
    }

    // KKT: the multipliers on B must be nonnegative for the active solve to
    // be the constrained optimum.
    for (int x : B) {
        double row = (fs.graph.weighted_degree(x) + fs.graph.kill[x] + fs.m[x]) * v[x];
        for (const auto& [y, w] : fs.graph.adj[static_cast<std::size_t>(x)]) row -= w * v[y];
        if (row < -1e-8)
            throw SingularSystem("capacity QP: negative KKT multiplier " + std::to_string(row));
    }

    return std::sqrt(form_eval(fs.graph, v, v) + measure_norm_sq(fs.m, v));
}

Eigen::VectorXd hitting_probability_exact(const FormSystem& fs, const VertexSet& B, double t) {
    if (t < 0.0) throw NegativeTime("hitting probability needs t >= 0");
    if (B.empty()) throw EmptySet("hitting probability needs a nonempty target set");
    B.check_range(fs.n());

    Eigen::VectorXd out = Eigen::VectorXd::Ones(fs.n()); // sigma_B = 0 on B
    if (B.size() == fs.n()) return out;

    const RestrictedSystem rs = restrict_system(fs, B);
    const Eigen::VectorXd flux = boundary_flux(fs, rs);

    // Absorbed-in-B mass: int_0^t e^{-s L_U} flux ds, via S_U = V diag(l) V^T.
    Eigen::MatrixXd Sd = Eigen::MatrixXd(rs.sub.S);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Sd);
    if (eig.info() != Eigen::Success) throw ConvergenceFailure("eigendecomposition failed");

    const Eigen::VectorXd msq = rs.sub.m.cwiseSqrt();
    Eigen::VectorXd z = eig.eigenvectors().transpose() * (msq.cwiseProduct(flux));
    for (int i = 0; i < z.size(); ++i)
        z[i] *= absorbed_mass_weight(t, eig.eigenvalues()[i]);
    const Eigen::VectorXd hit = (eig.eigenvectors() * z).cwiseQuotient(msq);

    for (int i = 0; i < rs.n(); ++i)
        out[rs.to_global[static_cast<std::size_t>(i)]] = std::clamp(hit[i], 0.0, 1.0);
    return out;
}

VertexSet tail_sets(const EquilibriumData& eq, int n) {
    if (n < 1) throw IndexOutOfRange("tail set level must be >= 1");
    const double threshold = 1.0 / static_cast<double>(n);
    std::vector<int> ids;
    for (int x = 0; x < eq.e_B.size(); ++x)
        if (eq.e_B[x] > threshold) ids.push_back(x);
    return VertexSet(std::move(ids));
}

KatoReport kato_constant(const FormSystem& fs, const Eigen::VectorXd& potential, double alpha) {
    if (potential.size() != fs.n())
        throw DimensionMismatch("potential must have length n");
    if (!(alpha > 0.0)) throw NonPositiveAlpha("alpha must be > 0");
    for (int x = 0; x < fs.n(); ++x)
        if (!(potential[x] >= 0.0) || !std::isfinite(potential[x]))
            throw NegativePotential("potential must be finite and >= 0");

    Eigen::SparseMatrix<double> A = fs.Q;
    for (int x = 0; x < fs.n(); ++x) A.coeffRef(x, x) += alpha * fs.m[x];
    const Eigen::VectorXd w = solve_spd(A, fs.m.cwiseProduct(potential));

    KatoReport rep;
    rep.alpha = alpha;
    rep.potential = potential;
    rep.c_alpha = fs.n() == 0 ? 0.0 : std::max(0.0, w.maxCoeff());
    return rep;
}

} // namespace dspec
