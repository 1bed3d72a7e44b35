#include "dspec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "dspec/kernels.hpp"
#include "dspec/lanczos.hpp"
#include "dspec/parallel.hpp"

namespace dspec {

namespace {

void require_dense(const Eigen::Index n, const char* what) {
    if (n > kDenseThreshold)
        throw TooLargeForDense(std::string(what) + ": size " + std::to_string(n) +
                               " exceeds the dense threshold " + std::to_string(kDenseThreshold));
}

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> dense_eig(const Eigen::SparseMatrix<double>& S) {
    const Eigen::MatrixXd dense = Eigen::MatrixXd(S);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(dense);
    if (eig.info() != Eigen::Success)
        throw ConvergenceFailure("dense symmetric eigensolve failed");
    return eig;
}

void check_form_nonnegativity(const SpectralSummary& summary) {
    if (!summary.eigenvalues.empty() && summary.eigenvalues.front() < -1e-10)
        throw ConvergenceFailure("negative eigenvalue " +
                                 std::to_string(summary.eigenvalues.front()) +
                                 " reported for a nonnegative form");
}

Eigen::MatrixXd scatter_matrix(const Eigen::MatrixXd& sub, const std::vector<int>& to_global,
                               int n) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index j = 0; j < sub.cols(); ++j)
        for (Eigen::Index i = 0; i < sub.rows(); ++i)
            out(to_global[static_cast<std::size_t>(i)], to_global[static_cast<std::size_t>(j)]) =
                sub(i, j);
    return out;
}

Eigen::SparseMatrix<double> with_diagonal(const Eigen::SparseMatrix<double>& S,
                                          const Eigen::VectorXd& diag) {
    Eigen::SparseMatrix<double> out = S;
    for (int i = 0; i < out.rows(); ++i) out.coeffRef(i, i) += diag[i];
    return out;
}

} // namespace

SpectralSummary spectrum_dense(const Eigen::SparseMatrix<double>& S) {
    require_dense(S.rows(), "spectrum_dense");
    const auto eig = dense_eig(S);
    const int n = static_cast<int>(S.rows());

    SpectralSummary out;
    out.method = EigMethod::Dense;
    out.requested = n;
    out.eigenvalues.assign(eig.eigenvalues().data(), eig.eigenvalues().data() + n);
    const Eigen::MatrixXd R =
        S * eig.eigenvectors() - eig.eigenvectors() * eig.eigenvalues().asDiagonal();
    out.residuals.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out.residuals[static_cast<std::size_t>(i)] = R.col(i).norm();
    return out;
}

SpectralSummary spectrum_dense(const FormSystem& fs) {
    SpectralSummary out = spectrum_dense(fs.S);
    check_form_nonnegativity(out);
    return out;
}

SpectralSummary bottom_of_spectrum(const Eigen::SparseMatrix<double>& S, int k, EigMethod method) {
    const int n = static_cast<int>(S.rows());
    if (k < 1) throw Error("bottom_of_spectrum: k must be >= 1");
    if (k > n) throw Error("bottom_of_spectrum: k exceeds the matrix size");

    if (method == EigMethod::Auto)
        method = (n <= 256 || 3 * k >= n) ? EigMethod::Dense : EigMethod::Iterative;

    SpectralSummary out;
    out.requested = k;
    if (method == EigMethod::Dense) {
        require_dense(n, "bottom_of_spectrum");
        const auto eig = dense_eig(S);
        out.method = EigMethod::Dense;
        out.eigenvalues.assign(eig.eigenvalues().data(), eig.eigenvalues().data() + k);
        out.residuals.resize(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) {
            const Eigen::VectorXd v = eig.eigenvectors().col(i);
            out.residuals[static_cast<std::size_t>(i)] =
                (S * v - eig.eigenvalues()[i] * v).norm();
        }
        return out;
    }

    const LanczosResult lr = smallest_eigenpairs(S, k);
    out.method = EigMethod::Iterative;
    out.eigenvalues.assign(lr.values.data(), lr.values.data() + k);
    out.residuals.assign(lr.residuals.data(), lr.residuals.data() + k);
    return out;
}

SpectralSummary bottom_of_spectrum(const FormSystem& fs, int k, EigMethod method) {
    SpectralSummary out = bottom_of_spectrum(fs.S, k, method);
    check_form_nonnegativity(out);
    return out;
}

SpectralSummary bottom_of_spectrum(const RestrictedSystem& rs, int k, EigMethod method) {
    SpectralSummary out = bottom_of_spectrum(rs.sub.S, k, method);
    check_form_nonnegativity(out);
    return out;
}

Eigen::MatrixXd sym_semigroup(const Eigen::SparseMatrix<double>& S, double t) {
    if (t < 0.0) throw NegativeTime("semigroup time must be >= 0");
    require_dense(S.rows(), "sym_semigroup");
    const auto eig = dense_eig(S);
    Eigen::VectorXd w = (-t * eig.eigenvalues().array()).exp();
    return eig.eigenvectors() * w.asDiagonal() * eig.eigenvectors().transpose();
}

Eigen::MatrixXd function_basis_semigroup(const Eigen::SparseMatrix<double>& S,
                                         const Eigen::VectorXd& m, double t) {
    Eigen::MatrixXd E = sym_semigroup(S, t);
    const Eigen::VectorXd r = m.cwiseSqrt();
    return r.cwiseInverse().asDiagonal() * E * r.asDiagonal();
}

Eigen::MatrixXd semigroup_matrix(const FormSystem& fs, double t) {
    return function_basis_semigroup(fs.S, fs.m, t);
}

Eigen::MatrixXd semigroup_matrix(const RestrictedSystem& rs, double t) {
    return scatter_matrix(function_basis_semigroup(rs.sub.S, rs.sub.m, t), rs.to_global,
                          rs.parent_n);
}

Eigen::MatrixXd semigroup_difference_sym(const FormSystem& fs, const RestrictedSystem& rs,
                                         double t, const Eigen::VectorXd& diag_potential) {
    Eigen::MatrixXd full, part;
    if (diag_potential.size() == 0) {
        full = sym_semigroup(fs.S, t);
        part = sym_semigroup(rs.sub.S, t);
    } else {
        if (diag_potential.size() != fs.n())
            throw DimensionMismatch("diagonal potential must have length n");
        full = sym_semigroup(with_diagonal(fs.S, diag_potential), t);
        part = sym_semigroup(with_diagonal(rs.sub.S, restrict_vector(rs, diag_potential)), t);
    }
    return full - scatter_matrix(part, rs.to_global, fs.n());
}

double operator_norm(const Eigen::MatrixXd& D) {
    if (D.rows() == 0 || D.cols() == 0) return 0.0;
    if (std::max(D.rows(), D.cols()) <= kDenseThreshold) {
        Eigen::BDCSVD<Eigen::MatrixXd> svd(D);
        return svd.singularValues()(0);
    }
    // power iteration on D D^T
    std::mt19937_64 rng(0x5eedULL);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd v(D.cols());
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = normal(rng);
    v.normalize();
    double sigma = 0.0;
    for (int it = 0; it < 10000; ++it) {
        Eigen::VectorXd w = D * v;
        const double s = w.norm();
        if (s == 0.0) return 0.0;
        v = D.transpose() * w;
        const double nv = v.norm();
        if (nv == 0.0) return s;
        v /= nv;
        if (std::abs(s - sigma) <= 1e-10 * std::max(s, 1e-300)) return s;
        sigma = s;
    }
    return sigma;
}

double indicator_norm(const Eigen::MatrixXd& D, const VertexSet& rows) {
    if (rows.empty()) return 0.0;
    Eigen::MatrixXd sel(rows.size(), D.cols());
    int r = 0;
    for (int x : rows) sel.row(r++) = D.row(x);
    return operator_norm(sel);
}

BoundCheck bound_check(const FormSystem& fs, const VertexSet& B, const VertexSet& A, double t) {
    if (B.empty()) throw EmptySet("bound_check needs a nonempty removed set");
    A.check_range(fs.n());

    BoundCheck bc;
    bc.t = t;
    bc.A = A;
    bc.B = B;

    const RestrictedSystem rs = restrict_system(fs, B);
    bc.lhs = indicator_norm(semigroup_difference_sym(fs, rs, t), A);

    const Eigen::VectorXd hit = hitting_probability_exact(fs, B, t);
    const EquilibriumData eq = equilibrium_potential(fs, B);
    double sup_hit = 0.0, sup_eq = 0.0;
    for (int x : A) {
        sup_hit = std::max(sup_hit, hit[x]);
        sup_eq = std::max(sup_eq, eq.e_B[x]);
    }
    bc.rhs_prob = std::sqrt(sup_hit);
    bc.rhs_eq = std::exp(0.5 * t) * std::sqrt(sup_eq);
    bc.pass_prob = bc.lhs <= bc.rhs_prob + kBoundSlack;
    bc.pass_eq = bc.rhs_prob <= bc.rhs_eq + kBoundSlack;
    return bc;
}

std::pair<double, double> tail_bound_check(const FormSystem& fs, const VertexSet& B, double t,
                                           int n) {
    if (n < 1) throw IndexOutOfRange("tail level must be >= 1");
    const EquilibriumData eq = equilibrium_potential(fs, B);
    const VertexSet outside = tail_sets(eq, n).complement(fs.n());
    const RestrictedSystem rs = restrict_system(fs, B);
    const double lhs = indicator_norm(semigroup_difference_sym(fs, rs, t), outside);
    const double rhs = std::exp(0.5 * t) / std::sqrt(static_cast<double>(n));
    return {lhs, rhs};
}

PerssonSweep persson_sweep_shifted(const FormSystem& fs, const Eigen::VectorXd& diag_potential,
                                   const std::vector<VertexSet>& exhaustion) {
    if (exhaustion.empty()) throw Error("persson sweep needs at least one exhaustion set");
    const bool shifted = diag_potential.size() != 0;
    if (shifted && diag_potential.size() != fs.n())
        throw DimensionMismatch("diagonal potential must have length n");
    for (std::size_t i = 0; i < exhaustion.size(); ++i) {
        exhaustion[i].check_range(fs.n());
        if (i + 1 < exhaustion.size() && !exhaustion[i].subset_of(exhaustion[i + 1]))
            throw ExhaustionNotNested("exhaustion sets must be nested");
    }
    if (exhaustion.back().size() == fs.n())
        throw EmptyComplement("the largest exhaustion set covers every vertex");

    PerssonSweep sweep;
    sweep.exhaustion = exhaustion;
    sweep.ground_values.resize(exhaustion.size());
    sweep.residuals.resize(exhaustion.size());

    parallel_for(exhaustion.size(), [&](std::size_t i) {
        const RestrictedSystem rs = restrict_system(fs, exhaustion[i]);
        SpectralSummary summary;
        if (shifted) {
            const Eigen::SparseMatrix<double> Sp =
                with_diagonal(rs.sub.S, restrict_vector(rs, diag_potential));
            summary = bottom_of_spectrum(Sp, 1);
        } else {
            summary = bottom_of_spectrum(rs, 1);
        }
        sweep.ground_values[i] = summary.eigenvalues.front();
        sweep.residuals[i] = summary.residuals.front();
    });

    sweep.lambda0 = *std::max_element(sweep.ground_values.begin(), sweep.ground_values.end());
    sweep.monotone = true;
    for (std::size_t i = 0; i + 1 < sweep.ground_values.size(); ++i)
        if (sweep.ground_values[i + 1] < sweep.ground_values[i] - 1e-10) sweep.monotone = false;
    return sweep;
}

PerssonSweep persson_sweep(const FormSystem& fs, const std::vector<VertexSet>& exhaustion) {
    return persson_sweep_shifted(fs, Eigen::VectorXd(), exhaustion);
}

std::vector<VertexSet> ball_exhaustion(const WeightedGraph& g, int root, int max_radius) {
    if (max_radius < 0) throw IndexOutOfRange("max_radius must be >= 0");
    const std::vector<int> dist = hop_distances(g, root);
    std::vector<VertexSet> out;
    out.reserve(static_cast<std::size_t>(max_radius) + 1);
    for (int r = 0; r <= max_radius; ++r) {
        std::vector<int> ids;
        for (int x = 0; x < g.n; ++x)
            if (dist[static_cast<std::size_t>(x)] >= 0 && dist[static_cast<std::size_t>(x)] <= r)
                ids.push_back(x);
        out.emplace_back(std::move(ids));
    }
    return out;
}

double rayleigh_quotient(const FormSystem& fs, const Eigen::VectorXd& f) {
    if (f.size() != fs.n()) throw DimensionMismatch("rayleigh_quotient: length mismatch");
    const double nsq = measure_norm_sq(fs.m, f);
    if (nsq == 0.0) throw ZeroVector("rayleigh quotient of the zero vector");
    return form_eval(fs.graph, f, f) / nsq;
}

double weyl_upper_bound(const FormSystem& fs, const std::vector<VertexSet>& exhaustion,
                        const std::vector<Eigen::VectorXd>& trials) {
    if (trials.size() != exhaustion.size())
        throw DimensionMismatch("one trial vector per exhaustion set expected");
    if (trials.empty()) throw Error("weyl_upper_bound needs a nonempty family");

    std::vector<double> quotients(trials.size());
    for (std::size_t i = 0; i < trials.size(); ++i) {
        const Eigen::VectorXd& f = trials[i];
        if (f.size() != fs.n()) throw DimensionMismatch("trial vector length mismatch");
        for (int x : exhaustion[i])
            if (f[x] != 0.0)
                throw SupportViolation("trial " + std::to_string(i) + " is nonzero on K at vertex " +
                                       std::to_string(x));
        quotients[i] = rayleigh_quotient(fs, f);
    }

    const std::size_t tail = std::max<std::size_t>(1, trials.size() / 3);
    double best = quotients[trials.size() - tail];
    for (std::size_t i = trials.size() - tail; i < trials.size(); ++i)
        best = std::max(best, quotients[i]);
    return best;
}

} // namespace dspec
