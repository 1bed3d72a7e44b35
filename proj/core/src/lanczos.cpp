#include "dspec/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

namespace dspec {

namespace {

// Gershgorin lower bound on the spectrum; used to pick a shift that keeps
// S + sigma I positive definite even for indefinite inputs.
double gershgorin_floor(const Eigen::SparseMatrix<double>& S) {
    const int n = static_cast<int>(S.rows());
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd offsum = Eigen::VectorXd::Zero(n);
    for (int col = 0; col < S.outerSize(); ++col) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(S, col); it; ++it) {
            if (it.row() == it.col())
                diag[it.row()] = it.value();
            else
                offsum[it.row()] += std::abs(it.value());
        }
    }
    return (diag - offsum).minCoeff();
}

double matrix_scale(const Eigen::SparseMatrix<double>& S) {
    double s = 0.0;
    for (int col = 0; col < S.outerSize(); ++col)
        for (Eigen::SparseMatrix<double>::InnerIterator it(S, col); it; ++it)
            s = std::max(s, std::abs(it.value()));
    return s;
}

} // namespace

LanczosResult smallest_eigenpairs(const Eigen::SparseMatrix<double>& S, int k,
                                  const LanczosOptions& opts) {
    const int n = static_cast<int>(S.rows());
    if (k < 1 || k > n) throw Error("smallest_eigenpairs: need 1 <= k <= n");

    const double scale = matrix_scale(S);
    double sigma = opts.shift;
    if (sigma < 0.0) {
        sigma = std::max(1e-8 * std::max(scale, 1.0), 1e-12);
        const double floor = gershgorin_floor(S);
        if (floor < 0.0) sigma -= floor; // keep S + sigma I positive definite
    }

    Eigen::SparseMatrix<double> shifted = S;
    for (int i = 0; i < n; ++i) shifted.coeffRef(i, i) += sigma;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(shifted);
    if (ldlt.info() != Eigen::Success)
        throw ConvergenceFailure("shift-invert factorization failed");

    const int m_cap = std::min(n, std::max(opts.max_subspace, 2 * k + 2));

    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    auto random_unit = [&]() {
        Eigen::VectorXd v(n);
        for (int i = 0; i < n; ++i) v[i] = normal(rng);
        v.normalize();
        return v;
    };

    Eigen::MatrixXd basis(n, m_cap);
    std::vector<double> alpha, beta; // Lanczos tridiagonal of the inverse

    Eigen::VectorXd v = random_unit();
    basis.col(0) = v;
    int m = 0;

    LanczosResult out;
    auto extract = [&](int size) -> bool {
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(size, size);
        for (int i = 0; i < size; ++i) {
            T(i, i) = alpha[static_cast<std::size_t>(i)];
            if (i + 1 < size) {
                T(i, i + 1) = beta[static_cast<std::size_t>(i)];
                T(i + 1, i) = beta[static_cast<std::size_t>(i)];
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(T);
        // Largest Ritz values of (S + sigma)^{-1} give the smallest of S.
        out.values.resize(k);
        out.vectors.resize(n, k);
        out.residuals = Eigen::VectorXd::Constant(k, std::nan(""));
        bool all_ok = true;
        for (int j = 0; j < k; ++j) {
            const int idx = size - 1 - j; // largest theta of the inverse <-> smallest lambda
            const double theta = small.eigenvalues()[idx];
            if (!(theta > 0.0)) return false; // not resolved yet
            Eigen::VectorXd x = basis.leftCols(size) * small.eigenvectors().col(idx);
            x.normalize();
            const double lambda = 1.0 / theta - sigma;
            const double resid = (S * x - lambda * x).norm();
            out.values[j] = lambda;
            out.vectors.col(j) = x;
            out.residuals[j] = resid;
            if (resid > opts.tol * (1.0 + std::abs(lambda))) all_ok = false;
        }
        return all_ok;
    };

    Eigen::VectorXd prev = Eigen::VectorXd::Zero(n);
    double beta_prev = 0.0;
    while (m < m_cap) {
        Eigen::VectorXd w = ldlt.solve(basis.col(m));
        w -= beta_prev * prev;
        const double a = basis.col(m).dot(w);
        w -= a * basis.col(m);
        // full reorthogonalization, twice over
        for (int pass = 0; pass < 2; ++pass)
            w -= basis.leftCols(m + 1) * (basis.leftCols(m + 1).transpose() * w);
        alpha.push_back(a);
        const double b = w.norm();
        ++m;

        if (m >= k && (m % 8 == 0 || m == m_cap || b <= 1e-14)) {
            if (extract(m)) {
                out.iterations = m;
                return out;
            }
        }
        if (m == m_cap) break;
        if (b <= 1e-14) {
            // invariant subspace: continue with a fresh direction
            Eigen::VectorXd f = random_unit();
            for (int pass = 0; pass < 2; ++pass)
                f -= basis.leftCols(m) * (basis.leftCols(m).transpose() * f);
            const double fn = f.norm();
            if (fn <= 1e-14) break; // basis spans everything
            basis.col(m) = f / fn;
            beta.push_back(0.0);
            beta_prev = 0.0;
            prev = Eigen::VectorXd::Zero(n);
        } else {
            basis.col(m) = w / b;
            beta.push_back(b);
            beta_prev = b;
            prev = basis.col(m - 1);
        }
    }

    if (m >= k && extract(m)) {
        out.iterations = m;
        return out;
    }
    const double achieved =
        out.residuals.size() > 0 ? out.residuals.maxCoeff() : std::nan("");
    throw ConvergenceFailure("Lanczos stalled at subspace " + std::to_string(m) +
                             ", achieved residual " + std::to_string(achieved));
}

} // namespace dspec
