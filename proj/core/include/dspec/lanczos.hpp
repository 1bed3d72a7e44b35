#ifndef DSPEC_LANCZOS_HPP
#define DSPEC_LANCZOS_HPP

#include <cstdint>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "dspec/errors.hpp"

namespace dspec {

struct LanczosOptions {
    int max_subspace = 400;   // hard cap on the Krylov basis size
    double tol = 1e-10;       // accept when ||S v - l v|| <= tol * (1 + |l|)
    double shift = -1.0;      // spectral shift; chosen automatically when < 0
    std::uint64_t seed = 0x5eedULL;
};

struct LanczosResult {
    Eigen::VectorXd values;    // k smallest eigenvalues, ascending
    Eigen::MatrixXd vectors;   // matching unit eigenvectors (columns)
    Eigen::VectorXd residuals; // ||S v - l v|| per pair
    int iterations = 0;
};

/// Smallest eigenpairs of a sparse symmetric matrix by shift-invert Lanczos
/// with full reorthogonalization: factor S + sigma I once, run Lanczos on its
/// inverse, and certify every returned pair by its residual with respect to
/// the original matrix. Ritz values approach the spectrum from above, so the
/// reported bottom value is always an upper bound on the true one.
///
/// Throws ConvergenceFailure (message carries the achieved residual) if the
/// tolerance is not reached within max_subspace basis vectors.
LanczosResult smallest_eigenpairs(const Eigen::SparseMatrix<double>& S, int k,
                                  const LanczosOptions& opts = {});

} // namespace dspec

#endif
