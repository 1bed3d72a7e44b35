#ifndef DSPEC_SPECTRAL_HPP
#define DSPEC_SPECTRAL_HPP

#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "dspec/forms.hpp"
#include "dspec/potential.hpp"

namespace dspec {

/// Matrices at or below this size go through dense decompositions
/// (eigensolve, matrix exponential, singular values).
inline constexpr int kDenseThreshold = 2000;

/// Slack allowed when asserting the exact operator inequalities.
inline constexpr double kBoundSlack = 1e-10;

enum class EigMethod { Auto, Dense, Iterative };

struct SpectralSummary {
    std::vector<double> eigenvalues; // ascending
    std::vector<double> residuals;   // ||S v - lambda v|| per reported pair
    EigMethod method = EigMethod::Dense;
    int requested = 0;
};

/// Full spectrum by dense symmetric eigensolve; the oracle everything else
/// is checked against. Throws TooLargeForDense above kDenseThreshold.
SpectralSummary spectrum_dense(const Eigen::SparseMatrix<double>& S);
SpectralSummary spectrum_dense(const FormSystem& fs);

/// k smallest eigenvalues; dense for small matrices, shift-invert Lanczos
/// with residual certification for large ones. The FormSystem and
/// RestrictedSystem overloads additionally check nonnegativity of the
/// reported values (the form is positive semidefinite).
SpectralSummary bottom_of_spectrum(const Eigen::SparseMatrix<double>& S, int k,
                                   EigMethod method = EigMethod::Auto);
SpectralSummary bottom_of_spectrum(const FormSystem& fs, int k, EigMethod method = EigMethod::Auto);
SpectralSummary bottom_of_spectrum(const RestrictedSystem& rs, int k,
                                   EigMethod method = EigMethod::Auto);

/// expm(-t S) of a symmetric matrix via spectral decomposition.
Eigen::MatrixXd sym_semigroup(const Eigen::SparseMatrix<double>& S, double t);

/// Semigroup acting on functions: M^{-1/2} expm(-t S) M^{1/2}. Entries are
/// the kernel of e^{-tL} so that row sums applied to the constant 1 exhibit
/// the sub-Markov property.
Eigen::MatrixXd function_basis_semigroup(const Eigen::SparseMatrix<double>& S,
                                         const Eigen::VectorXd& m, double t);

Eigen::MatrixXd semigroup_matrix(const FormSystem& fs, double t);

/// Restricted semigroup in the parent's coordinates, extended by zero on
/// the removed set.
Eigen::MatrixXd semigroup_matrix(const RestrictedSystem& rs, double t);

/// e^{-tS_full} - e^{-tS_U} (zero-extended), in symmetrized coordinates,
/// optionally with a diagonal potential added to both generators. Its row
/// selections give the l2(X,m) operator norms of the Prop.-style bounds.
Eigen::MatrixXd semigroup_difference_sym(const FormSystem& fs, const RestrictedSystem& rs,
                                         double t,
                                         const Eigen::VectorXd& diag_potential = Eigen::VectorXd());

/// Largest singular value: dense SVD below kDenseThreshold, power iteration
/// on D D^T (1e-10 relative tolerance, 10000 iteration cap) above.
double operator_norm(const Eigen::MatrixXd& D);

/// operator_norm of the rows of D selected by the set (0 when empty).
double indicator_norm(const Eigen::MatrixXd& D, const VertexSet& rows);

/// One instance of the decomposition norm estimate
///   ||1_A (e^{-tL} - e^{-tL_G})|| <= sup_A P^x{sigma_B <= t}^{1/2}
///                                 <= e^{t/2} sup_A e_B^{1/2}.
struct BoundCheck {
    double t = 0.0;
    VertexSet A;
    VertexSet B;
    double lhs = 0.0;
    double rhs_prob = 0.0;
    double rhs_eq = 0.0;
    bool pass_prob = false; // lhs <= rhs_prob + slack
    bool pass_eq = false;   // rhs_prob <= rhs_eq + slack

    bool pass() const { return pass_prob && pass_eq; }
};

BoundCheck bound_check(const FormSystem& fs, const VertexSet& B, const VertexSet& A, double t);

/// (||1_{X \ M_n} (e^{-tL} - e^{-tL_G})||, e^{t/2} n^{-1/2}) with
/// M_n = { e_B > 1/n }; the first component never exceeds the second.
std::pair<double, double> tail_bound_check(const FormSystem& fs, const VertexSet& B, double t,
                                           int n);

/// Ground values over a nested exhaustion; their supremum estimates the
/// bottom of the essential spectrum of the model the family truncates.
struct PerssonSweep {
    std::vector<VertexSet> exhaustion;
    std::vector<double> ground_values;
    std::vector<double> residuals;
    double lambda0 = 0.0; // max of ground_values
    bool monotone = false;
};

PerssonSweep persson_sweep(const FormSystem& fs, const std::vector<VertexSet>& exhaustion);

/// Sweep of S + diag(potential); used for Schroedinger-type perturbations.
PerssonSweep persson_sweep_shifted(const FormSystem& fs, const Eigen::VectorXd& diag_potential,
                                   const std::vector<VertexSet>& exhaustion);

/// Hop-distance balls around a root: K_r = { dist(x, root) <= r } for
/// r = 0..max_radius. Ties are resolved by ascending index automatically.
std::vector<VertexSet> ball_exhaustion(const WeightedGraph& g, int root, int max_radius);

/// E(f,f) / ||f||^2_m; throws ZeroVector for f = 0.
double rayleigh_quotient(const FormSystem& fs, const Eigen::VectorXd& f);

/// Variational upper-bound certificate for the sweep value: each trial must
/// vanish on its exhaustion set, and the maximum Rayleigh quotient over the
/// tail (last third) of the family dominates the sweep's lambda0.
double weyl_upper_bound(const FormSystem& fs, const std::vector<VertexSet>& exhaustion,
                        const std::vector<Eigen::VectorXd>& trials);

} // namespace dspec

#endif
