#ifndef DSPEC_PERTURBATIONS_HPP
#define DSPEC_PERTURBATIONS_HPP

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "dspec/forms.hpp"
#include "dspec/potential.hpp"
#include "dspec/spectral.hpp"

namespace dspec {

/// Signed potential mu = plus - minus (densities with respect to m) with the
/// Kato smallness report for the negative part. Admissible means
/// c_alpha(minus) < 1/2, the gate under which the perturbed norm estimates
/// and Persson sweeps are meaningful.
struct Perturbation {
    Eigen::VectorXd plus;
    Eigen::VectorXd minus;
    double alpha = 1.0;
    KatoReport kato;
    bool admissible = false;

    Eigen::VectorXd signed_density() const { return plus - minus; }
};

Perturbation make_perturbation(const FormSystem& fs, const Eigen::VectorXd& plus,
                               const Eigen::VectorXd& minus, double alpha);

/// Q' = Q + M diag(mu), S' = S + diag(mu). Construction requires the
/// admissibility gate unless explicitly overridden (the override is recorded).
struct PerturbedSystem {
    FormSystem base;
    Perturbation pert;
    Eigen::SparseMatrix<double> Qp;
    Eigen::SparseMatrix<double> Sp;
    bool admissibility_overridden = false;

    int n() const { return base.n(); }
};

PerturbedSystem perturbed_system(const FormSystem& fs, const Perturbation& pert,
                                 bool override_admissibility = false);

/// Pointwise domination of the perturbed semigroup difference by the
/// difference driven by the negative part alone:
///   |(e^{-t(L+mu)} - e^{-t(L_G+mu)}) f| <= (e^{-t(L-mu_-)} - e^{-t(L_G-mu_-)}) |f|.
struct DominationReport {
    double max_violation = 0.0; // max over entries of lhs - rhs
    bool pass = false;
    Eigen::VectorXd lhs;
    Eigen::VectorXd rhs;
};

DominationReport domination_check(const FormSystem& fs, const VertexSet& B,
                                  const Perturbation& pert, const Eigen::VectorXd& f, double t);

/// Perturbed norm estimate with an explicit constant from the proof chain:
///   ||1_A (e^{-t(L+mu)} - e^{-t(L_G+mu)})|| <= C sup_A P^x{sigma_B <= t}^{1/2},
/// where C = ||e^{-t(L - 2 mu_-)}||_{L1->L1}^{1/2}.
struct PerturbedBoundReport {
    double t = 0.0;
    double lhs = 0.0;
    double constant = 0.0;      // the computed C
    double sup_prob_sqrt = 0.0; // sup over A of the hitting probability, square-rooted
    bool pass = false;

    double rhs() const { return constant * sup_prob_sqrt; }
};

PerturbedBoundReport perturbed_bound_check(const FormSystem& fs, const VertexSet& B,
                                           const VertexSet& A, const Perturbation& pert, double t);

/// L1(m) -> L1(m) operator norm of e^{-t(L - mu_-)} (maximum m-weighted
/// column sum of the exact kernel). Finite under the doubled Kato gate.
double l1_bound_check(const FormSystem& fs, const Perturbation& pert, double t);

/// Persson sweep of the perturbed generator S + diag(mu).
PerssonSweep perturbed_persson(const FormSystem& fs, const Perturbation& pert,
                               const std::vector<VertexSet>& exhaustion);

} // namespace dspec

#endif
