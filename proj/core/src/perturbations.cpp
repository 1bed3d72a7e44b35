#include "dspec/perturbations.hpp"

#include <cmath>
#include <string>

namespace dspec {

namespace {

void check_density(const FormSystem& fs, const Eigen::VectorXd& v, const char* which) {
    if (v.size() != fs.n())
        throw DimensionMismatch(std::string(which) + " density must have length n");
    for (int i = 0; i < v.size(); ++i)
        if (!(v[i] >= 0.0) || !std::isfinite(v[i]))
            throw NegativeDensity(std::string(which) +
                                  " density must be finite and >= 0 (infinite-weight sets are "
                                  "handled by restriction, not by densities)");
}

Eigen::SparseMatrix<double> plus_diag(const Eigen::SparseMatrix<double>& S,
                                      const Eigen::VectorXd& d) {
    Eigen::SparseMatrix<double> out = S;
    for (int i = 0; i < out.rows(); ++i) out.coeffRef(i, i) += d[i];
    return out;
}

double l1m_norm(const Eigen::MatrixXd& E, const Eigen::VectorXd& m) {
    double best = 0.0;
    for (Eigen::Index j = 0; j < E.cols(); ++j) {
        double col = 0.0;
        for (Eigen::Index i = 0; i < E.rows(); ++i) col += m[i] * std::abs(E(i, j));
        best = std::max(best, col / m[j]);
    }
    return best;
}

void require_admissible(const Perturbation& pert, const char* what) {
    if (!pert.admissible)
        throw InadmissiblePerturbation(std::string(what) + ": c_alpha(mu_-) = " +
                                       std::to_string(pert.kato.c_alpha) + " is not < 1/2");
}

} // namespace

Perturbation make_perturbation(const FormSystem& fs, const Eigen::VectorXd& plus,
                               const Eigen::VectorXd& minus, double alpha) {
    check_density(fs, plus, "positive");
    check_density(fs, minus, "negative");
    if (!(alpha > 0.0)) throw NonPositiveAlpha("alpha must be > 0");

    Perturbation pert;
    pert.plus = plus;
    pert.minus = minus;
    pert.alpha = alpha;
    pert.kato = kato_constant(fs, minus, alpha);
    pert.admissible = pert.kato.c_alpha < 0.5;
    return pert;
}

PerturbedSystem perturbed_system(const FormSystem& fs, const Perturbation& pert,
                                 bool override_admissibility) {
    if (!pert.admissible && !override_admissibility)
        require_admissible(pert, "perturbed_system");

    PerturbedSystem ps;
    ps.base = fs;
    ps.pert = pert;
    ps.admissibility_overridden = !pert.admissible && override_admissibility;

    const Eigen::VectorXd mu = pert.signed_density();
    ps.Sp = plus_diag(fs.S, mu);
    ps.Qp = plus_diag(fs.Q, fs.m.cwiseProduct(mu));
    return ps;
}

DominationReport domination_check(const FormSystem& fs, const VertexSet& B,
                                  const Perturbation& pert, const Eigen::VectorXd& f, double t) {
    if (B.empty()) throw EmptySet("domination check needs a nonempty removed set");
    if (f.size() != fs.n()) throw DimensionMismatch("f must have length n");
    if (!(t > 0.0)) throw NegativeTime("t must be > 0");

    const RestrictedSystem rs = restrict_system(fs, B);
    const Eigen::VectorXd mu = pert.signed_density();
    const Eigen::VectorXd neg = -pert.minus;

    // Differences act on functions, so convert the symmetrized differences
    // with the measure weights on both sides.
    const Eigen::VectorXd r = fs.m.cwiseSqrt();
    const auto to_function_basis = [&](const Eigen::MatrixXd& D) -> Eigen::MatrixXd {
        return r.cwiseInverse().asDiagonal() * D * r.asDiagonal();
    };

    const Eigen::MatrixXd diff_mu = to_function_basis(semigroup_difference_sym(fs, rs, t, mu));
    const Eigen::MatrixXd diff_neg = to_function_basis(semigroup_difference_sym(fs, rs, t, neg));

    DominationReport rep;
    rep.lhs = (diff_mu * f).cwiseAbs();
    rep.rhs = diff_neg * f.cwiseAbs();
    rep.max_violation = (rep.lhs - rep.rhs).maxCoeff();
    rep.pass = rep.max_violation <= kBoundSlack;
    return rep;
}

PerturbedBoundReport perturbed_bound_check(const FormSystem& fs, const VertexSet& B,
                                           const VertexSet& A, const Perturbation& pert,
                                           double t) {
    require_admissible(pert, "perturbed_bound_check");
    if (B.empty()) throw EmptySet("perturbed bound needs a nonempty removed set");
    A.check_range(fs.n());
    if (!(t > 0.0)) throw NegativeTime("t must be > 0");

    const RestrictedSystem rs = restrict_system(fs, B);

    PerturbedBoundReport rep;
    rep.t = t;
    rep.lhs = indicator_norm(semigroup_difference_sym(fs, rs, t, pert.signed_density()), A);

    // C^2 = L1 norm of e^{-t(L - 2 mu_-)}, exactly the constant the
    // Cauchy-Schwarz step of the estimate produces.
    const Eigen::MatrixXd doubled =
        function_basis_semigroup(plus_diag(fs.S, -2.0 * pert.minus), fs.m, t);
    rep.constant = std::sqrt(l1m_norm(doubled, fs.m));

    const Eigen::VectorXd hit = hitting_probability_exact(fs, B, t);
    double sup = 0.0;
    for (int x : A) sup = std::max(sup, hit[x]);
    rep.sup_prob_sqrt = std::sqrt(sup);

    rep.pass = rep.lhs <= rep.rhs() + kBoundSlack;
    return rep;
}

double l1_bound_check(const FormSystem& fs, const Perturbation& pert, double t) {
    // The proof needs the doubled potential in the Kato gate; by linearity
    // c_alpha(2 mu_-) < 1 is exactly admissibility.
    require_admissible(pert, "l1_bound_check");
    if (t < 0.0) throw NegativeTime("t must be >= 0");
    const Eigen::MatrixXd E = function_basis_semigroup(plus_diag(fs.S, -pert.minus), fs.m, t);
    const double norm = l1m_norm(E, fs.m);
    if (!std::isfinite(norm)) throw ConvergenceFailure("L1 norm is not finite");
    return norm;
}

PerssonSweep perturbed_persson(const FormSystem& fs, const Perturbation& pert,
                               const std::vector<VertexSet>& exhaustion) {
    require_admissible(pert, "perturbed_persson");
    return persson_sweep_shifted(fs, pert.signed_density(), exhaustion);
}

} // namespace dspec
