#ifndef DSPEC_POTENTIAL_HPP
#define DSPEC_POTENTIAL_HPP

#include <Eigen/Core>

#include "dspec/forms.hpp"

namespace dspec {

/// Equilibrium potential e_B and the capacity of B.
///
/// e_B solves (Q + M) e = 0 on X \ B with e = 1 on B; the capacity follows
/// the square-root convention cap(B) = (E(e,e) + ||e||^2_m)^{1/2}.
/// cap_squared() is provided for callers expecting the squared convention.
struct EquilibriumData {
    VertexSet B;
    Eigen::VectorXd e_B; // values in [0,1], equal to 1 on B
    double cap_value = 0.0;

    double cap_squared() const { return cap_value * cap_value; }
};

EquilibriumData equilibrium_potential(const FormSystem& fs, const VertexSet& B);

/// Independent route to cap(B): constraint-active minimization of
/// (E(v,v) + ||v||^2)^{1/2} over v >= 1 on B via hand-rolled CG on the
/// reduced system, with KKT sign checks. Returns 0 for empty B.
double capacity_qp(const FormSystem& fs, const VertexSet& B);

/// P^x{sigma_B <= t} for every x, computed exactly on the absorbing chain:
/// mass absorbed in B equals the time integral of the flux from U into B,
/// evaluated through the spectral decomposition of S_U. Killed mass reaches
/// the cemetery and never hits B.
Eigen::VectorXd hitting_probability_exact(const FormSystem& fs, const VertexSet& B, double t);

/// M_n = { x : e_B(x) > 1/n } (strict inequality).
VertexSet tail_sets(const EquilibriumData& eq, int n);

/// Kato-type smallness report for a nonnegative potential density.
struct KatoReport {
    double alpha = 0.0;
    double c_alpha = 0.0;
    Eigen::VectorXd potential;
};

/// c_alpha(V) = ||(L + alpha)^{-1} V||_inf, i.e. the max entry of w solving
/// (Q + alpha M) w = M V. Linear in V and nonincreasing in alpha.
KatoReport kato_constant(const FormSystem& fs, const Eigen::VectorXd& potential, double alpha);

} // namespace dspec

#endif
