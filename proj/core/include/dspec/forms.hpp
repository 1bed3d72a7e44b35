#ifndef DSPEC_FORMS_HPP
#define DSPEC_FORMS_HPP

#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "dspec/graph.hpp"

namespace dspec {

/// Quadratic form of a weighted graph:
///   E(u,v) = 1/2 sum_{x,y} b(x,y)(u(x)-u(y))(v(x)-v(y)) + sum_x c(x)u(x)v(x).
double form_eval(const WeightedGraph& g, const Eigen::VectorXd& u, const Eigen::VectorXd& v);

/// sum_x m(x) u(x)^2, the squared norm of l2(X,m).
double measure_norm_sq(const Eigen::VectorXd& m, const Eigen::VectorXd& u);

/// Assembled matrices of the form and its generator.
///
/// Q is the form matrix (u^T Q u = E(u,u)); the generator L = M^{-1} Q acts
/// on l2(X,m) and is unitarily equivalent to the symmetric matrix
/// S = M^{-1/2} Q M^{-1/2}, which is what all eigensolvers work on.
struct FormSystem {
    WeightedGraph graph;
    Eigen::SparseMatrix<double> Q;
    Eigen::VectorXd m;
    Eigen::SparseMatrix<double> S;

    int n() const { return graph.n; }
};

FormSystem assemble(const WeightedGraph& g);

/// The Dirichlet restriction of a graph form to U = X \ removed is again a
/// graph form on U: edges into the removed set fold into the killing term.
WeightedGraph restrict_graph(const WeightedGraph& g, const VertexSet& removed);

/// Principal subsystem on U = X \ B with index maps back to the parent.
struct RestrictedSystem {
    VertexSet removed;
    std::vector<int> to_global; // local index -> parent index
    std::vector<int> to_local;  // parent index -> local index, -1 on removed
    FormSystem sub;
    int parent_n = 0;

    int n() const { return sub.n(); }
};

/// Dirichlet restriction; B = empty yields a copy of the parent.
/// Throws EmptyComplement when B covers every vertex.
RestrictedSystem restrict_system(const FormSystem& fs, const VertexSet& B);

/// Zero-extension from U to X; preserves the l2(m) norm.
Eigen::VectorXd extend_by_zero(const RestrictedSystem& rs, const Eigen::VectorXd& u_local);

/// Restriction of a global vector to U (left inverse of extend_by_zero).
Eigen::VectorXd restrict_vector(const RestrictedSystem& rs, const Eigen::VectorXd& u_global);

} // namespace dspec

#endif
