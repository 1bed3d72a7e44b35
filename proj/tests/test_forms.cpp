#include <doctest.h>

#include <cmath>

#include "dspec/forms.hpp"
#include "dspec/kernels.hpp"
#include "dspec/spectral.hpp"
#include "support/random_graphs.hpp"

using namespace dspec;
using dspec_tests::GraphGen;

TEST_SUITE_BEGIN("forms");

TEST_CASE("restriction keeps the full degree on the diagonal") {
    const auto fs = assemble(build_graph(2, {{0, 1, 1.0}}));
    const auto rs = restrict_system(fs, VertexSet{1});
    CHECK(rs.n() == 1);
    CHECK(Eigen::MatrixXd(rs.sub.Q)(0, 0) == doctest::Approx(1.0).epsilon(1e-15));

    const auto path = assemble(lattice_path(3, 1.0));
    const auto mid = restrict_system(path, VertexSet{1});
    const Eigen::MatrixXd Q = Eigen::MatrixXd(mid.sub.Q);
    CHECK(Q(0, 0) == doctest::Approx(1.0));
    CHECK(Q(1, 1) == doctest::Approx(1.0));
    CHECK(Q(0, 1) == 0.0); // the two survivors are now isolated Dirichlet vertices
}

TEST_CASE("restricting by the empty set copies the parent") {
    GraphGen gen(5);
    const auto fs = assemble(gen.random_graph(2, 10));
    const auto rs = restrict_system(fs, VertexSet{});
    CHECK(rs.n() == fs.n());
    CHECK((Eigen::MatrixXd(rs.sub.Q) - Eigen::MatrixXd(fs.Q)).norm() == 0.0);
    CHECK(rs.sub.m == fs.m);
}

TEST_CASE("removing every vertex is rejected") {
    const auto fs = assemble(build_graph(2, {{0, 1, 1.0}}));
    CHECK_THROWS_AS(restrict_system(fs, VertexSet{0, 1}), EmptyComplement);
}

TEST_CASE("the restricted system is the principal submatrix of Q") {
    GraphGen gen(6);
    for (int trial = 0; trial < 40; ++trial) {
        const auto g = gen.random_graph(2, 20);
        if (g.n < 2) continue;
        const auto fs = assemble(g);
        const auto B = gen.random_removed_set(g.n);
        const auto rs = restrict_system(fs, B);
        const Eigen::MatrixXd full = Eigen::MatrixXd(fs.Q);
        const Eigen::MatrixXd sub = Eigen::MatrixXd(rs.sub.Q);
        for (int i = 0; i < rs.n(); ++i)
            for (int j = 0; j < rs.n(); ++j) {
                const double expect = full(rs.to_global[static_cast<std::size_t>(i)],
                                           rs.to_global[static_cast<std::size_t>(j)]);
                CHECK(sub(i, j) == doctest::Approx(expect).epsilon(1e-13).scale(1.0));
            }
    }
}

TEST_CASE("extend_by_zero maps through the index set and keeps the norm") {
    const auto fs = assemble(build_graph(2, {{0, 1, 1.0}}));
    const auto rs = restrict_system(fs, VertexSet{1});
    Eigen::VectorXd u(1);
    u << 5.0;
    const Eigen::VectorXd ext = extend_by_zero(rs, u);
    CHECK(ext[0] == 5.0);
    CHECK(ext[1] == 0.0);
    CHECK(measure_norm_sq(fs.m, ext) == doctest::Approx(measure_norm_sq(rs.sub.m, u)));

    const Eigen::VectorXd zero = extend_by_zero(rs, Eigen::VectorXd::Zero(1));
    CHECK(zero.norm() == 0.0);

    const auto path = assemble(lattice_path(3, 1.0));
    const auto mid = restrict_system(path, VertexSet{1});
    Eigen::VectorXd ab(2);
    ab << 2.0, 3.0;
    const Eigen::VectorXd ext3 = extend_by_zero(mid, ab);
    CHECK(ext3[0] == 2.0);
    CHECK(ext3[1] == 0.0);
    CHECK(ext3[2] == 3.0);

    CHECK_THROWS_AS(extend_by_zero(mid, Eigen::VectorXd::Zero(3)), DimensionMismatch);
    CHECK(restrict_vector(mid, ext3) == ab);
}

TEST_CASE("Cauchy interlacing under Dirichlet restriction, 500 random pairs") {
    GraphGen gen(404);
    for (int trial = 0; trial < 500; ++trial) {
        const auto g = gen.random_graph(2, 30);
        if (g.n < 2) continue;
        const auto fs = assemble(g);
        const auto B = gen.random_removed_set(g.n);
        const auto rs = restrict_system(fs, B);
        const auto lam = spectrum_dense(fs).eigenvalues;
        const auto lam_u = spectrum_dense(rs.sub).eigenvalues;
        const int drop = B.size();
        for (std::size_t k = 0; k < lam_u.size(); ++k) {
            CHECK(lam[k] <= lam_u[k] + 1e-10);
            CHECK(lam_u[k] <= lam[k + static_cast<std::size_t>(drop)] + 1e-10);
        }
        CHECK(lam_u.front() + 1e-10 >= lam.front()); // domain monotonicity at the bottom
    }
}

TEST_CASE("domain monotonicity: larger removed sets raise the ground value") {
    GraphGen gen(405);
    for (int trial = 0; trial < 60; ++trial) {
        const auto g = gen.random_graph(3, 24);
        if (g.n < 3) continue;
        const auto fs = assemble(g);
        auto b2 = gen.random_removed_set(g.n);
        if (b2.size() < 2) continue;
        std::vector<int> half(b2.ids().begin(), b2.ids().begin() + b2.size() / 2);
        if (half.empty()) continue;
        const VertexSet b1(half);
        const double l1 = spectrum_dense(restrict_system(fs, b1).sub).eigenvalues.front();
        const double l2 = spectrum_dense(restrict_system(fs, b2).sub).eigenvalues.front();
        CHECK(l1 <= l2 + 1e-10);
    }
}

TEST_SUITE_END();
