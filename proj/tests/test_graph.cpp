#include <doctest.h>

#include <cmath>
#include <limits>

#include "dspec/forms.hpp"
#include "dspec/graph.hpp"
#include "support/random_graphs.hpp"

using namespace dspec;
using dspec_tests::GraphGen;

TEST_SUITE_BEGIN("graph");

TEST_CASE("build_graph stores symmetric weights") {
    const auto g = build_graph(2, {{0, 1, 1.0}});
    CHECK(g.weight(0, 1) == 1.0);
    CHECK(g.weight(1, 0) == 1.0);
    CHECK(g.edge_count() == 1);
}

TEST_CASE("build_graph sums duplicate entries across orientations") {
    const auto g = build_graph(2, {{0, 1, 0.5}, {1, 0, 0.5}});
    CHECK(g.weight(0, 1) == 1.0);
    CHECK(g.edge_count() == 1);
}

TEST_CASE("build_graph rejects bad input") {
    CHECK_THROWS_AS(build_graph(2, {{0, 0, 1.0}}), SelfLoop);
    CHECK_THROWS_AS(build_graph(2, {{0, 2, 1.0}}), IndexOutOfRange);
    CHECK_THROWS_AS(build_graph(2, {{0, 1, -1.0}}), NegativeWeight);
    CHECK_THROWS_AS(build_graph(2, {{0, 1, std::nan("")}}), NegativeWeight);
    CHECK_THROWS_AS(build_graph(2, {{0, 1, std::numeric_limits<double>::infinity()}}),
                    NegativeWeight);
    CHECK_THROWS_AS(build_graph(2, {}, Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(2)),
                    NonPositiveMeasure);
    CHECK_THROWS_AS(build_graph(2, {}, Eigen::VectorXd::Constant(2, -1.0),
                                Eigen::VectorXd::Ones(2)),
                    NegativeWeight);
    Eigen::VectorXd bad_m = Eigen::VectorXd::Ones(2);
    bad_m[1] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(build_graph(2, {}, Eigen::VectorXd::Zero(2), bad_m), NonPositiveMeasure);
    CHECK_THROWS_AS(build_graph(2, {}, Eigen::VectorXd::Zero(3), Eigen::VectorXd::Ones(3)),
                    DimensionMismatch);
}

TEST_CASE("zero-weight edges are dropped") {
    const auto g = build_graph(3, {{0, 1, 0.0}, {1, 2, 1.0}});
    CHECK(g.edge_count() == 1);
    CHECK(g.weight(0, 1) == 0.0);
}

TEST_CASE("form_eval on the two-vertex graph") {
    const auto g = build_graph(2, {{0, 1, 1.0}});
    Eigen::VectorXd u(2);
    u << 1.0, 0.0;
    CHECK(form_eval(g, u, u) == doctest::Approx(1.0).epsilon(1e-14));

    Eigen::VectorXd kill(2);
    kill << 1.0, 0.0;
    const auto gk = build_graph(2, {{0, 1, 1.0}}, kill, Eigen::VectorXd::Ones(2));
    CHECK(form_eval(gk, u, u) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("form_eval vanishes on constants without killing") {
    GraphGen gen(11);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = gen.random_graph(1, 15);
        g.kill.setZero();
        const Eigen::VectorXd ones = Eigen::VectorXd::Constant(g.n, 2.5);
        CHECK(std::abs(form_eval(g, ones, ones)) <= 1e-12);
    }
}

TEST_CASE("form_eval checks dimensions and is symmetric bilinear") {
    GraphGen gen(12);
    const auto g = gen.random_graph(3, 12);
    CHECK_THROWS_AS(form_eval(g, Eigen::VectorXd::Zero(g.n + 1), Eigen::VectorXd::Zero(g.n)),
                    DimensionMismatch);
    const Eigen::VectorXd u = gen.random_vector(g.n);
    const Eigen::VectorXd v = gen.random_vector(g.n);
    const Eigen::VectorXd w = gen.random_vector(g.n);
    CHECK(form_eval(g, u, v) == doctest::Approx(form_eval(g, v, u)).epsilon(1e-13));
    const double lhs = form_eval(g, u + w, v);
    const double rhs = form_eval(g, u, v) + form_eval(g, w, v);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
}

TEST_CASE("assemble produces the expected matrices") {
    const auto fs = assemble(build_graph(2, {{0, 1, 1.0}}));
    const Eigen::MatrixXd Q = Eigen::MatrixXd(fs.Q);
    CHECK(Q(0, 0) == 1.0);
    CHECK(Q(0, 1) == -1.0);
    CHECK(Q(1, 0) == -1.0);
    CHECK(Q(1, 1) == 1.0);

    // single vertex, pure killing
    Eigen::VectorXd c1(1), m1(1);
    c1 << 3.0;
    m1 << 1.0;
    const auto fs1 = assemble(build_graph(1, {}, c1, m1));
    CHECK(Eigen::MatrixXd(fs1.Q)(0, 0) == 3.0);
    CHECK(Eigen::MatrixXd(fs1.S)(0, 0) == 3.0);

    // non-uniform measure
    Eigen::VectorXd m2(2);
    m2 << 4.0, 1.0;
    const auto fs2 = assemble(build_graph(2, {{0, 1, 1.0}}, Eigen::VectorXd::Zero(2), m2));
    const Eigen::MatrixXd S = Eigen::MatrixXd(fs2.S);
    CHECK(S(0, 0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(S(0, 1) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(S(1, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(S(0, 1) == S(1, 0)); // bitwise symmetric storage
}

TEST_CASE("quadratic form consistency over 200 random graphs") {
    GraphGen gen(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const auto g = gen.random_graph(1, 30);
        const auto fs = assemble(g);
        const Eigen::VectorXd u = gen.random_vector(g.n, -2.0, 2.0);
        const double direct = form_eval(g, u, u);
        const double via_q = u.dot(fs.Q * u);
        CHECK(std::abs(direct - via_q) <= 1e-12 * (1.0 + std::abs(via_q)));
    }
}

TEST_CASE("Markov structure of Q: nonpositive off-diagonal, row sums = c") {
    GraphGen gen(77);
    for (int trial = 0; trial < 50; ++trial) {
        const auto g = gen.random_graph(1, 25);
        const auto fs = assemble(g);
        const Eigen::MatrixXd Q = Eigen::MatrixXd(fs.Q);
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j)
                if (i != j) CHECK(Q(i, j) <= 0.0);
        const Eigen::VectorXd rowsum = Q * Eigen::VectorXd::Ones(g.n);
        for (int i = 0; i < g.n; ++i)
            CHECK(rowsum[i] == doctest::Approx(g.kill[i]).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("normal contractions do not increase the form") {
    GraphGen gen(31);
    const auto contractions = std::vector<double (*)(double)>{
        [](double x) { return std::abs(x); },
        [](double x) { return x > 0.0 ? x : 0.0; },
        [](double x) { return std::clamp(x, 0.0, 1.0); },
    };
    for (int trial = 0; trial < 60; ++trial) {
        const auto g = gen.random_graph(1, 20);
        const Eigen::VectorXd u = gen.random_vector(g.n, -2.0, 2.0);
        const double base = form_eval(g, u, u);
        for (const auto& C : contractions) {
            Eigen::VectorXd cu = u;
            for (int i = 0; i < g.n; ++i) cu[i] = C(u[i]);
            CHECK(form_eval(g, cu, cu) <= base + 1e-12);
        }
    }
}

TEST_CASE("vertex sets sort, dedup and validate") {
    const VertexSet s({3, 1, 3, 2});
    CHECK(s.size() == 3);
    CHECK(s.ids() == std::vector<int>{1, 2, 3});
    CHECK(s.contains(2));
    CHECK(!s.contains(0));
    CHECK_THROWS_AS(VertexSet({-1}), IndexOutOfRange);
    CHECK_THROWS_AS(s.check_range(3), IndexOutOfRange);
    CHECK(s.complement(5).ids() == std::vector<int>{0, 4});
    CHECK(VertexSet({1, 2}).subset_of(s));
    CHECK(!s.subset_of(VertexSet({1, 2})));
}

TEST_SUITE_END();
