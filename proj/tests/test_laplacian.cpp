#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>

#include "gsc/energy.hpp"
#include "gsc/laplacian.hpp"
#include "gsc/measure.hpp"
#include "test_support.hpp"

using namespace gsc;

namespace {

TransitionMatrix two_cycle() {
    Eigen::MatrixXd w(2, 2);
    w << 0, 1, 1, 0;
    return transition_matrix(Digraph::from_adjacency(w));
}

VertexMeasure vm(std::initializer_list<double> vals) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(vals.size()));
    Eigen::Index i = 0;
    for (double x : vals) v[i++] = x;
    return VertexMeasure(std::move(v), "custom");
}

}  // namespace

TEST_CASE("generalized laplacian on the 2-cycle") {
    const TransitionMatrix p = two_cycle();

    const GeneralizedLaplacian unit = generalized_laplacian(vm({1, 1}), p);
    Eigen::MatrixXd expected(2, 2);
    expected << 2, -2, -2, 2;
    CHECK(unit.matrix.isApprox(expected, 1e-14));
    CHECK(unit.weight[0] == 2.0);
    CHECK(unit.weight[1] == 2.0);

    const GeneralizedLaplacian skew = generalized_laplacian(vm({2, 1}), p);
    Eigen::MatrixXd expected2(2, 2);
    expected2 << 3, -3, -3, 3;
    CHECK(skew.matrix.isApprox(expected2, 1e-14));

    Eigen::VectorXd wrong = Eigen::VectorXd::Ones(3);
    CHECK_THROWS_AS(generalized_laplacian(VertexMeasure(wrong, "custom"), p), ShapeMismatch);
}

TEST_CASE("generalized rw laplacian") {
    const TransitionMatrix p = two_cycle();
    Eigen::MatrixXd expected(2, 2);
    expected << 1, -1, -1, 1;
    CHECK(generalized_rw_laplacian(vm({1, 1}), p).isApprox(expected, 1e-14));
    CHECK(generalized_rw_laplacian(vm({2, 1}), p).isApprox(expected, 1e-14));

    Eigen::VectorXd with_zero(2);
    with_zero << 1.0, 0.0;
    CHECK_THROWS_AS(generalized_rw_laplacian(VertexMeasure(with_zero, "custom"), p),
                    DegenerateMeasure);
}

TEST_CASE("rw laplacian rows sum to zero for random positive measures") {
    Rng rng(3);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_below(9));
        const Digraph g = gsc_test::random_digraph(rng, n, 0.5);
        const TransitionMatrix p = transition_matrix(g);
        const VertexMeasure nu = gsc_test::random_measure(rng, n);
        const Eigen::MatrixXd rw = generalized_rw_laplacian(nu, p);
        CHECK(rw.rowwise().sum().cwiseAbs().maxCoeff() <= 1e-9);
        // relation to the unnormalized operator
        const GeneralizedLaplacian lap = generalized_laplacian(nu, p);
        const Eigen::MatrixXd recon = lap.weight.asDiagonal() * rw;
        CHECK((recon - lap.matrix).cwiseAbs().maxCoeff() <= 1e-9);
        // self-adjoint in l2(V, nu+xi)
        const Eigen::MatrixXd weighted = lap.weight.asDiagonal() * rw;
        CHECK((weighted - weighted.transpose()).cwiseAbs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("classical directed laplacians") {
    const TransitionMatrix p = two_cycle();
    const auto [rw, lap] = classical_directed_laplacians(p, vm({0.5, 0.5}));
    Eigen::MatrixXd expected_rw(2, 2);
    expected_rw << 1, -1, -1, 1;
    CHECK(rw.isApprox(expected_rw, 1e-14));
    CHECK(lap.isApprox(0.5 * expected_rw, 1e-14));

    // D(f) = 2 <f, L f> with f = (1,0) matches the classical energy 1
    Eigen::VectorXd f(2);
    f << 1, 0;
    CHECK(2.0 * f.dot(lap * f) == doctest::Approx(1.0));

    Eigen::VectorXd zero(2);
    zero << 0.5, 0.0;
    CHECK_THROWS_AS(classical_directed_laplacians(p, VertexMeasure(zero, "custom")),
                    DegenerateMeasure);
}

TEST_CASE("undirected special case recovers D - W up to scale") {
    Eigen::MatrixXd w(2, 2);
    w << 0, 1, 1, 0;
    const Digraph g = Digraph::from_adjacency(w);
    const TransitionMatrix p = transition_matrix(g);
    // pi proportional to degree: uniform here
    const auto [rw, lap] = classical_directed_laplacians(p, vm({0.5, 0.5}));
    Eigen::MatrixXd dw(2, 2);
    dw << 1, -1, -1, 1;
    CHECK(rw.isApprox(Eigen::MatrixXd::Identity(2, 2) - p.dense(), 1e-14));
    CHECK(lap.isApprox(0.5 * dw, 1e-14));
}

TEST_CASE("generalized laplacian at pi equals twice the classical one") {
    Rng rng(9);
    for (int trial = 0; trial < 15; ++trial) {
        const int n = 3 + static_cast<int>(rng.next_below(8));
        const Digraph g = gsc_test::random_ergodic_digraph(rng, n);
        const TransitionMatrix p = transition_matrix(g);
        const VertexMeasure pi = stationary_distribution(p, 1e-13, 5000);
        const GeneralizedLaplacian gen = generalized_laplacian(pi, p);
        const auto [rw, classical] = classical_directed_laplacians(p, pi);
        (void)rw;
        CHECK((gen.matrix - 2.0 * classical).cwiseAbs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("normalized generalized laplacian") {
    const TransitionMatrix p = two_cycle();
    const GeneralizedLaplacian lap = generalized_laplacian(vm({1, 1}), p);
    const Eigen::MatrixXd norm = normalized_generalized_laplacian(lap);
    Eigen::MatrixXd expected(2, 2);
    expected << 1, -1, -1, 1;
    CHECK(norm.isApprox(expected, 1e-14));

    // kernel direction sqrt(nu+xi) has Rayleigh quotient zero
    const Eigen::VectorXd kernel = lap.weight.cwiseSqrt();
    CHECK(std::abs(kernel.dot(norm * kernel)) <= 1e-12);

    // exact symmetry by construction
    CHECK((norm - norm.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("normalized laplacian eigenvalues live in [0,2]") {
    Rng rng(15);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_below(9));
        const Digraph g = gsc_test::random_digraph(rng, n, 0.5);
        const TransitionMatrix p = transition_matrix(g);
        const VertexMeasure nu = gsc_test::random_measure(rng, n);
        const Eigen::MatrixXd norm = normalized_generalized_laplacian(generalized_laplacian(nu, p));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(norm);
        CHECK(eig.eigenvalues().minCoeff() >= -1e-8);
        CHECK(eig.eigenvalues().maxCoeff() <= 2.0 + 1e-8);
    }
}

TEST_CASE("operator identities on random measure-graph pairs") {
    Rng rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_below(11));
        const Digraph g = gsc_test::random_digraph(rng, n, 0.4);
        const TransitionMatrix p = transition_matrix(g);
        const VertexMeasure nu = gsc_test::random_measure(rng, n);
        const GeneralizedLaplacian lap = generalized_laplacian(nu, p);

        CHECK((lap.matrix - lap.matrix.transpose()).cwiseAbs().maxCoeff() <= 1e-10);
        CHECK((lap.matrix * Eigen::VectorXd::Ones(n)).cwiseAbs().maxCoeff() <= 1e-9);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(lap.matrix);
        CHECK(eig.eigenvalues().minCoeff() >= -1e-8);

        const Eigen::MatrixXd p_dense = p.dense();
        for (int rep = 0; rep < 3; ++rep) {
            const Eigen::VectorXd f = gsc_test::random_vector(rng, n);
            const double oracle = gsc_test::oracle_dirichlet(nu.values, p_dense, f);
            CHECK(std::abs(f.dot(lap.matrix * f) - oracle) <= 1e-9);
        }
    }
}
