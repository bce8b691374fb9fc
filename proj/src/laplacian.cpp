#include "gsc/laplacian.hpp"

#include <cmath>

#include "gsc/errors.hpp"

namespace gsc {

namespace {

void require_positive(const Eigen::VectorXd& v, const char* what) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (!(v[i] > 0.0)) {
            throw DegenerateMeasure(std::string(what) + " must be strictly positive");
        }
    }
}

}  // namespace

GeneralizedLaplacian generalized_laplacian(const VertexMeasure& nu, const TransitionMatrix& p) {
    const int n = p.n();
    if (nu.size() != n) throw ShapeMismatch("measure length does not match transition matrix");
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);  // a(x,y) = nu(x) p(x,y)
    p.for_each([&](int x, int y, double pxy) { a(x, y) += nu.values[x] * pxy; });
    const Eigen::VectorXd xi = a.colwise().sum();
    Eigen::VectorXd weight = nu.values + xi;
    Eigen::MatrixXd m = -(a + a.transpose());
    m.diagonal() += weight;
    return GeneralizedLaplacian{std::move(m), std::move(weight), nu.label,
                                LaplacianKind::Unnormalized};
}

Eigen::MatrixXd generalized_rw_laplacian(const VertexMeasure& nu, const TransitionMatrix& p) {
    require_positive(nu.values, "random walk Laplacian measure");
    GeneralizedLaplacian lap = generalized_laplacian(nu, p);
    // L_RW(nu) = diag(nu+xi)^-1 L(nu), self-adjoint in l2(V, nu+xi)
    return lap.weight.cwiseInverse().asDiagonal() * lap.matrix;
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> classical_directed_laplacians(
    const TransitionMatrix& p, const VertexMeasure& pi) {
    const int n = p.n();
    if (pi.size() != n) throw ShapeMismatch("measure length does not match transition matrix");
    require_positive(pi.values, "ergodic measure");
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);  // b(x,y) = pi(x) p(x,y)
    p.for_each([&](int x, int y, double pxy) { b(x, y) += pi.values[x] * pxy; });
    Eigen::MatrixXd lap = -0.5 * (b + b.transpose());
    lap.diagonal() += pi.values;
    Eigen::MatrixXd lap_rw = pi.values.cwiseInverse().asDiagonal() * lap;
    return {std::move(lap_rw), std::move(lap)};
}

Eigen::MatrixXd normalized_generalized_laplacian(const GeneralizedLaplacian& lap) {
    const Eigen::Index n = lap.matrix.rows();
    if (lap.weight.size() != n) throw ShapeMismatch("weight vector does not match Laplacian");
    require_positive(lap.weight, "normalization weight nu+xi");
    const Eigen::VectorXd s = lap.weight.cwiseSqrt().cwiseInverse();
    Eigen::MatrixXd out(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            // mirrored assembly keeps the congruence exactly symmetric
            const double v = lap.matrix(i, j) * (s[i] * s[j]);
            out(i, j) = v;
            out(j, i) = v;
        }
    }
    return out;
}

}  // namespace gsc
