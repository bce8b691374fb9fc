#include "gsc/measure.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

namespace gsc {

VertexMeasure::VertexMeasure(Eigen::VectorXd v, std::string provenance)
    : values(std::move(v)), label(std::move(provenance)) {
    if (values.size() == 0) throw InvalidParameter("vertex measure must not be empty");
    bool any_positive = false;
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        const double x = values[i];
        if (std::isnan(x) || std::isinf(x) || x < 0.0) {
            throw InvalidParameter("vertex measure entries must be finite and nonnegative");
        }
        if (x > 0.0) any_positive = true;
    }
    if (!any_positive) throw DegenerateMeasure("vertex measure must have a positive entry");
}

VertexMeasure VertexMeasure::uniform(int n) {
    return VertexMeasure(Eigen::VectorXd::Constant(n, 1.0 / n), "uniform");
}

VertexMeasure power_measure_from_iterate(const Eigen::VectorXd& iterate, int t, double gamma,
                                         double alpha) {
    if (alpha < 0.0 && (iterate.array() == 0.0).any()) {
        throw DegenerateMeasure("power measure: zero entry raised to a negative exponent");
    }
    Eigen::VectorXd powered;
    if (alpha == 1.0) {
        powered = iterate;
    } else {
        // pow(0, 0) == 1, so alpha = 0 yields the all-ones measure
        powered = iterate.array().pow(alpha).matrix();
    }
    char label[96];
    std::snprintf(label, sizeof(label), "power(t=%d,gamma=%g,alpha=%g)", t, gamma, alpha);
    return VertexMeasure(std::move(powered), label);
}

VertexMeasure power_measure(const TransitionMatrix& p_mix, int t, double alpha,
                            const std::optional<VertexMeasure>& mu) {
    if (t < 0) throw InvalidParameter("power measure requires t >= 0");
    const int n = p_mix.n();
    if (n == 0) throw InvalidParameter("power measure on an empty graph");
    Eigen::VectorXd v;
    if (mu.has_value()) {
        if (mu->size() != n) throw ShapeMismatch("mu length does not match transition matrix");
        v = mu->values;
    } else {
        v = Eigen::VectorXd::Constant(n, 1.0 / n);
    }
    for (int step = 0; step < t; ++step) v = p_mix.transpose_times(v);
    return power_measure_from_iterate(v, t, p_mix.teleport_gamma().value_or(1.0), alpha);
}

VertexMeasure outflow_measure(const VertexMeasure& nu, const TransitionMatrix& p) {
    if (nu.size() != p.n()) throw ShapeMismatch("measure length does not match transition matrix");
    return VertexMeasure(p.transpose_times(nu.values), "outflow");
}

VertexMeasure stationary_distribution(const TransitionMatrix& p, double tol, int max_iter) {
    const int n = p.n();
    if (n == 0) throw InvalidParameter("stationary distribution of an empty chain");
    if (max_iter <= 0) max_iter = 10 * n;
    Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 1.0 / n);
    double residual = 0.0;
    for (int iter = 0; iter < max_iter; ++iter) {
        Eigen::VectorXd w = p.transpose_times(v);
        Eigen::VectorXd avg = 0.5 * (v + w);
        avg /= avg.sum();
        residual = (p.transpose_times(avg) - avg).lpNorm<1>();
        if (residual < tol) return VertexMeasure(std::move(avg), "stationary");
        v = std::move(w);
    }
    throw NotConverged("stationary distribution did not converge after " +
                           std::to_string(max_iter) + " iterations",
                       residual);
}

}  // namespace gsc
