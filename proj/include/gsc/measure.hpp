#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>

#include "gsc/digraph.hpp"
#include "gsc/errors.hpp"

namespace gsc {

/// Nonnegative vertex measure with at least one positive entry.
/// The label records provenance (power(t,gamma,alpha) | stationary | custom).
struct VertexMeasure {
    Eigen::VectorXd values;
    std::string label = "custom";

    VertexMeasure() = default;
    VertexMeasure(Eigen::VectorXd v, std::string provenance);

    static VertexMeasure uniform(int n);
    static VertexMeasure custom(Eigen::VectorXd v) { return VertexMeasure(std::move(v), "custom"); }

    int size() const { return static_cast<int>(values.size()); }
};

/// Iterated-power measure nu(x) = (mu^T P^t delta_x)^alpha, computed by t
/// successive vector-matrix products. mu defaults to uniform 1/N.
/// Raises DegenerateMeasure when alpha < 0 meets a zero pre-power entry;
/// alpha = 0 yields the all-ones measure (0^0 = 1).
VertexMeasure power_measure(const TransitionMatrix& p_mix, int t, double alpha,
                            const std::optional<VertexMeasure>& mu = std::nullopt);

/// Applies the elementwise power step to an already-iterated vector; shared
/// with incremental grid loops that keep their own running iterate.
VertexMeasure power_measure_from_iterate(const Eigen::VectorXd& iterate, int t, double gamma,
                                         double alpha);

/// Outflow measure xi = P^T nu; conserves total mass.
VertexMeasure outflow_measure(const VertexMeasure& nu, const TransitionMatrix& p);

/// Stationary distribution by iterated left-multiplication from the uniform
/// start, with Cesaro averaging of the last two iterates (handles period-2
/// chains). max_iter <= 0 selects the default 10*N.
VertexMeasure stationary_distribution(const TransitionMatrix& p, double tol = 1e-12,
                                      int max_iter = 0);

}  // namespace gsc
