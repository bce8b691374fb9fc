#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <optional>
#include <vector>

#include "gsc/digraph.hpp"
#include "gsc/measure.hpp"

namespace gsc {

/// Real-valued graph function (one value per vertex).
using GraphFunction = Eigen::VectorXd;

/// Set of vertex indices, kept sorted and duplicate-free.
struct VertexSet {
    std::vector<int> members;

    VertexSet() = default;
    explicit VertexSet(std::vector<int> indices);

    bool contains(int v) const;
    bool empty() const { return members.empty(); }
    std::size_t size() const { return members.size(); }

    /// Membership mask; validates indices against [0, n).
    std::vector<char> mask(int n) const;
    VertexSet complement(int n) const;
    GraphFunction indicator(int n) const;
};

/// Parameters of the unbalanced two-cluster model: limit fraction b of the
/// small cluster, frontier constant c, frontier degree ratio rho.
struct ToyModelParams {
    double b;
    double c;
    double rho;

    ToyModelParams(double b, double c, double rho);
};

/// Generalized Dirichlet energy sum nu(x) p(x,y) |f(x)-f(y)|^2.
double dirichlet_energy(const VertexMeasure& nu, const TransitionMatrix& p,
                        const GraphFunction& f);

/// Rayleigh quotient: dirichlet_energy / ||f||^2 weighted by nu + xi.
double normalized_dirichlet(const VertexMeasure& nu, const TransitionMatrix& p,
                            const GraphFunction& f);

/// Cut measure q(S,U) = sum over x in S, y in U of nu(x) p(x,y).
/// S and U must be disjoint.
double cut_measure(const VertexMeasure& nu, const TransitionMatrix& p, const VertexSet& s,
                   const VertexSet& u);

/// Sum of characteristic-function energies over a full partition of the
/// vertices.
double partition_energy(const VertexMeasure& nu, const TransitionMatrix& p,
                        const std::vector<VertexSet>& parts);

/// Internal frontier: vertices of v with at least one edge into the
/// complement.
VertexSet internal_frontier(const Digraph& g, const VertexSet& v);

/// Threshold exponent log(b/c) / log(rho) of the unbalanced model.
double theoretical_alpha(const ToyModelParams& params);

struct CrossoverRow {
    double alpha;
    double energy_a;
    double energy_b;
};

struct CrossoverSweep {
    std::vector<CrossoverRow> rows;
    /// Smallest grid alpha with energy_a < energy_b, if any.
    std::optional<double> alpha_crossover;

    void write_csv(std::ostream& os) const;
};

/// Sweeps the regularizing measure nu = pi^alpha (pi degree-proportional;
/// exact for symmetric graphs) and reports the normalized energies of both
/// characteristic functions per alpha, plus the experimental crossover.
CrossoverSweep energy_crossover_sweep(const Digraph& g, const VertexSet& set_a,
                                      const VertexSet& set_b, const std::vector<double>& alphas);

}  // namespace gsc
