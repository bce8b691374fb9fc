#include "gsc/energy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace gsc {

VertexSet::VertexSet(std::vector<int> indices) : members(std::move(indices)) {
    for (int v : members) {
        if (v < 0) throw InvalidParameter("vertex index must be nonnegative");
    }
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
}

bool VertexSet::contains(int v) const {
    return std::binary_search(members.begin(), members.end(), v);
}

std::vector<char> VertexSet::mask(int n) const {
    std::vector<char> m(static_cast<std::size_t>(n), 0);
    for (int v : members) {
        if (v >= n) throw InvalidParameter("vertex index " + std::to_string(v) +
                                           " out of range for n=" + std::to_string(n));
        m[static_cast<std::size_t>(v)] = 1;
    }
    return m;
}

VertexSet VertexSet::complement(int n) const {
    const auto m = mask(n);
    std::vector<int> rest;
    rest.reserve(static_cast<std::size_t>(n) - members.size());
    for (int v = 0; v < n; ++v)
        if (!m[static_cast<std::size_t>(v)]) rest.push_back(v);
    VertexSet out;
    out.members = std::move(rest);
    return out;
}

GraphFunction VertexSet::indicator(int n) const {
    const auto m = mask(n);
    GraphFunction f = GraphFunction::Zero(n);
    for (int v = 0; v < n; ++v)
        if (m[static_cast<std::size_t>(v)]) f[v] = 1.0;
    return f;
}

ToyModelParams::ToyModelParams(double b_, double c_, double rho_) : b(b_), c(c_), rho(rho_) {
    if (!(b > 0.0 && b < 1.0)) throw InvalidParameter("toy model requires 0 < b < 1");
    if (!(c > 0.0)) throw InvalidParameter("toy model requires c > 0");
    if (!(rho > 0.0 && rho < 1.0)) throw InvalidParameter("toy model requires 0 < rho < 1");
}

namespace {

void check_dims(const VertexMeasure& nu, const TransitionMatrix& p, Eigen::Index f_len) {
    if (nu.size() != p.n() || f_len != p.n()) {
        throw ShapeMismatch("measure/function length does not match transition matrix");
    }
}

}  // namespace

double dirichlet_energy(const VertexMeasure& nu, const TransitionMatrix& p,
                        const GraphFunction& f) {
    check_dims(nu, p, f.size());
    double total = 0.0;
    p.for_each([&](int x, int y, double pxy) {
        const double d = f[x] - f[y];
        total += nu.values[x] * pxy * d * d;
    });
    return total;
}

double normalized_dirichlet(const VertexMeasure& nu, const TransitionMatrix& p,
                            const GraphFunction& f) {
    check_dims(nu, p, f.size());
    const VertexMeasure xi = outflow_measure(nu, p);
    double denom = 0.0;
    for (int x = 0; x < p.n(); ++x) denom += (nu.values[x] + xi.values[x]) * f[x] * f[x];
    if (denom == 0.0) throw DegenerateFunction("normalized Dirichlet energy of a null function");
    return dirichlet_energy(nu, p, f) / denom;
}

double cut_measure(const VertexMeasure& nu, const TransitionMatrix& p, const VertexSet& s,
                   const VertexSet& u) {
    check_dims(nu, p, p.n());
    const auto ms = s.mask(p.n());
    const auto mu_mask = u.mask(p.n());
    for (int v : s.members) {
        if (mu_mask[static_cast<std::size_t>(v)]) {
            throw InvalidSets("cut measure requires disjoint vertex sets");
        }
    }
    double total = 0.0;
    p.for_each([&](int x, int y, double pxy) {
        if (ms[static_cast<std::size_t>(x)] && mu_mask[static_cast<std::size_t>(y)]) {
            total += nu.values[x] * pxy;
        }
    });
    return total;
}

double partition_energy(const VertexMeasure& nu, const TransitionMatrix& p,
                        const std::vector<VertexSet>& parts) {
    const int n = p.n();
    std::vector<int> cover(static_cast<std::size_t>(n), 0);
    for (const auto& part : parts) {
        for (int v : part.members) {
            if (v >= n) throw InvalidPartition("partition contains an out-of-range vertex");
            ++cover[static_cast<std::size_t>(v)];
        }
    }
    for (int v = 0; v < n; ++v) {
        if (cover[static_cast<std::size_t>(v)] != 1) {
            throw InvalidPartition("vertex " + std::to_string(v) +
                                   " is not covered exactly once");
        }
    }
    double total = 0.0;
    for (const auto& part : parts) total += dirichlet_energy(nu, p, part.indicator(n));
    return total;
}

VertexSet internal_frontier(const Digraph& g, const VertexSet& v) {
    const auto m = v.mask(g.n());
    std::vector<int> frontier;
    for (int x : v.members) {
        for (const auto& [y, w] : g.out_edges(x)) {
            (void)w;
            if (!m[static_cast<std::size_t>(y)]) {
                frontier.push_back(x);
                break;
            }
        }
    }
    VertexSet out;
    out.members = std::move(frontier);
    return out;
}

double theoretical_alpha(const ToyModelParams& params) {
    return std::log(params.b / params.c) / std::log(params.rho);
}

void CrossoverSweep::write_csv(std::ostream& os) const {
    os << "alpha,energy_a,energy_b\n";
    char buf[128];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g\n", row.alpha, row.energy_a,
                      row.energy_b);
        os << buf;
    }
}

CrossoverSweep energy_crossover_sweep(const Digraph& g, const VertexSet& set_a,
                                      const VertexSet& set_b, const std::vector<double>& alphas) {
    if (g.directed()) {
        throw InvalidParameter("energy crossover sweep requires a symmetric graph");
    }
    if (alphas.empty()) throw InvalidParameter("alpha grid must not be empty");
    const int n = g.n();
    const TransitionMatrix p = transition_matrix(g);
    // stationary measure of an undirected walk is degree-proportional
    Eigen::VectorXd pi(n);
    for (int i = 0; i < n; ++i) pi[i] = g.out_degree(i);
    const double vol = pi.sum();
    if (vol > 0.0) pi /= vol;
    else pi.setConstant(1.0 / n);
    const GraphFunction chi_a = set_a.indicator(n);
    const GraphFunction chi_b = set_b.indicator(n);
    CrossoverSweep out;
    out.rows.reserve(alphas.size());
    for (double alpha : alphas) {
        const VertexMeasure nu(pi.array().pow(alpha).matrix(), "pi^alpha");
        const double ea = normalized_dirichlet(nu, p, chi_a);
        const double eb = normalized_dirichlet(nu, p, chi_b);
        out.rows.push_back({alpha, ea, eb});
        if (!out.alpha_crossover && ea < eb) out.alpha_crossover = alpha;
    }
    return out;
}

}  // namespace gsc
