#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <numeric>
#include <tuple>
#include <vector>

#include "gsc/digraph.hpp"
#include "gsc/measure.hpp"
#include "gsc/rng.hpp"

namespace gsc_test {

// Brute-force generalized Dirichlet energy over full dense copies. Kept
// independent of the quadratic-form / for_each paths it is used to check.
inline double oracle_dirichlet(const Eigen::VectorXd& nu, const Eigen::MatrixXd& p,
                               const Eigen::VectorXd& f) {
    const int n = static_cast<int>(p.rows());
    double total = 0.0;
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            const double diff = f[x] - f[y];
            total += nu[x] * p(x, y) * diff * diff;
        }
    }
    return total;
}

// Random weighted digraph; sinks allowed.
inline gsc::Digraph random_digraph(gsc::Rng& rng, int n, double edge_prob = 0.4,
                                   bool allow_self_loops = false) {
    std::vector<std::tuple<int, int, double>> triplets;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j && !allow_self_loops) continue;
            if (rng.next_double() < edge_prob) {
                triplets.emplace_back(i, j, 0.1 + 0.9 * rng.next_double());
            }
        }
    }
    return gsc::Digraph::from_triplets(n, triplets);
}

// Strongly connected aperiodic random digraph: a Hamiltonian cycle, one
// self-loop and extra random out-edges.
inline gsc::Digraph random_ergodic_digraph(gsc::Rng& rng, int n, int extra_per_vertex = 4) {
    std::vector<std::tuple<int, int, double>> triplets;
    for (int i = 0; i < n; ++i) triplets.emplace_back(i, (i + 1) % n, 1.0);
    triplets.emplace_back(0, 0, 1.0);
    for (int i = 0; i < n; ++i) {
        for (int e = 0; e < extra_per_vertex; ++e) {
            const int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
            triplets.emplace_back(i, j, 0.5 + rng.next_double());
        }
    }
    return gsc::Digraph::from_triplets(n, triplets);
}

inline gsc::VertexMeasure random_measure(gsc::Rng& rng, int n) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = 0.1 + 1.9 * rng.next_double();
    return gsc::VertexMeasure(std::move(v), "custom");
}

inline Eigen::VectorXd random_vector(gsc::Rng& rng, int n) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = 2.0 * rng.next_double() - 1.0;
    return v;
}

// Connected-component labels by undirected reachability (edge direction
// ignored); independent oracle for component-recovery tests.
inline std::vector<int> component_labels(const gsc::Digraph& g) {
    const int n = g.n();
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        for (const auto& [j, w] : g.out_edges(i)) {
            (void)w;
            adj[static_cast<std::size_t>(i)].push_back(j);
            adj[static_cast<std::size_t>(j)].push_back(i);
        }
    }
    std::vector<int> comp(static_cast<std::size_t>(n), -1);
    int next = 0;
    for (int start = 0; start < n; ++start) {
        if (comp[static_cast<std::size_t>(start)] >= 0) continue;
        std::vector<int> stack{start};
        comp[static_cast<std::size_t>(start)] = next;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int w : adj[static_cast<std::size_t>(v)]) {
                if (comp[static_cast<std::size_t>(w)] < 0) {
                    comp[static_cast<std::size_t>(w)] = next;
                    stack.push_back(w);
                }
            }
        }
        ++next;
    }
    return comp;
}

// Disjoint union of cliques with shuffled vertex ids; returns the graph and
// ground-truth component labels.
inline std::pair<gsc::Digraph, std::vector<int>> random_clique_union(gsc::Rng& rng,
                                                                     int num_cliques) {
    std::vector<int> sizes;
    int n = 0;
    for (int c = 0; c < num_cliques; ++c) {
        const int size = 2 + static_cast<int>(rng.next_below(7));
        sizes.push_back(size);
        n += size;
    }
    std::vector<int> ids(static_cast<std::size_t>(n));
    std::iota(ids.begin(), ids.end(), 0);
    for (int i = n - 1; i > 0; --i) {
        const int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i + 1)));
        std::swap(ids[static_cast<std::size_t>(i)], ids[static_cast<std::size_t>(j)]);
    }
    std::vector<std::tuple<int, int, double>> triplets;
    std::vector<int> truth(static_cast<std::size_t>(n), -1);
    int offset = 0;
    for (int c = 0; c < num_cliques; ++c) {
        for (int a = 0; a < sizes[static_cast<std::size_t>(c)]; ++a) {
            const int va = ids[static_cast<std::size_t>(offset + a)];
            truth[static_cast<std::size_t>(va)] = c;
            for (int b = 0; b < sizes[static_cast<std::size_t>(c)]; ++b) {
                if (a == b) continue;
                const int vb = ids[static_cast<std::size_t>(offset + b)];
                triplets.emplace_back(va, vb, 1.0);
            }
        }
        offset += sizes[static_cast<std::size_t>(c)];
    }
    return {gsc::Digraph::from_triplets(n, triplets), truth};
}

}  // namespace gsc_test
