#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "gsc/errors.hpp"

namespace gsc {

/// Weighted directed graph stored as sparse per-vertex adjacency lists.
///
/// Immutable after construction; zero weights are absent entries, stored
/// weights are strictly positive. The `directed` flag records whether the
/// adjacency was exactly symmetric at construction time (informational only).
class Digraph {
public:
    using Edge = std::pair<int, double>;  // (target, weight)

    Digraph() = default;

    /// Builds from a dense nonnegative square matrix; zero entries dropped.
    static Digraph from_adjacency(const Eigen::MatrixXd& weights);

    /// Builds from (i, j, w) triplets; duplicate entries accumulate.
    static Digraph from_triplets(int n, const std::vector<std::tuple<int, int, double>>& triplets);

    int n() const noexcept { return n_; }
    bool directed() const noexcept { return directed_; }
    std::size_t edge_count() const noexcept { return edge_count_; }

    /// Out-edges of v, sorted by target index.
    const std::vector<Edge>& out_edges(int v) const { return out_[static_cast<std::size_t>(v)]; }

    double weight(int i, int j) const;
    bool has_edge(int i, int j) const { return weight(i, j) != 0.0; }
    double out_degree(int i) const { return out_degree_[static_cast<std::size_t>(i)]; }
    double in_degree(int i) const { return in_degree_[static_cast<std::size_t>(i)]; }

    Eigen::MatrixXd dense() const;

    /// Edge-list text format: header `n=<N> directed=<0|1>`, then `i j w` lines.
    void save_edge_list(std::ostream& os) const;
    void save_edge_list(const std::string& path) const;
    static Digraph load_edge_list(std::istream& is);
    static Digraph load_edge_list(const std::string& path);

private:
    static Digraph build(int n, std::vector<std::vector<Edge>> rows);

    int n_ = 0;
    bool directed_ = false;
    std::size_t edge_count_ = 0;
    std::vector<std::vector<Edge>> out_;
    std::vector<double> out_degree_;
    std::vector<double> in_degree_;
};

/// Row-stochastic transition matrix of a random walk.
///
/// Natural walks stay sparse; teleport-mixed walks (gamma < 1) are
/// structurally dense and stored dense.
class TransitionMatrix {
public:
    enum class Density { Sparse, Dense };

    TransitionMatrix() = default;

    int n() const noexcept { return n_; }
    Density density() const noexcept { return density_; }
    bool is_dense() const noexcept { return density_ == Density::Dense; }

    /// Mixing parameter if this matrix came out of teleport_mix.
    std::optional<double> teleport_gamma() const noexcept { return gamma_; }

    double operator()(int i, int j) const;

    /// Applies f(row, col, probability) to every stored nonzero entry.
    template <class F>
    void for_each(F&& f) const {
        if (is_dense()) {
            for (int i = 0; i < n_; ++i)
                for (int j = 0; j < n_; ++j)
                    if (dense_(i, j) != 0.0) f(i, j, dense_(i, j));
        } else {
            for (int i = 0; i < n_; ++i)
                for (const auto& [j, p] : rows_[static_cast<std::size_t>(i)]) f(i, j, p);
        }
    }

    /// P^T v: pushes a vertex measure one step through the walk.
    Eigen::VectorXd transpose_times(const Eigen::VectorXd& v) const;

    Eigen::MatrixXd dense() const;
    Eigen::VectorXd row_sums() const;

private:
    friend TransitionMatrix transition_matrix(const Digraph& g);
    friend TransitionMatrix teleport_mix(const TransitionMatrix& p, double gamma);

    int n_ = 0;
    Density density_ = Density::Sparse;
    std::optional<double> gamma_;
    std::vector<std::vector<std::pair<int, double>>> rows_;
    Eigen::MatrixXd dense_;
};

/// Natural random walk of g: p(x,y) = w(x,y)/d+(x). Sink rows (zero
/// out-degree) become the absorbing self-loop distribution delta_x.
TransitionMatrix transition_matrix(const Digraph& g);

/// Teleporting mix gamma*P + (1-gamma)/N * ones. gamma=1 returns P unchanged
/// (sparse allowed); gamma<1 produces a dense matrix.
TransitionMatrix teleport_mix(const TransitionMatrix& p, double gamma);

/// Symmetrized graph with weights (w_ij + w_ji)/2.
Digraph symmetrize(const Digraph& g);

}  // namespace gsc
