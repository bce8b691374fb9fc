#include "gsc/digraph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace gsc {

namespace {

void check_weight(double w, int i, int j) {
    if (std::isnan(w) || std::isinf(w) || w < 0.0) {
        throw InvalidWeight("invalid edge weight " + std::to_string(w) + " at (" +
                            std::to_string(i) + "," + std::to_string(j) + ")");
    }
}

}  // namespace

Digraph Digraph::build(int n, std::vector<std::vector<Edge>> rows) {
    Digraph g;
    g.n_ = n;
    g.out_ = std::move(rows);
    g.out_degree_.assign(static_cast<std::size_t>(n), 0.0);
    g.in_degree_.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        auto& row = g.out_[static_cast<std::size_t>(i)];
        std::sort(row.begin(), row.end());
        for (const auto& [j, w] : row) {
            g.out_degree_[static_cast<std::size_t>(i)] += w;
            g.in_degree_[static_cast<std::size_t>(j)] += w;
            ++g.edge_count_;
        }
    }
    bool symmetric = true;
    for (int i = 0; i < n && symmetric; ++i) {
        for (const auto& [j, w] : g.out_[static_cast<std::size_t>(i)]) {
            if (g.weight(j, i) != w) {
                symmetric = false;
                break;
            }
        }
    }
    g.directed_ = !symmetric;
    return g;
}

Digraph Digraph::from_adjacency(const Eigen::MatrixXd& weights) {
    if (weights.rows() != weights.cols()) {
        throw ShapeMismatch("adjacency matrix must be square, got " +
                            std::to_string(weights.rows()) + "x" + std::to_string(weights.cols()));
    }
    const int n = static_cast<int>(weights.rows());
    std::vector<std::vector<Edge>> rows(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double w = weights(i, j);
            check_weight(w, i, j);
            if (w != 0.0) rows[static_cast<std::size_t>(i)].emplace_back(j, w);
        }
    }
    return build(n, std::move(rows));
}

Digraph Digraph::from_triplets(int n, const std::vector<std::tuple<int, int, double>>& triplets) {
    if (n < 0) throw InvalidParameter("vertex count must be nonnegative");
    std::vector<std::map<int, double>> acc(static_cast<std::size_t>(n));
    for (const auto& [i, j, w] : triplets) {
        if (i < 0 || i >= n || j < 0 || j >= n) {
            throw InvalidParameter("edge index out of range: (" + std::to_string(i) + "," +
                                   std::to_string(j) + ") with n=" + std::to_string(n));
        }
        check_weight(w, i, j);
        acc[static_cast<std::size_t>(i)][j] += w;
    }
    std::vector<std::vector<Edge>> rows(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        for (const auto& [j, w] : acc[static_cast<std::size_t>(i)]) {
            if (w != 0.0) rows[static_cast<std::size_t>(i)].emplace_back(j, w);
        }
    }
    return build(n, std::move(rows));
}

double Digraph::weight(int i, int j) const {
    const auto& row = out_[static_cast<std::size_t>(i)];
    auto it = std::lower_bound(row.begin(), row.end(), j,
                               [](const Edge& e, int target) { return e.first < target; });
    if (it != row.end() && it->first == j) return it->second;
    return 0.0;
}

Eigen::MatrixXd Digraph::dense() const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (const auto& [j, w] : out_[static_cast<std::size_t>(i)]) m(i, j) = w;
    return m;
}

void Digraph::save_edge_list(std::ostream& os) const {
    os << "n=" << n_ << " directed=" << (directed_ ? 1 : 0) << "\n";
    char buf[64];
    for (int i = 0; i < n_; ++i) {
        for (const auto& [j, w] : out_[static_cast<std::size_t>(i)]) {
            std::snprintf(buf, sizeof(buf), "%.17g", w);
            os << i << " " << j << " " << buf << "\n";
        }
    }
}

void Digraph::save_edge_list(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw ParseError("cannot open " + path + " for writing");
    save_edge_list(os);
}

Digraph Digraph::load_edge_list(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw ParseError("empty edge-list stream");
    int n = -1;
    int directed_flag = -1;
    if (std::sscanf(header.c_str(), "n=%d directed=%d", &n, &directed_flag) != 2 || n < 0 ||
        (directed_flag != 0 && directed_flag != 1)) {
        throw ParseError("bad edge-list header: '" + header + "'");
    }
    std::vector<std::tuple<int, int, double>> triplets;
    std::string line;
    int lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        int i = 0;
        int j = 0;
        double w = 0.0;
        std::istringstream ls(line);
        if (!(ls >> i >> j >> w)) {
            throw ParseError("bad edge-list line " + std::to_string(lineno) + ": '" + line + "'");
        }
        triplets.emplace_back(i, j, w);
    }
    return from_triplets(n, triplets);
}

Digraph Digraph::load_edge_list(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ParseError("cannot open " + path);
    return load_edge_list(is);
}

double TransitionMatrix::operator()(int i, int j) const {
    if (is_dense()) return dense_(i, j);
    const auto& row = rows_[static_cast<std::size_t>(i)];
    auto it = std::lower_bound(row.begin(), row.end(), j,
                               [](const std::pair<int, double>& e, int t) { return e.first < t; });
    if (it != row.end() && it->first == j) return it->second;
    return 0.0;
}

Eigen::VectorXd TransitionMatrix::transpose_times(const Eigen::VectorXd& v) const {
    if (v.size() != n_) throw ShapeMismatch("vector length does not match transition matrix");
    if (is_dense()) return dense_.transpose() * v;
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n_);
    for (int i = 0; i < n_; ++i)
        for (const auto& [j, p] : rows_[static_cast<std::size_t>(i)]) out[j] += p * v[i];
    return out;
}

Eigen::MatrixXd TransitionMatrix::dense() const {
    if (is_dense()) return dense_;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (const auto& [j, p] : rows_[static_cast<std::size_t>(i)]) m(i, j) = p;
    return m;
}

Eigen::VectorXd TransitionMatrix::row_sums() const {
    if (is_dense()) return dense_.rowwise().sum();
    Eigen::VectorXd sums = Eigen::VectorXd::Zero(n_);
    for (int i = 0; i < n_; ++i)
        for (const auto& [j, p] : rows_[static_cast<std::size_t>(i)]) {
            (void)j;
            sums[i] += p;
        }
    return sums;
}

TransitionMatrix transition_matrix(const Digraph& g) {
    TransitionMatrix p;
    p.n_ = g.n();
    p.density_ = TransitionMatrix::Density::Sparse;
    p.rows_.resize(static_cast<std::size_t>(g.n()));
    for (int i = 0; i < g.n(); ++i) {
        const double d = g.out_degree(i);
        auto& row = p.rows_[static_cast<std::size_t>(i)];
        if (d == 0.0) {
            // sink: absorbing self-loop keeps the matrix row-stochastic
            row.emplace_back(i, 1.0);
            continue;
        }
        row.reserve(g.out_edges(i).size());
        for (const auto& [j, w] : g.out_edges(i)) row.emplace_back(j, w / d);
    }
    return p;
}

TransitionMatrix teleport_mix(const TransitionMatrix& p, double gamma) {
    if (std::isnan(gamma) || gamma < 0.0 || gamma > 1.0) {
        throw InvalidParameter("teleport gamma must lie in [0,1], got " + std::to_string(gamma));
    }
    if (gamma == 1.0) {
        TransitionMatrix out = p;
        out.gamma_ = 1.0;
        return out;
    }
    TransitionMatrix out;
    out.n_ = p.n();
    out.density_ = TransitionMatrix::Density::Dense;
    out.gamma_ = gamma;
    const int n = p.n();
    if (n == 0) return out;
    out.dense_ = Eigen::MatrixXd::Constant(n, n, (1.0 - gamma) / n);
    p.for_each([&](int i, int j, double pij) { out.dense_(i, j) += gamma * pij; });
    return out;
}

Digraph symmetrize(const Digraph& g) {
    const int n = g.n();
    std::vector<std::map<int, double>> acc(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        for (const auto& [j, w] : g.out_edges(i)) {
            // the same averaged value is written to both directions, so the
            // output is symmetric to the last bit
            const double avg = (w + g.weight(j, i)) / 2.0;
            acc[static_cast<std::size_t>(i)][j] = avg;
            acc[static_cast<std::size_t>(j)][i] = avg;
        }
    }
    std::vector<std::tuple<int, int, double>> triplets;
    triplets.reserve(2 * g.edge_count());
    for (int i = 0; i < n; ++i)
        for (const auto& [j, w] : acc[static_cast<std::size_t>(i)]) triplets.emplace_back(i, j, w);
    return Digraph::from_triplets(n, triplets);
}

}  // namespace gsc
