#include "gsc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "gsc/errors.hpp"

namespace gsc {

namespace {

std::vector<int> factorize(const std::vector<int>& labels, int& k_out) {
    std::unordered_map<int, int> index;
    std::vector<int> compact(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto [it, inserted] = index.emplace(labels[i], static_cast<int>(index.size()));
        (void)inserted;
        compact[i] = it->second;
    }
    k_out = static_cast<int>(index.size());
    return compact;
}

// order-independent sum: identical multisets of terms give identical doubles
double sorted_sum(std::vector<double>& terms) {
    std::sort(terms.begin(), terms.end());
    double total = 0.0;
    for (double t : terms) total += t;
    return total;
}

double entropy(const std::vector<long long>& marginals, double n) {
    std::vector<double> terms;
    terms.reserve(marginals.size());
    for (long long m : marginals) {
        if (m > 0) {
            const double p = static_cast<double>(m) / n;
            terms.push_back(-p * std::log(p));
        }
    }
    return sorted_sum(terms);
}

}  // namespace

ContingencyTable ContingencyTable::from_labels(const std::vector<int>& a,
                                               const std::vector<int>& b) {
    if (a.size() != b.size()) throw ShapeMismatch("labelings differ in length");
    int r = 0;
    int c = 0;
    const std::vector<int> ca = factorize(a, r);
    const std::vector<int> cb = factorize(b, c);
    ContingencyTable t;
    t.counts.assign(static_cast<std::size_t>(r), std::vector<long long>(static_cast<std::size_t>(c), 0));
    t.row_sums.assign(static_cast<std::size_t>(r), 0);
    t.col_sums.assign(static_cast<std::size_t>(c), 0);
    t.total = static_cast<long long>(a.size());
    for (std::size_t i = 0; i < ca.size(); ++i) {
        ++t.counts[static_cast<std::size_t>(ca[i])][static_cast<std::size_t>(cb[i])];
        ++t.row_sums[static_cast<std::size_t>(ca[i])];
        ++t.col_sums[static_cast<std::size_t>(cb[i])];
    }
    return t;
}

double nmi(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) throw ShapeMismatch("labelings differ in length");
    if (a.empty()) throw InvalidParameter("nmi requires at least one item");
    const ContingencyTable t = ContingencyTable::from_labels(a, b);
    const double n = static_cast<double>(t.total);
    const double ha = entropy(t.row_sums, n);
    const double hb = entropy(t.col_sums, n);
    if (ha == 0.0 && hb == 0.0) return 1.0;  // both single-cluster
    if (ha == 0.0 || hb == 0.0) return 0.0;
    // identical up to relabeling (one nonzero cell per row and column): the
    // score is exactly 1, which term-by-term float sums would only approximate
    bool bijective = t.counts.size() == t.counts[0].size();
    if (bijective) {
        std::vector<int> col_hits(t.counts[0].size(), 0);
        for (const auto& row : t.counts) {
            int nonzero = 0;
            for (std::size_t j = 0; j < row.size(); ++j) {
                if (row[j] != 0) {
                    ++nonzero;
                    ++col_hits[j];
                }
            }
            if (nonzero != 1) {
                bijective = false;
                break;
            }
        }
        if (bijective) {
            for (int hits : col_hits) {
                if (hits != 1) {
                    bijective = false;
                    break;
                }
            }
        }
    }
    if (bijective) return 1.0;
    std::vector<double> terms;
    for (std::size_t i = 0; i < t.counts.size(); ++i) {
        for (std::size_t j = 0; j < t.counts[i].size(); ++j) {
            const long long nij = t.counts[i][j];
            if (nij == 0) continue;
            const double num = n * static_cast<double>(nij);
            const double den =
                static_cast<double>(t.row_sums[i]) * static_cast<double>(t.col_sums[j]);
            terms.push_back(static_cast<double>(nij) / n * std::log(num / den));
        }
    }
    const double mi = sorted_sum(terms);
    const double value = mi / std::sqrt(ha * hb);
    return std::clamp(value, 0.0, 1.0);
}

double ari(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) throw ShapeMismatch("labelings differ in length");
    if (a.size() < 2) throw InvalidParameter("ari requires at least two items");
    const ContingencyTable t = ContingencyTable::from_labels(a, b);
    auto comb2 = [](long long m) { return m * (m - 1) / 2; };
    long long index = 0;
    for (const auto& row : t.counts)
        for (long long nij : row) index += comb2(nij);
    long long sum_a = 0;
    for (long long m : t.row_sums) sum_a += comb2(m);
    long long sum_b = 0;
    for (long long m : t.col_sums) sum_b += comb2(m);
    const long long pairs = comb2(t.total);
    // exact integer form of (index - expected) / (max - expected)
    const long long numerator = 2 * (index * pairs - sum_a * sum_b);
    const long long denominator = pairs * (sum_a + sum_b) - 2 * sum_a * sum_b;
    if (denominator == 0) return 1.0;  // both trivial partitions, identical by construction
    return static_cast<double>(numerator) / static_cast<double>(denominator);
}

double calinski_harabasz(const Eigen::MatrixXd& features, const std::vector<int>& labels, int k,
                         bool* ssw_zero) {
    const int n = static_cast<int>(features.rows());
    if (static_cast<int>(labels.size()) != n) {
        throw ShapeMismatch("label count does not match feature rows");
    }
    if (k < 2 || k > n - 1) {
        throw InvalidParameter("calinski-harabasz requires 2 <= k <= n-1");
    }
    std::vector<long long> counts(static_cast<std::size_t>(k), 0);
    for (int label : labels) {
        if (label < 0 || label >= k) {
            throw InvalidPartition("label " + std::to_string(label) + " outside [0,k)");
        }
        ++counts[static_cast<std::size_t>(label)];
    }
    for (long long cnt : counts) {
        if (cnt == 0) throw InvalidPartition("calinski-harabasz requires non-empty clusters");
    }
    const int d = static_cast<int>(features.cols());
    Eigen::MatrixXd centroids = Eigen::MatrixXd::Zero(k, d);
    for (int i = 0; i < n; ++i) centroids.row(labels[static_cast<std::size_t>(i)]) += features.row(i);
    for (int c = 0; c < k; ++c) centroids.row(c) /= static_cast<double>(counts[static_cast<std::size_t>(c)]);
    const Eigen::RowVectorXd mean = features.colwise().mean();
    double ssb = 0.0;
    for (int c = 0; c < k; ++c) {
        ssb += static_cast<double>(counts[static_cast<std::size_t>(c)]) *
               (centroids.row(c) - mean).squaredNorm();
    }
    double ssw = 0.0;
    for (int i = 0; i < n; ++i) {
        ssw += (features.row(i) - centroids.row(labels[static_cast<std::size_t>(i)])).squaredNorm();
    }
    if (ssw_zero) *ssw_zero = false;
    if (ssw == 0.0) {
        if (ssw_zero) *ssw_zero = true;
        return 1e15;
    }
    return (ssb / (k - 1)) / (ssw / (n - k));
}

}  // namespace gsc
