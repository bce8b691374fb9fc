#pragma once

#include <Eigen/Core>
#include <vector>

namespace gsc {

/// Joint label-count table between two labelings of the same items.
/// Distinct label values are indexed by first appearance.
struct ContingencyTable {
    std::vector<std::vector<long long>> counts;  // r x c
    std::vector<long long> row_sums;
    std::vector<long long> col_sums;
    long long total = 0;

    static ContingencyTable from_labels(const std::vector<int>& a, const std::vector<int>& b);
};

/// Normalized mutual information I(a;b)/sqrt(H(a)H(b)), natural logs.
/// Returns 1 when both partitions are single-cluster, 0 when exactly one
/// entropy is zero. Exactly invariant under relabeling and argument swap.
double nmi(const std::vector<int>& a, const std::vector<int>& b);

/// Adjusted Rand index from exact integer pair counts. 1 iff the labelings
/// are identical up to relabeling.
double ari(const std::vector<int>& a, const std::vector<int>& b);

/// Calinski-Harabasz index (SSB/(k-1)) / (SSW/(n-k)). A zero within-cluster
/// sum returns the 1e15 sentinel and sets *ssw_zero when provided.
double calinski_harabasz(const Eigen::MatrixXd& features, const std::vector<int>& labels, int k,
                         bool* ssw_zero = nullptr);

}  // namespace gsc
