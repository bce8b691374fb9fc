#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gsc/digraph.hpp"

namespace gsc {

/// Point cloud with optional ground-truth labels.
struct PointCloud {
    Eigen::MatrixXd points;  // n x d
    std::optional<std::vector<int>> labels;

    int n() const { return static_cast<int>(points.rows()); }
    int dim() const { return static_cast<int>(points.cols()); }
};

/// Default neighbor count ceil(log N), natural logarithm.
int default_knn_count(int n);

/// Unweighted directed K-NN graph: w_ij = 1 iff |x_i - x_j|^2 <= dist_K(x_i)^2
/// where dist_K is the distance to the K-th nearest other point. The
/// indicator includes the self-loop and all ties at the K-th distance;
/// comparisons stay on squared norms.
Digraph knn_digraph(const PointCloud& pc, std::optional<int> k_neighbors = std::nullopt);

/// Two 2-D Gaussian blobs of unit variance: n1 points around (-2,-2) labeled
/// 0, then n2 points around (2,2) labeled 1. Fully determined by the seed.
PointCloud toy_unbalanced(int n1, int n2, std::uint64_t seed);

/// Loads a rectangular numeric CSV; a non-numeric first row (outside the
/// label column) is treated as a header and skipped. Labels are factorized
/// to 0..k-1 preserving first-appearance order.
PointCloud load_csv(const std::string& path, std::optional<int> label_column = std::nullopt);

/// Per-column z-score; columns with (numerically) zero variance are dropped.
PointCloud standardize(const PointCloud& pc);

/// CSV export, header `x,y,label` for 2-D clouds.
void write_points_csv(const PointCloud& pc, std::ostream& os);

}  // namespace gsc
