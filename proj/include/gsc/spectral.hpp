#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>

namespace gsc {

/// The k smallest eigenpairs of a symmetric operator, columns in ascending
/// eigenvalue order.
struct SpectralEmbedding {
    Eigen::MatrixXd vectors;     // n x k, orthonormal columns
    Eigen::VectorXd eigenvalues; // ascending
    std::string provenance;
};

/// Full dense symmetric eigendecomposition, truncated to the k smallest
/// pairs.
///
/// Inputs with asymmetry up to 1e-8 (assembly noise) are symmetrized as
/// (M + M^T)/2; larger asymmetry raises NotSymmetric. Output is made
/// deterministic: near-degenerate eigenvalue blocks get a seeded orthonormal
/// basis and each column's first entry of largest magnitude is made positive.
SpectralEmbedding smallest_eigenpairs(const Eigen::MatrixXd& m, int k, std::uint64_t seed = 0);

}  // namespace gsc
