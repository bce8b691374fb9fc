#include "gsc/spectral.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdlib>

#include "gsc/errors.hpp"
#include "gsc/rng.hpp"

namespace gsc {

SpectralEmbedding smallest_eigenpairs(const Eigen::MatrixXd& m, int k, std::uint64_t seed) {
    if (m.rows() != m.cols()) throw ShapeMismatch("eigensolver input must be square");
    const int n = static_cast<int>(m.rows());
    if (k < 1 || k > n) {
        throw InvalidParameter("k must lie in [1, n], got k=" + std::to_string(k) +
                               " n=" + std::to_string(n));
    }
    const double asymmetry = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asymmetry > 1e-8) {
        throw NotSymmetric("matrix asymmetry " + std::to_string(asymmetry) + " exceeds 1e-8");
    }
    const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
    if (solver.info() != Eigen::Success) throw Error("symmetric eigendecomposition failed");
    Eigen::VectorXd evals = solver.eigenvalues();  // ascending
    Eigen::MatrixXd evecs = solver.eigenvectors();

    // Re-span (near-)degenerate blocks with a seeded orthonormal basis so the
    // embedding does not depend on solver internals.
    const double scale = std::max(std::abs(evals[0]), std::abs(evals[n - 1]));
    const double gap_tol = 1e-9 * std::max(1.0, scale);
    const Rng rng(seed);
    int block_id = 0;
    for (int start = 0; start < k;) {
        int end = start + 1;
        while (end < n && evals[end] - evals[end - 1] <= gap_tol) ++end;
        const int width = end - start;
        if (width >= 2) {
            Rng block_rng = rng.split(static_cast<std::uint64_t>(block_id));
            Eigen::MatrixXd gauss(width, width);
            for (int i = 0; i < width; ++i)
                for (int j = 0; j < width; ++j) gauss(i, j) = block_rng.next_gaussian();
            const Eigen::HouseholderQR<Eigen::MatrixXd> qr(gauss);
            const Eigen::MatrixXd rotation = qr.householderQ();
            evecs.middleCols(start, width) = evecs.middleCols(start, width) * rotation;
        }
        ++block_id;
        start = end;
    }

    SpectralEmbedding emb;
    emb.vectors = evecs.leftCols(k);
    emb.eigenvalues = evals.head(k);
    // sign convention: first entry of largest magnitude becomes positive
    for (int c = 0; c < k; ++c) {
        int arg = 0;
        double best = -1.0;
        for (int i = 0; i < n; ++i) {
            const double mag = std::abs(emb.vectors(i, c));
            if (mag > best) {
                best = mag;
                arg = i;
            }
        }
        if (emb.vectors(arg, c) < 0.0) emb.vectors.col(c) = -emb.vectors.col(c);
    }
    return emb;
}

}  // namespace gsc
