#pragma once

#include <Eigen/Core>
#include <string>
#include <utility>

#include "gsc/digraph.hpp"
#include "gsc/measure.hpp"

namespace gsc {

enum class LaplacianKind { Unnormalized, Normalized };

/// Symmetric generalized Laplacian L(nu) = N + Xi - (NP + P^T N), together
/// with the weight vector nu + xi used by the normalized variant.
struct GeneralizedLaplacian {
    Eigen::MatrixXd matrix;
    Eigen::VectorXd weight;  // nu + xi
    std::string measure_label;
    LaplacianKind kind = LaplacianKind::Unnormalized;
};

/// Unnormalized generalized Laplacian; its quadratic form is the generalized
/// Dirichlet energy.
GeneralizedLaplacian generalized_laplacian(const VertexMeasure& nu, const TransitionMatrix& p);

/// Generalized random walk Laplacian diag(nu+xi)^-1 L(nu); requires strictly
/// positive nu.
Eigen::MatrixXd generalized_rw_laplacian(const VertexMeasure& nu, const TransitionMatrix& p);

/// Classical directed Laplacians (L_RW, L) built from an ergodic measure pi:
/// L_RW = I - (P + Pi^-1 P^T Pi)/2 and L = Pi - (Pi P + P^T Pi)/2.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> classical_directed_laplacians(
    const TransitionMatrix& p, const VertexMeasure& pi);

/// Symmetric congruence diag(nu+xi)^-1/2 L(nu) diag(nu+xi)^-1/2; eigenvalues
/// lie in [0, 2]. Requires strictly positive nu + xi.
Eigen::MatrixXd normalized_generalized_laplacian(const GeneralizedLaplacian& lap);

}  // namespace gsc
