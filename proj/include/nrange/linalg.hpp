#pragma once

#include <vector>

#include "nrange/matrix.hpp"

namespace nrange {

/// Eigen-structure of a Hermitian matrix: ascending real eigenvalues and the
/// matching orthonormal eigenvectors stored as columns.
struct HermEigen {
    std::vector<double> values;
    CMatrix vectors;
};

/// Orthonormal basis (columns) of a subspace of C^n.
struct Subspace {
    CMatrix basis;

    std::size_t ambient_dim() const noexcept { return basis.rows(); }
    std::size_t dim() const noexcept { return basis.cols(); }
};

struct QrFactors {
    CMatrix q;
    CMatrix r;
};

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kJacobiTolerance = 1e-14;

/// Throws InvalidMatrix unless `a` is square, non-empty and finite.
void require_valid(const CMatrix& a);

/// Largest singular value, computed as sqrt(lambda_max(A^*A)).
double operator_norm(const CMatrix& a);

/// Cyclic complex Jacobi. The input is symmetrized as (H + H^*)/2 first;
/// anything further than 1e-12 ||H|| from Hermitian is rejected.
HermEigen herm_eigen(const CMatrix& h);

/// Same decomposition without accumulating eigenvectors.
std::vector<double> herm_eigenvalues(const CMatrix& h);

/// Eigenvalues with multiplicity via Hessenberg reduction and shifted complex QR.
std::vector<cplx> eigenvalues(const CMatrix& a);

/// Upper Hessenberg form Q^* A Q (eigenvalue-preserving).
CMatrix hessenberg(const CMatrix& a);

/// Clustering threshold max(1e-10, 1e-8 ||A||^2) used on the spectrum of A^*A.
double default_cluster_tolerance(double norm) noexcept;

/// Span of the eigenvectors of A^*A whose eigenvalues lie within tau_cluster
/// of the largest one.
Subspace top_singular_subspace(const CMatrix& a, double tau_cluster);

/// V^* A V for an isometry V.
CMatrix compress(const CMatrix& a, const Subspace& v);

/// Householder QR of a square matrix: A = Q R with Q unitary.
QrFactors qr_decompose(const CMatrix& a);

}  // namespace nrange
