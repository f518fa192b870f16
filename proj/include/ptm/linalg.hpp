#pragma once

#include <vector>

#include "ptm/complex_matrix.hpp"

namespace ptm {

/// Eigendecomposition of a Hermitian matrix.
struct HermitianEigenResult {
    std::vector<double> eigenvalues; ///< ascending
    ComplexMatrix vectors;           ///< orthonormal columns, paired with eigenvalues
};

/// Eigendecomposition of a general complex matrix.
///
/// Eigenvalues are sorted by descending real part, ties by descending
/// imaginary part. Column i of `vectors` is the unit right eigenvector of
/// eigenvalues[i], with its largest component rotated to be real positive.
struct GeneralEigenResult {
    CVector eigenvalues;
    ComplexMatrix vectors;
    std::vector<bool> converged;       ///< residual bound met per pair
    std::vector<bool> near_degenerate; ///< pair gap below 1e-10 * ||M||_F
};

/// Cyclic complex Jacobi eigensolver for Hermitian input.
/// Throws NotHermitian if the symmetry check fails, NoConvergence past the
/// sweep cap.
HermitianEigenResult hermitian_eig(const ComplexMatrix& m);

/// Hessenberg reduction followed by shifted QR for the eigenvalues, then
/// inverse iteration per eigenvalue for the right eigenvectors.
/// Throws NoConvergence past the iteration cap and DefectivePencil when
/// inverse iteration cannot produce n independent vectors (the signature of
/// an exceptional point).
GeneralEigenResult general_eig(const ComplexMatrix& m);

/// Eigenvalues only, same sort convention as general_eig. Works on defective
/// matrices, where eigenvectors do not exist.
CVector general_eigenvalues(const ComplexMatrix& m);

/// Principal square root of a Hermitian positive definite matrix via
/// spectral calculus. Throws NotPositiveDefinite if any eigenvalue
/// is at or below 1e-12.
ComplexMatrix hermitian_sqrt(const ComplexMatrix& m);

/// Sum of the moduli of all entries.
double entrywise_abs_sum(const ComplexMatrix& m);

// -- LU with partial pivoting -------------------------------------------------

struct LuFactors {
    ComplexMatrix lu;        ///< packed L (unit diagonal) and U
    std::vector<int> pivots; ///< row swapped with k at step k
    int sign = 1;
};

LuFactors lu_factor(const ComplexMatrix& m);
CVector lu_solve(const LuFactors& f, CVector b);
ComplexMatrix lu_inverse(const ComplexMatrix& m);
cplx lu_determinant(const ComplexMatrix& m);

} // namespace ptm
