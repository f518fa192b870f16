#pragma once

#include <string>
#include <vector>

#include "ptm/complex_matrix.hpp"

namespace ptm {

/// Matched right/left eigenpairs of a diagonalizable non-Hermitian matrix.
///
/// Conventions: H |R_i> = h_i |R_i> and H^dag |L_i> = h_i^* |L_i>, with
/// <R_i|L_j> = delta_ij and the balanced normalization ||L_i|| = ||R_i||.
struct BiorthogonalSystem {
    CVector eigenvalues;             ///< general_eig sort order
    std::vector<CVector> right;
    std::vector<CVector> left;
    double conditioning = 0.0;       ///< min singular value of the unit right-vector matrix

    std::size_t size() const { return eigenvalues.size(); }
};

enum class PhaseLabel { symmetric, broken, exceptional };

std::string to_string(PhaseLabel label);

struct PhaseVerdict {
    PhaseLabel label;
    double max_imag; ///< largest |Im h_i|
    double min_gap;  ///< smallest pairwise eigenvalue distance
};

/// Build the biorthonormalized eigensystem. Left vectors come from the
/// inverse of the right-eigenvector matrix, which is biorthogonal by
/// construction, then get rebalanced to equal norms keeping <R_i|L_i> = 1.
/// Throws ExceptionalPoint when the right eigenvectors (nearly) coalesce.
BiorthogonalSystem biorthogonal_system(const ComplexMatrix& h);

/// Classify the spectrum: all-real (symmetric), complex pairs (broken), or
/// coalescing eigenvalues (exceptional).
PhaseVerdict phase_verdict(const ComplexMatrix& h, double tol_imag, double tol_gap);

/// Defaults: tol_imag = 1e-9 * ||H||_F, tol_gap = 1e-10 * ||H||_F.
PhaseVerdict phase_verdict(const ComplexMatrix& h);

} // namespace ptm
