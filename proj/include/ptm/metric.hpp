#pragma once

#include <optional>
#include <vector>

#include "ptm/complex_matrix.hpp"
#include "ptm/spectral.hpp"

namespace ptm {

/// Hermitian positive definite metric operator with conditioning diagnostics.
/// Defines the working inner product <phi|G|psi>.
struct MetricOperator {
    ComplexMatrix matrix;
    double min_eigenvalue = 0.0;
    double condition_number = 0.0;
    std::vector<double> weights;

    std::size_t size() const { return matrix.size(); }
};

/// G = sum_i w_i |L_i><L_i| from the left eigenvectors, weights default to 1.
/// Positive definiteness is verified at construction; IllConditioned is
/// thrown when the condition number exceeds 1e12 (near an exceptional point).
MetricOperator build_metric(const BiorthogonalSystem& sys,
                            const std::vector<double>& weights = {});

/// Closed-form two-level metric, unit determinant:
///   symmetric (0 <= gamma < 1):  [[1, -i g], [i g, 1]] / sqrt(1-g^2)
///   broken    (gamma > 1):       [[g, -i], [i, g]] / sqrt(g^2-1)
MetricOperator closed_form_metric_2x2(double gamma, PhaseLabel phase);

/// Rescale so that det G = 1, preserving direction.
MetricOperator det_normalize(const MetricOperator& g);

/// The Dirac inner product as a trivial metric.
MetricOperator identity_metric(std::size_t n);

/// <phi|G|psi>.
cplx g_inner(const MetricOperator& g, const CVector& phi, const CVector& psi);

/// sqrt(<psi|G|psi>).
double g_norm(const MetricOperator& g, const CVector& psi);

/// Rescale to unit G-norm. The result is parallel to the input.
CVector g_normalize(const MetricOperator& g, const CVector& psi);

} // namespace ptm
