#pragma once

#include "ptm/complex_matrix.hpp"
#include "ptm/metric.hpp"

namespace ptm {

/// Both sides of the metric uncertainty relation for one (state, A, B, G)
/// evaluation, plus the minimum-uncertainty diagnostics.
struct UncertaintyReport {
    double var_a = 0.0;       ///< <psi|G A^2|psi> - <psi|G A|psi>^2, real part
    double var_b = 0.0;
    double lhs = 0.0;         ///< var_a * var_b
    double rhs = 0.0;         ///< |<psi|G [A,B]|psi>|^2 / 4
    double eta = 0.0;         ///< lhs / rhs; exactly 1 when both sides vanish
    double lambda_g = 0.0;    ///< sqrt(var_a / var_b)
    double mus_residual = 0.0;
    bool is_mus = false;
};

/// First and second G-moments of an operator on a state.
struct GMoments {
    cplx mean;   ///< <psi|G O|psi>
    cplx second; ///< <psi|G O^2|psi>
};

GMoments g_moments(const ComplexMatrix& o, const MetricOperator& g, const CVector& psi);

/// Variance under the metric inner product; the state must be G-normalized
/// within 1e-9. Returns the real part (the imaginary residue vanishes for
/// good observables).
double g_variance(const ComplexMatrix& o, const MetricOperator& g, const CVector& psi);

/// Evaluate the uncertainty relation var_A var_B >= |<G[A,B]>|^2/4 on a
/// G-normalized state. A vanishing 0/0 ratio reports eta = 1 and the
/// minimum-uncertainty flag falls back to the eigenstate residual alone.
UncertaintyReport uncertainty_sides(const ComplexMatrix& a, const ComplexMatrix& b,
                                    const MetricOperator& g, const CVector& psi,
                                    double mus_tol = 1e-6);

struct MusResult {
    double lambda_g;   ///< sqrt(var_a / var_b) >= 0
    double residual;   ///< min over the sign of lambda_g
    bool is_mus;
    int sign;          ///< sign achieving the minimum residual
};

/// Minimum-uncertainty test: a state saturates the relation exactly when it
/// is an eigenstate of A + i s lambda_G B for one of the signs s. The
/// residual is ||(A + i s lambda_G B) psi - (r + i s lambda_G p) psi|| with
/// r, p the G-expectations of A and B.
MusResult mus_test(const ComplexMatrix& a, const ComplexMatrix& b, const MetricOperator& g,
                   const CVector& psi, double tol);

} // namespace ptm
