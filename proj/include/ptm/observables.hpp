#pragma once

#include "ptm/complex_matrix.hpp"
#include "ptm/metric.hpp"

namespace ptm {

/// Result of the good-observable test O^dag G = G O.
struct GoodnessReport {
    ComplexMatrix deviation; ///< K = O^dag G - G O
    double kappa = 0.0;      ///< n^2 sum|K| / (sum|O| sum|G|), scale invariant
    bool verdict = false;    ///< kappa <= threshold
    double threshold = 0.0;
};

/// Evaluate the deviation operator and its kappa identifier. kappa vanishes
/// exactly when O is a good observable for G; for O = H this detects the
/// PT phase transition.
GoodnessReport goodness(const ComplexMatrix& o, const MetricOperator& g,
                        double threshold = 1e-8);

/// The two-parameter family of good observables for the two-level model:
///   symmetric phase: [[i g x, x - i y], [x + i y, -i g x]]
///   broken phase:    [[i x / g, x - i y], [x + i y, -i x / g]]
/// x = 1, y = 0 recovers the Hamiltonian (or H(1/gamma) in the broken
/// phase); x = 0, y = 1 recovers sigma_y.
ComplexMatrix good_observable_2x2(double gamma, PhaseLabel phase, double x, double y);

/// Similarity transform G^{1/2} O G^{-1/2}; Hermitian exactly when O is a
/// good observable, and always isospectral to O.
ComplexMatrix hermitize(const ComplexMatrix& o, const MetricOperator& g);

} // namespace ptm
