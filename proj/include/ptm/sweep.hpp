#pragma once

#include <vector>

#include "ptm/complex_matrix.hpp"
#include "ptm/models.hpp"
#include "ptm/spectral.hpp"

namespace ptm {

/// One grid point of a (p, theta) evaluation. p may be +infinity.
struct SweepRow {
    double p;
    double theta;
    double eta;
    double var_a;
    double var_b;
    double lhs;
    double rhs;
    double lambda_g;
    bool mus;
    StateLabel state_class;
};

/// One point of a gamma scan. kappa is NaN where the metric cannot be built
/// (at or too close to an exceptional point); callers skip those rows.
struct ScanRow {
    double gamma;
    double kappa;
    PhaseLabel phase;
};

enum class LineAxis { p_axis, theta_axis };

/// A full grid line (constant p or constant theta) of minimum-uncertainty
/// states, annotated with the majority PT class of its rows.
struct MusLine {
    LineAxis axis;
    double value; ///< the fixed p (possibly inf) or theta
    StateLabel state_class;
    std::size_t rows;
};

/// Uniform grid of `count` points over [lo, hi], endpoints included.
std::vector<double> linear_grid(double lo, double hi, std::size_t count);

/// p = tan(alpha) over alpha in [0, pi/2]: covers p = 0 through p = inf,
/// hitting both exactly. Default grids use 201 points.
std::vector<double> tangent_p_grid(std::size_t count);

std::vector<double> default_theta_grid(std::size_t count = 201);

/// Evaluate the uncertainty relation for observables (a, b) on generic
/// states of h over a full (p, theta) grid. Rows come back in grid order
/// (p-major) regardless of worker count; PTM_THREADS caps parallelism.
std::vector<SweepRow> grid_sweep(const ComplexMatrix& a, const ComplexMatrix& b,
                                 const ComplexMatrix& h, InnerProduct inner,
                                 const std::vector<double>& p_grid,
                                 const std::vector<double>& theta_grid,
                                 double mus_tol = 1e-6);

/// Candidate constant-p and constant-theta lines all of whose rows are
/// minimum-uncertainty states. Lines whose every row is the degenerate 0/0
/// saturation (eigenstates of one observable) are not reported. The grid
/// must contain p in {0, 1, inf} and theta in {0, pi/2, pi, 3pi/2, 2pi}.
std::vector<MusLine> extract_mus_lines(const std::vector<SweepRow>& rows, double mus_tol);

/// kappa of the Hamiltonian against its own metric across a gamma grid.
std::vector<ScanRow> kappa_scan(const ModelSpec& spec, const std::vector<double>& gamma_grid,
                                double kappa_threshold = 1e-8);

/// Locate the exceptional point by bisecting the good-observable verdict of
/// the Hamiltonian, cross-checked against the spectrum-reality verdict
/// (the two must agree within 10*tol).
double find_ep(const ModelSpec& spec, double gamma_lo, double gamma_hi, double tol,
               double kappa_threshold = 1e-8);

} // namespace ptm
