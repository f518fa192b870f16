#include "ptm/spectral.hpp"

#include <cmath>

#include "ptm/errors.hpp"
#include "ptm/linalg.hpp"

namespace ptm {

namespace {

constexpr double kConditioningFloor = 1e-8;

double min_singular_value(const ComplexMatrix& v) {
    const HermitianEigenResult gram = hermitian_eig(v.adjoint() * v);
    return std::sqrt(std::max(0.0, gram.eigenvalues.front()));
}

} // namespace

std::string to_string(PhaseLabel label) {
    switch (label) {
        case PhaseLabel::symmetric: return "symmetric";
        case PhaseLabel::broken: return "broken";
        case PhaseLabel::exceptional: return "exceptional";
    }
    return "unknown";
}

BiorthogonalSystem biorthogonal_system(const ComplexMatrix& h) {
    GeneralEigenResult eig;
    try {
        eig = general_eig(h);
    } catch (const DefectivePencil&) {
        throw ExceptionalPoint("eigenvectors coalesce; no biorthogonal system exists");
    }

    const std::size_t n = h.size();
    BiorthogonalSystem sys;
    sys.eigenvalues = eig.eigenvalues;
    sys.conditioning = min_singular_value(eig.vectors);
    if (sys.conditioning < kConditioningFloor)
        throw ExceptionalPoint("right-eigenvector matrix is numerically singular");

    const ComplexMatrix vinv = lu_inverse(eig.vectors);
    sys.right.resize(n);
    sys.left.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        CVector r = eig.vectors.column(i);
        CVector l(n);
        for (std::size_t j = 0; j < n; ++j) l[j] = std::conj(vinv(i, j));
        // Rebalance to ||L_i|| = ||R_i|| preserving <R_i|L_i> = 1.
        const double s = std::sqrt(vnorm(l));
        vscale(r, s);
        vscale(l, 1.0 / s);
        sys.right[i] = std::move(r);
        sys.left[i] = std::move(l);
    }
    return sys;
}

PhaseVerdict phase_verdict(const ComplexMatrix& h, double tol_imag, double tol_gap) {
    const CVector vals = general_eigenvalues(h);
    PhaseVerdict v{PhaseLabel::symmetric, 0.0, HUGE_VAL};
    for (const cplx& x : vals) v.max_imag = std::max(v.max_imag, std::abs(x.imag()));
    for (std::size_t i = 0; i < vals.size(); ++i)
        for (std::size_t j = i + 1; j < vals.size(); ++j)
            v.min_gap = std::min(v.min_gap, std::abs(vals[i] - vals[j]));

    if (v.min_gap <= tol_gap)
        v.label = PhaseLabel::exceptional;
    else if (v.max_imag <= tol_imag)
        v.label = PhaseLabel::symmetric;
    else
        v.label = PhaseLabel::broken;
    return v;
}

PhaseVerdict phase_verdict(const ComplexMatrix& h) {
    const double scale = h.frobenius_norm();
    return phase_verdict(h, 1e-9 * scale, 1e-10 * scale);
}

} // namespace ptm
