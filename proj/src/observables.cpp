#include "ptm/observables.hpp"

#include <cmath>

#include "ptm/errors.hpp"
#include "ptm/linalg.hpp"

namespace ptm {

namespace {
const cplx kI(0.0, 1.0);
}

GoodnessReport goodness(const ComplexMatrix& o, const MetricOperator& g, double threshold) {
    if (o.size() != g.size())
        throw DimensionMismatch("observable and metric dimensions differ");

    const double sum_o = entrywise_abs_sum(o);
    const double sum_g = entrywise_abs_sum(g.matrix);
    if (sum_o == 0.0 || sum_g == 0.0)
        throw ZeroOperator("kappa is undefined for a zero operator");

    GoodnessReport rep;
    rep.deviation = o.adjoint() * g.matrix - g.matrix * o;
    const double n2 = static_cast<double>(o.size()) * static_cast<double>(o.size());
    rep.kappa = n2 * entrywise_abs_sum(rep.deviation) / (sum_o * sum_g);
    rep.threshold = threshold;
    rep.verdict = rep.kappa <= threshold;
    return rep;
}

ComplexMatrix good_observable_2x2(double gamma, PhaseLabel phase, double x, double y) {
    if (phase == PhaseLabel::symmetric) {
        if (!(gamma >= 0.0 && gamma < 1.0))
            throw OutOfDomain("symmetric-phase family requires 0 <= gamma < 1");
        return ComplexMatrix{{kI * gamma * x, cplx(x, -y)}, {cplx(x, y), -kI * gamma * x}};
    }
    if (phase == PhaseLabel::broken) {
        if (!(gamma > 1.0))
            throw OutOfDomain("broken-phase family requires gamma > 1");
        return ComplexMatrix{{kI * x / gamma, cplx(x, -y)}, {cplx(x, y), -kI * x / gamma}};
    }
    throw OutOfDomain("no good-observable family at the exceptional point");
}

ComplexMatrix hermitize(const ComplexMatrix& o, const MetricOperator& g) {
    if (o.size() != g.size())
        throw DimensionMismatch("observable and metric dimensions differ");

    const HermitianEigenResult eig = hermitian_eig(g.matrix);
    if (eig.eigenvalues.front() <= 1e-12)
        throw NotPositiveDefinite("metric has an eigenvalue at or below 1e-12");

    const std::size_t n = g.size();
    ComplexMatrix root(n), inv_root(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double r = std::sqrt(eig.eigenvalues[k]);
        const CVector v = eig.vectors.column(k);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const cplx proj = v[i] * std::conj(v[j]);
                root(i, j) += r * proj;
                inv_root(i, j) += proj / r;
            }
    }
    return root * o * inv_root;
}

} // namespace ptm
