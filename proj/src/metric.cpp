#include "ptm/metric.hpp"

#include <cmath>

#include "ptm/errors.hpp"
#include "ptm/linalg.hpp"

namespace ptm {

namespace {

constexpr double kConditionCap = 1e12;
const cplx kI(0.0, 1.0);

void attach_diagnostics(MetricOperator& g) {
    const HermitianEigenResult eig = hermitian_eig(g.matrix);
    g.min_eigenvalue = eig.eigenvalues.front();
    const double max_eigenvalue = eig.eigenvalues.back();
    if (g.min_eigenvalue <= 0.0)
        throw IllConditioned("metric lost positive definiteness");
    g.condition_number = max_eigenvalue / g.min_eigenvalue;
    if (g.condition_number > kConditionCap)
        throw IllConditioned("metric condition number exceeds 1e12");
}

} // namespace

MetricOperator build_metric(const BiorthogonalSystem& sys, const std::vector<double>& weights) {
    const std::size_t n = sys.size();
    std::vector<double> w = weights.empty() ? std::vector<double>(n, 1.0) : weights;
    if (w.size() != n) throw DimensionMismatch("one weight per eigenvector required");
    for (double wi : w)
        if (!(wi > 0.0)) throw OutOfDomain("metric weights must be strictly positive");

    ComplexMatrix g(n);
    for (std::size_t k = 0; k < n; ++k) {
        const CVector& l = sys.left[k];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                g(i, j) += w[k] * l[i] * std::conj(l[j]);
    }
    // Kill the rounding skew before diagnostics.
    for (std::size_t i = 0; i < n; ++i) {
        g(i, i) = cplx(g(i, i).real(), 0.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            const cplx avg = 0.5 * (g(i, j) + std::conj(g(j, i)));
            g(i, j) = avg;
            g(j, i) = std::conj(avg);
        }
    }

    MetricOperator out{std::move(g), 0.0, 0.0, std::move(w)};
    attach_diagnostics(out);
    return out;
}

MetricOperator closed_form_metric_2x2(double gamma, PhaseLabel phase) {
    MetricOperator out;
    out.weights = {1.0, 1.0};
    if (phase == PhaseLabel::symmetric) {
        if (!(gamma >= 0.0 && gamma < 1.0))
            throw OutOfDomain("symmetric-phase metric requires 0 <= gamma < 1");
        const double a = 1.0 / std::sqrt(1.0 - gamma * gamma);
        out.matrix = ComplexMatrix{{a, -kI * gamma * a}, {kI * gamma * a, a}};
        out.min_eigenvalue = a * (1.0 - gamma);
        out.condition_number = (1.0 + gamma) / (1.0 - gamma);
    } else if (phase == PhaseLabel::broken) {
        if (!(gamma > 1.0))
            throw OutOfDomain("broken-phase metric requires gamma > 1");
        const double b = 1.0 / std::sqrt(gamma * gamma - 1.0);
        out.matrix = ComplexMatrix{{gamma * b, -kI * b}, {kI * b, gamma * b}};
        out.min_eigenvalue = b * (gamma - 1.0);
        out.condition_number = (gamma + 1.0) / (gamma - 1.0);
    } else {
        throw OutOfDomain("no metric exists at the exceptional point");
    }
    return out;
}

MetricOperator det_normalize(const MetricOperator& g) {
    const HermitianEigenResult eig = hermitian_eig(g.matrix);
    double logdet = 0.0;
    for (double v : eig.eigenvalues) {
        if (v <= 0.0) throw IllConditioned("metric lost positive definiteness");
        logdet += std::log(v);
    }
    const double scale = std::exp(-logdet / static_cast<double>(g.size()));
    MetricOperator out = g;
    out.matrix *= scale;
    out.min_eigenvalue = eig.eigenvalues.front() * scale;
    out.condition_number = eig.eigenvalues.back() / eig.eigenvalues.front();
    return out;
}

MetricOperator identity_metric(std::size_t n) {
    MetricOperator out;
    out.matrix = ComplexMatrix::identity(n);
    out.min_eigenvalue = 1.0;
    out.condition_number = 1.0;
    out.weights.assign(n, 1.0);
    return out;
}

cplx g_inner(const MetricOperator& g, const CVector& phi, const CVector& psi) {
    if (phi.size() != g.size() || psi.size() != g.size())
        throw DimensionMismatch("vector length does not match the metric");
    return vdot(phi, g.matrix * psi);
}

double g_norm(const MetricOperator& g, const CVector& psi) {
    return std::sqrt(std::max(0.0, g_inner(g, psi, psi).real()));
}

CVector g_normalize(const MetricOperator& g, const CVector& psi) {
    if (vnorm(psi) == 0.0) throw ZeroVector("cannot normalize the zero vector");
    const double nn = g_norm(g, psi);
    if (!(nn > 0.0)) throw ZeroVector("vector has vanishing metric norm");
    CVector out = psi;
    vscale(out, 1.0 / nn);
    return out;
}

} // namespace ptm
