#include "ptm/uncertainty.hpp"

#include <cmath>
#include <limits>

#include "ptm/errors.hpp"

namespace ptm {

namespace {

constexpr double kNormTol = 1e-9;
constexpr double kVarianceFloor = 1e-12;
const cplx kI(0.0, 1.0);

void check_normalized(const MetricOperator& g, const CVector& psi) {
    const cplx nn = g_inner(g, psi, psi);
    if (std::abs(nn - cplx(1.0)) > kNormTol)
        throw NotNormalized("state is not G-normalized");
}

// ||(X + i s t Y) psi - (x + i s t y) psi||_2 minimized over the sign s.
std::pair<double, int> eigen_residual(const ComplexMatrix& x, const ComplexMatrix& y,
                                      const CVector& psi, double t, double xm, double ym) {
    const CVector xpsi = x * psi;
    const CVector ypsi = y * psi;
    double best = HUGE_VAL;
    int best_sign = 1;
    for (int s : {+1, -1}) {
        CVector r = xpsi;
        vaxpy(kI * (s * t), ypsi, r);
        vaxpy(-cplx(xm, s * t * ym), psi, r);
        const double nrm = vnorm(r);
        if (nrm < best) {
            best = nrm;
            best_sign = s;
        }
    }
    return {best, best_sign};
}

} // namespace

GMoments g_moments(const ComplexMatrix& o, const MetricOperator& g, const CVector& psi) {
    if (o.size() != g.size() || psi.size() != g.size())
        throw DimensionMismatch("operator, metric and state dimensions differ");
    const CVector opsi = o * psi;
    return {g_inner(g, psi, opsi), g_inner(g, psi, o * opsi)};
}

double g_variance(const ComplexMatrix& o, const MetricOperator& g, const CVector& psi) {
    check_normalized(g, psi);
    const GMoments m = g_moments(o, g, psi);
    return (m.second - m.mean * m.mean).real();
}

UncertaintyReport uncertainty_sides(const ComplexMatrix& a, const ComplexMatrix& b,
                                    const MetricOperator& g, const CVector& psi,
                                    double mus_tol) {
    check_normalized(g, psi);
    const GMoments ma = g_moments(a, g, psi);
    const GMoments mb = g_moments(b, g, psi);

    UncertaintyReport rep;
    rep.var_a = (ma.second - ma.mean * ma.mean).real();
    rep.var_b = (mb.second - mb.mean * mb.mean).real();
    rep.lhs = rep.var_a * rep.var_b;

    const CVector abpsi = a * (b * psi);
    const CVector bapsi = b * (a * psi);
    const cplx comm = g_inner(g, psi, vsub(abpsi, bapsi));
    rep.rhs = 0.25 * std::norm(comm);

    // Both sides vanish on eigenstates of A or B; call that ratio 1 so the
    // 0/0 rows of a sweep stay meaningful.
    const double scale = std::max(1.0, std::abs(ma.second) * std::abs(mb.second));
    const bool rhs_zero = rep.rhs <= 1e-24 * scale;
    const bool lhs_zero = std::abs(rep.lhs) <= 1e-12 * scale;
    if (rhs_zero) {
        if (lhs_zero)
            rep.eta = 1.0;
        else
            rep.eta = rep.lhs > 0.0 ? std::numeric_limits<double>::infinity()
                                    : -std::numeric_limits<double>::infinity();
    } else {
        rep.eta = rep.lhs / rep.rhs;
    }

    const double r = ma.mean.real();
    const double p = mb.mean.real();
    double residual = HUGE_VAL;
    if (rep.var_b > kVarianceFloor) {
        rep.lambda_g = std::sqrt(std::max(rep.var_a, 0.0) / rep.var_b);
        residual = eigen_residual(a, b, psi, rep.lambda_g, r, p).first;
        if (rep.var_a > kVarianceFloor) {
            const double swapped = std::sqrt(std::max(rep.var_b, 0.0) / rep.var_a);
            residual = std::min(residual, eigen_residual(b, a, psi, swapped, p, r).first);
        }
    } else if (rep.var_a > kVarianceFloor) {
        // psi is an eigenstate of B; test saturation from the B side.
        rep.lambda_g = std::numeric_limits<double>::infinity();
        residual = eigen_residual(b, a, psi, 0.0, p, r).first;
    } else {
        // Common eigenstate of both observables.
        rep.lambda_g = 0.0;
        CVector ra = a * psi;
        vaxpy(-cplx(r), psi, ra);
        CVector rb = b * psi;
        vaxpy(-cplx(p), psi, rb);
        residual = std::min(vnorm(ra), vnorm(rb));
    }
    rep.mus_residual = residual;
    rep.is_mus = std::abs(rep.eta - 1.0) <= mus_tol && residual <= mus_tol;
    return rep;
}

MusResult mus_test(const ComplexMatrix& a, const ComplexMatrix& b, const MetricOperator& g,
                   const CVector& psi, double tol) {
    check_normalized(g, psi);
    const GMoments ma = g_moments(a, g, psi);
    const GMoments mb = g_moments(b, g, psi);
    const double var_a = (ma.second - ma.mean * ma.mean).real();
    const double var_b = (mb.second - mb.mean * mb.mean).real();
    if (var_b <= kVarianceFloor)
        throw DegenerateVariance("the second observable has vanishing variance");

    MusResult out;
    out.lambda_g = std::sqrt(std::max(var_a, 0.0) / var_b);
    const auto [residual, sign] =
        eigen_residual(a, b, psi, out.lambda_g, ma.mean.real(), mb.mean.real());
    out.residual = residual;
    out.sign = sign;
    out.is_mus = residual <= tol;
    return out;
}

} // namespace ptm
