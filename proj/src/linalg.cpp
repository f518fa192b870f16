#include "ptm/linalg.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "ptm/errors.hpp"

namespace ptm {

namespace {

constexpr double kDeflationTol = 1e-12;  // subdiagonal deflation threshold
constexpr int kQrSweepFactor = 100;      // iteration cap: 100 * n sweeps
constexpr int kJacobiSweepCap = 60;

// ---------------------------------------------------------------------------
// Hermitian Jacobi
// ---------------------------------------------------------------------------

double offdiag_norm(const ComplexMatrix& a) {
    const std::size_t n = a.size();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// One two-sided rotation annihilating a(p,q). The rotation is the product of
// a phase that makes the pivot real and a real Jacobi rotation.
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
    const cplx apq = a(p, q);
    const double mag = std::abs(apq);
    if (mag == 0.0) return;

    const cplx phase = apq / mag;       // e^{i phi}
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double tau = (aqq - app) / (2.0 * mag);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    // R is identity except R(p,p)=c, R(p,q)=s, R(q,p)=-s*conj(phase),
    // R(q,q)=c*conj(phase). Column update A <- A R, then row update A <- R^H A.
    const cplx rqp = -s * std::conj(phase);
    const cplx rqq = c * std::conj(phase);
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
        const cplx aip = a(i, p), aiq = a(i, q);
        a(i, p) = aip * c + aiq * rqp;
        a(i, q) = aip * s + aiq * rqq;
        const cplx vip = v(i, p), viq = v(i, q);
        v(i, p) = vip * c + viq * rqp;
        v(i, q) = vip * s + viq * rqq;
    }
    for (std::size_t j = 0; j < n; ++j) {
        const cplx apj = a(p, j), aqj = a(q, j);
        a(p, j) = c * apj - s * phase * aqj;
        a(q, j) = s * apj + c * phase * aqj;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = cplx(a(p, p).real(), 0.0);
    a(q, q) = cplx(a(q, q).real(), 0.0);
}

// ---------------------------------------------------------------------------
// Hessenberg reduction
// ---------------------------------------------------------------------------

// Householder similarity reduction to upper Hessenberg form. When `u` is
// non-null the accumulated unitary satisfies  m = u * h * u^H.
ComplexMatrix hessenberg_reduce(ComplexMatrix h, ComplexMatrix* u) {
    const std::size_t n = h.size();
    if (u) *u = ComplexMatrix::identity(n);
    if (n < 3) return h;

    CVector w(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double xnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) xnorm2 += std::norm(h(i, k));
        const double xnorm = std::sqrt(xnorm2);
        if (xnorm == 0.0) continue;

        const cplx x0 = h(k + 1, k);
        const cplx alpha = (std::abs(x0) > 0.0) ? -(x0 / std::abs(x0)) * xnorm : cplx(-xnorm);

        // Householder vector, normalized.
        double wn2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) {
            w[i] = h(i, k);
            if (i == k + 1) w[i] -= alpha;
            wn2 += std::norm(w[i]);
        }
        const double wn = std::sqrt(wn2);
        if (wn < DBL_MIN * 16) continue;
        for (std::size_t i = k + 1; i < n; ++i) w[i] /= wn;

        // Left: rows k+1..n-1, columns k..n-1.
        for (std::size_t j = k; j < n; ++j) {
            cplx dot = 0.0;
            for (std::size_t i = k + 1; i < n; ++i) dot += std::conj(w[i]) * h(i, j);
            dot *= 2.0;
            for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= dot * w[i];
        }
        // Right: all rows, columns k+1..n-1.
        for (std::size_t i = 0; i < n; ++i) {
            cplx dot = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) dot += h(i, j) * w[j];
            dot *= 2.0;
            for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= dot * std::conj(w[j]);
        }
        if (u) {
            for (std::size_t i = 0; i < n; ++i) {
                cplx dot = 0.0;
                for (std::size_t j = k + 1; j < n; ++j) dot += (*u)(i, j) * w[j];
                dot *= 2.0;
                for (std::size_t j = k + 1; j < n; ++j) (*u)(i, j) -= dot * std::conj(w[j]);
            }
        }
        h(k + 1, k) = alpha;
        for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
    }
    return h;
}

// ---------------------------------------------------------------------------
// Shifted QR iteration on a Hessenberg matrix (eigenvalues only)
// ---------------------------------------------------------------------------

// Eigenvalues of [[a,b],[c,d]] via the stable quadratic formula.
std::pair<cplx, cplx> eig_2x2(cplx a, cplx b, cplx c, cplx d) {
    const cplx mid = 0.5 * (a + d);
    const cplx det = a * d - b * c;
    const cplx s = std::sqrt(mid * mid - det);
    cplx l1 = mid + s;
    if (std::abs(mid - s) > std::abs(l1)) l1 = mid - s;
    const cplx l2 = (std::abs(l1) > 0.0) ? det / l1 : l1;
    return {l1, l2};
}

struct Givens {
    double c;
    cplx s;
};

// Rotation G = [[c, s], [-conj(s), c]] with G (f,g)^T = (r, 0)^T.
Givens make_givens(cplx f, cplx g) {
    const double af = std::abs(f), ag = std::abs(g);
    if (ag == 0.0) return {1.0, 0.0};
    if (af == 0.0) return {0.0, std::conj(g) / ag};
    const double r = std::hypot(af, ag);
    return {af / r, (f / af) * std::conj(g) / r};
}

// One explicit-shift QR sweep on the active window [lo, hi].
void qr_sweep(ComplexMatrix& h, std::size_t lo, std::size_t hi, cplx shift) {
    for (std::size_t j = lo; j <= hi; ++j) h(j, j) -= shift;

    std::vector<Givens> rot(hi - lo);
    for (std::size_t j = lo; j < hi; ++j) {
        const Givens g = make_givens(h(j, j), h(j + 1, j));
        rot[j - lo] = g;
        for (std::size_t k = j; k <= hi; ++k) {
            const cplx hj = h(j, k), hj1 = h(j + 1, k);
            h(j, k) = g.c * hj + g.s * hj1;
            h(j + 1, k) = -std::conj(g.s) * hj + g.c * hj1;
        }
        h(j + 1, j) = 0.0;
    }
    for (std::size_t j = lo; j < hi; ++j) {
        const Givens g = rot[j - lo];
        const std::size_t top = lo;
        for (std::size_t i = top; i <= std::min(j + 1, hi); ++i) {
            const cplx hij = h(i, j), hij1 = h(i, j + 1);
            h(i, j) = g.c * hij + std::conj(g.s) * hij1;
            h(i, j + 1) = -g.s * hij + g.c * hij1;
        }
    }
    for (std::size_t j = lo; j <= hi; ++j) h(j, j) += shift;
}

// Destroys h. Returns unsorted eigenvalues.
CVector hessenberg_qr_values(ComplexMatrix h) {
    const std::size_t n = h.size();
    const double hnorm = h.frobenius_norm();
    CVector vals(n);
    if (n == 0) return vals;

    std::ptrdiff_t ihi = static_cast<std::ptrdiff_t>(n) - 1;
    long total = 0;
    int since_deflate = 0;
    const long cap = kQrSweepFactor * static_cast<long>(n);

    while (ihi >= 0) {
        if (ihi == 0) {
            vals[0] = h(0, 0);
            break;
        }
        // Walk up from ihi until a negligible subdiagonal splits the window.
        std::size_t hi = static_cast<std::size_t>(ihi);
        std::size_t lo = hi;
        while (lo > 0) {
            const double sub = std::abs(h(lo, lo - 1));
            double tol = kDeflationTol * (std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo)));
            if (tol == 0.0) tol = kDeflationTol * hnorm;
            if (sub <= tol) {
                h(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }

        if (lo == hi) {
            vals[hi] = h(hi, hi);
            --ihi;
            since_deflate = 0;
            continue;
        }
        if (lo + 1 == hi) {
            const auto [l1, l2] = eig_2x2(h(lo, lo), h(lo, hi), h(hi, lo), h(hi, hi));
            vals[hi] = l1;
            vals[lo] = l2;
            ihi -= 2;
            since_deflate = 0;
            continue;
        }
        if (total >= cap) throw NoConvergence("QR iteration cap exceeded");

        cplx shift;
        if (since_deflate > 0 && since_deflate % 10 == 0) {
            // Ad-hoc shift to break the occasional limit cycle.
            shift = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1));
        } else {
            const auto [l1, l2] =
                eig_2x2(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
            shift = (std::abs(l1 - h(hi, hi)) < std::abs(l2 - h(hi, hi))) ? l1 : l2;
        }
        qr_sweep(h, lo, hi, shift);
        ++total;
        ++since_deflate;
    }
    return vals;
}

void sort_descending(CVector& vals) {
    std::sort(vals.begin(), vals.end(), [](const cplx& a, const cplx& b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });
}

// ---------------------------------------------------------------------------
// Inverse iteration on the Hessenberg matrix
// ---------------------------------------------------------------------------

// LU of (h - lambda I) with pivoting restricted to adjacent rows; singular
// pivots are replaced by a small multiple of the matrix scale so that
// inverse iteration can proceed through exact eigenvalues.
struct HessLu {
    ComplexMatrix u;
    std::vector<cplx> mult;
    std::vector<char> swapped;
    double repl;
};

HessLu hess_lu(const ComplexMatrix& h, cplx lambda, double hnorm) {
    const std::size_t n = h.size();
    HessLu f{h, CVector(n, 0.0), std::vector<char>(n, 0),
             std::max(DBL_EPSILON * hnorm, DBL_MIN * 1e10)};
    for (std::size_t j = 0; j < n; ++j) f.u(j, j) -= lambda;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (std::abs(f.u(k + 1, k)) > std::abs(f.u(k, k))) {
            f.swapped[k] = 1;
            for (std::size_t j = k; j < n; ++j) std::swap(f.u(k, j), f.u(k + 1, j));
        }
        cplx piv = f.u(k, k);
        if (std::abs(piv) < f.repl) {
            piv = f.repl;
            f.u(k, k) = piv;
        }
        const cplx m = f.u(k + 1, k) / piv;
        f.mult[k] = m;
        f.u(k + 1, k) = 0.0;
        for (std::size_t j = k + 1; j < n; ++j) f.u(k + 1, j) -= m * f.u(k, j);
    }
    return f;
}

CVector hess_lu_solve(const HessLu& f, CVector b) {
    const std::size_t n = b.size();
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (f.swapped[k]) std::swap(b[k], b[k + 1]);
        b[k + 1] -= f.mult[k] * b[k];
    }
    for (std::size_t i = n; i-- > 0;) {
        cplx s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= f.u(i, j) * b[j];
        cplx piv = f.u(i, i);
        if (std::abs(piv) < f.repl) piv = f.repl;
        b[i] = s / piv;
    }
    return b;
}

CVector hess_apply(const ComplexMatrix& h, const CVector& x) {
    const std::size_t n = x.size();
    CVector y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j0 = (i == 0) ? 0 : i - 1;
        cplx s = 0.0;
        for (std::size_t j = j0; j < n; ++j) s += h(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

// Deterministic start vector; distinct per (pair index, attempt).
CVector start_vector(std::size_t n, std::size_t index, int attempt) {
    std::uint64_t state = 0x9E3779B97F4A7C15ull * (index + 1) + 0xBF58476D1CE4E5B9ull * (attempt + 1);
    auto next = [&state]() {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return static_cast<double>(state >> 11) * 0x1.0p-53 - 0.5;
    };
    CVector v(n);
    for (auto& x : v) {
        const double re = next();
        const double im = next();
        x = cplx(re, im);
    }
    const double nn = vnorm(v);
    for (auto& x : v) x /= nn;
    return v;
}

} // namespace

// ---------------------------------------------------------------------------
// Public interface
// ---------------------------------------------------------------------------

HermitianEigenResult hermitian_eig(const ComplexMatrix& m) {
    const std::size_t n = m.size();
    if (n == 0) throw BadDimension("empty matrix");
    const double scale = std::max(1.0, m.max_abs());
    if (!m.is_hermitian(1e-12 * scale))
        throw NotHermitian("matrix is not Hermitian within tolerance");

    ComplexMatrix a = m;
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double target = 1e-14 * std::max(m.frobenius_norm(), DBL_MIN);

    int sweep = 0;
    while (offdiag_norm(a) > target) {
        if (++sweep > kJacobiSweepCap) throw NoConvergence("Jacobi sweep cap exceeded");
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                jacobi_rotate(a, v, p, q);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&a](std::size_t i, std::size_t j) {
        return a(i, i).real() < a(j, j).real();
    });

    HermitianEigenResult out;
    out.eigenvalues.resize(n);
    out.vectors = ComplexMatrix(n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = a(order[k], order[k]).real();
        CVector col = v.column(order[k]);
        phase_fix_largest(col);
        out.vectors.set_column(k, col);
    }
    return out;
}

CVector general_eigenvalues(const ComplexMatrix& m) {
    const std::size_t n = m.size();
    if (n == 0) throw BadDimension("empty matrix");
    if (n == 1) return {m(0, 0)};
    CVector vals = hessenberg_qr_values(hessenberg_reduce(m, nullptr));
    sort_descending(vals);
    return vals;
}

GeneralEigenResult general_eig(const ComplexMatrix& m) {
    const std::size_t n = m.size();
    if (n == 0) throw BadDimension("empty matrix");

    GeneralEigenResult out;
    if (n == 1) {
        out.eigenvalues = {m(0, 0)};
        out.vectors = ComplexMatrix::identity(1);
        out.converged = {true};
        out.near_degenerate = {false};
        return out;
    }

    const double hnorm = m.frobenius_norm();
    ComplexMatrix u;
    const ComplexMatrix h = hessenberg_reduce(m, &u);
    CVector vals = hessenberg_qr_values(h);
    sort_descending(vals);

    out.eigenvalues = vals;
    out.vectors = ComplexMatrix(n);
    out.converged.assign(n, false);
    out.near_degenerate.assign(n, false);

    for (std::size_t i = 0; i < n; ++i) {
        double gap = HUGE_VAL;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) gap = std::min(gap, std::abs(vals[i] - vals[j]));
        out.near_degenerate[i] = gap < 1e-10 * hnorm;
    }

    // Inverse iteration, orthogonalizing within clusters of (numerically)
    // coincident eigenvalues so repeated eigenvalues of diagonalizable
    // matrices still yield independent vectors.
    const double cluster_tol = 1e-12 * std::max(1.0, hnorm);
    const double accept = 1e-8 * hnorm;
    const double tight = 1e-13 * hnorm + DBL_MIN;
    std::vector<CVector> basis;      // accepted vectors, Hessenberg coordinates
    std::vector<cplx> basis_vals;

    for (std::size_t i = 0; i < n; ++i) {
        std::vector<const CVector*> cluster;
        for (std::size_t j = 0; j < basis.size(); ++j)
            if (std::abs(basis_vals[j] - vals[i]) <= cluster_tol)
                cluster.push_back(&basis[j]);

        const HessLu lu = hess_lu(h, vals[i], hnorm);
        CVector best;
        double best_resid = HUGE_VAL;
        for (int attempt = 0; attempt < 3 && best_resid > tight; ++attempt) {
            CVector y = start_vector(n, i, attempt);
            for (int iter = 0; iter < 8; ++iter) {
                y = hess_lu_solve(lu, std::move(y));
                for (const CVector* q : cluster) vaxpy(-vdot(*q, y), *q, y);
                const double nn = vnorm(y);
                if (!std::isfinite(nn) || nn == 0.0) break;
                for (auto& x : y) x /= nn;
                CVector r = hess_apply(h, y);
                vaxpy(-vals[i], y, r);
                const double resid = vnorm(r);
                if (resid < best_resid) {
                    best_resid = resid;
                    best = y;
                }
                if (resid <= tight) break;
            }
        }
        if (best.empty() || best_resid > accept)
            throw DefectivePencil("inverse iteration failed to produce an independent eigenvector");

        basis.push_back(best);
        basis_vals.push_back(vals[i]);

        CVector v = u * best;
        const double nn = vnorm(v);
        for (auto& x : v) x /= nn;
        phase_fix_largest(v);
        out.vectors.set_column(i, v);

        CVector r = m * v;
        vaxpy(-vals[i], v, r);
        out.converged[i] = vnorm(r) <= std::max(accept, DBL_MIN);
    }
    return out;
}

ComplexMatrix hermitian_sqrt(const ComplexMatrix& m) {
    const HermitianEigenResult eig = hermitian_eig(m);
    const std::size_t n = m.size();
    if (eig.eigenvalues.front() <= 1e-12)
        throw NotPositiveDefinite("matrix has an eigenvalue at or below 1e-12");

    ComplexMatrix s(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double rk = std::sqrt(eig.eigenvalues[k]);
        const CVector vk = eig.vectors.column(k);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                s(i, j) += rk * vk[i] * std::conj(vk[j]);
    }
    // Clean up rounding in the Hermitian structure.
    for (std::size_t i = 0; i < n; ++i) {
        s(i, i) = cplx(s(i, i).real(), 0.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            const cplx avg = 0.5 * (s(i, j) + std::conj(s(j, i)));
            s(i, j) = avg;
            s(j, i) = std::conj(avg);
        }
    }
    return s;
}

double entrywise_abs_sum(const ComplexMatrix& m) {
    double s = 0.0;
    for (const auto& x : m.entries()) s += std::abs(x);
    return s;
}

LuFactors lu_factor(const ComplexMatrix& m) {
    const std::size_t n = m.size();
    LuFactors f{m, std::vector<int>(n), 1};
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(f.lu(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double a = std::abs(f.lu(i, k));
            if (a > best) { best = a; p = i; }
        }
        f.pivots[k] = static_cast<int>(p);
        if (p != k) {
            f.sign = -f.sign;
            for (std::size_t j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(p, j));
        }
        const cplx piv = f.lu(k, k);
        if (std::abs(piv) == 0.0) continue;  // singular column; determinant 0
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx mik = f.lu(i, k) / piv;
            f.lu(i, k) = mik;
            for (std::size_t j = k + 1; j < n; ++j) f.lu(i, j) -= mik * f.lu(k, j);
        }
    }
    return f;
}

CVector lu_solve(const LuFactors& f, CVector b) {
    const std::size_t n = b.size();
    if (f.lu.size() != n) throw DimensionMismatch("LU solve size mismatch");
    // Stored multipliers reflect the final row order, so permute first.
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t p = static_cast<std::size_t>(f.pivots[k]);
        if (p != k) std::swap(b[k], b[p]);
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = k + 1; i < n; ++i) b[i] -= f.lu(i, k) * b[k];
    for (std::size_t i = n; i-- > 0;) {
        cplx s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= f.lu(i, j) * b[j];
        const cplx piv = f.lu(i, i);
        if (std::abs(piv) == 0.0) throw SingularMatrix("singular matrix in LU solve");
        b[i] = s / piv;
    }
    return b;
}

ComplexMatrix lu_inverse(const ComplexMatrix& m) {
    const std::size_t n = m.size();
    const LuFactors f = lu_factor(m);
    ComplexMatrix inv(n);
    for (std::size_t j = 0; j < n; ++j) {
        CVector e(n, 0.0);
        e[j] = 1.0;
        inv.set_column(j, lu_solve(f, std::move(e)));
    }
    return inv;
}

cplx lu_determinant(const ComplexMatrix& m) {
    const LuFactors f = lu_factor(m);
    cplx det = static_cast<double>(f.sign);
    for (std::size_t i = 0; i < m.size(); ++i) det *= f.lu(i, i);
    return det;
}

} // namespace ptm
