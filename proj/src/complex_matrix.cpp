#include "ptm/complex_matrix.hpp"

#include <cmath>
#include <utility>

#include "ptm/errors.hpp"

namespace ptm {

ComplexMatrix::ComplexMatrix(std::size_t n, CVector entries)
    : n_(n), a_(std::move(entries)) {
    if (a_.size() != n_ * n_)
        throw BadDimension("entry count does not match a square matrix");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    n_ = rows.size();
    a_.reserve(n_ * n_);
    for (const auto& r : rows) {
        if (r.size() != n_)
            throw BadDimension("matrix rows must all have length n");
        a_.insert(a_.end(), r.begin(), r.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const CVector& d) {
    ComplexMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

CVector ComplexMatrix::column(std::size_t j) const {
    CVector v(n_);
    for (std::size_t i = 0; i < n_; ++i) v[i] = (*this)(i, j);
    return v;
}

CVector ComplexMatrix::row(std::size_t i) const {
    return CVector(a_.begin() + static_cast<std::ptrdiff_t>(i * n_),
                   a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * n_));
}

void ComplexMatrix::set_column(std::size_t j, const CVector& v) {
    if (v.size() != n_) throw DimensionMismatch("column length mismatch");
    for (std::size_t i = 0; i < n_; ++i) (*this)(i, j) = v[i];
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            m(j, i) = std::conj((*this)(i, j));
    return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix m(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            m(j, i) = (*this)(i, j);
    return m;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix m(n_);
    for (std::size_t i = 0; i < n_ * n_; ++i) m.a_[i] = std::conj(a_[i]);
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    if (rhs.n_ != n_) throw DimensionMismatch("matrix addition size mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += rhs.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    if (rhs.n_ != n_) throw DimensionMismatch("matrix subtraction size mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= rhs.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (auto& x : a_) x *= s;
    return *this;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
    if (rhs.n_ != n_) throw DimensionMismatch("matrix product size mismatch");
    ComplexMatrix out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t k = 0; k < n_; ++k) {
            const cplx aik = (*this)(i, k);
            if (aik == cplx(0.0)) continue;
            for (std::size_t j = 0; j < n_; ++j)
                out(i, j) += aik * rhs(k, j);
        }
    }
    return out;
}

CVector ComplexMatrix::operator*(const CVector& v) const {
    if (v.size() != n_) throw DimensionMismatch("matrix-vector size mismatch");
    CVector out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        cplx s = 0.0;
        for (std::size_t j = 0; j < n_; ++j) s += (*this)(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& x : a_) s += std::norm(x);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& x : a_) m = std::max(m, std::abs(x));
    return m;
}

bool ComplexMatrix::is_hermitian(double tol) const {
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i; j < n_; ++j)
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol)
                return false;
    return true;
}

bool ComplexMatrix::all_finite() const {
    for (const auto& x : a_)
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
            return false;
    return true;
}

cplx vdot(const CVector& x, const CVector& y) {
    if (x.size() != y.size()) throw DimensionMismatch("vector inner product size mismatch");
    cplx s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
    return s;
}

double vnorm(const CVector& x) {
    double s = 0.0;
    for (const auto& v : x) s += std::norm(v);
    return std::sqrt(s);
}

void vscale(CVector& x, cplx s) {
    for (auto& v : x) v *= s;
}

void vaxpy(cplx a, const CVector& x, CVector& y) {
    if (x.size() != y.size()) throw DimensionMismatch("axpy size mismatch");
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

CVector vadd(const CVector& x, const CVector& y) {
    CVector out = x;
    vaxpy(1.0, y, out);
    return out;
}

CVector vsub(const CVector& x, const CVector& y) {
    CVector out = x;
    vaxpy(-1.0, y, out);
    return out;
}

void phase_fix_largest(CVector& v) {
    std::size_t k = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double a = std::abs(v[i]);
        if (a > best + 1e-300 && a > best) { best = a; k = i; }
    }
    if (best <= 0.0) return;
    const cplx ph = v[k] / best;
    const cplx inv = std::conj(ph);
    for (auto& x : v) x *= inv;
}

} // namespace ptm
