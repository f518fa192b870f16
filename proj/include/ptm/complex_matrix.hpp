#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace ptm {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

/// Dense square complex matrix, row-major storage.
///
/// This is the universal carrier for Hamiltonians, metric operators and
/// observables. Dimensions stay small (a few hundred at most), so the
/// implementation favours clarity over blocking tricks.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    /// n x n zero matrix.
    explicit ComplexMatrix(std::size_t n) : n_(n), a_(n * n) {}

    /// From a flat row-major entry list; entries.size() must be n*n.
    ComplexMatrix(std::size_t n, CVector entries);

    /// From nested initializer lists; all rows must have equal length.
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(const CVector& d);

    std::size_t size() const { return n_; }

    cplx& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    const CVector& entries() const { return a_; }

    CVector column(std::size_t j) const;
    CVector row(std::size_t i) const;
    void set_column(std::size_t j, const CVector& v);

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conjugate() const;

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(cplx s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

    ComplexMatrix operator*(const ComplexMatrix& rhs) const;
    CVector operator*(const CVector& v) const;

    double frobenius_norm() const;
    double max_abs() const;
    bool is_hermitian(double tol) const;
    bool all_finite() const;

private:
    std::size_t n_ = 0;
    CVector a_;
};

// -- vector helpers ----------------------------------------------------------

/// Inner product conjugating the first argument.
cplx vdot(const CVector& x, const CVector& y);
double vnorm(const CVector& x);

void vscale(CVector& x, cplx s);
/// y += a * x
void vaxpy(cplx a, const CVector& x, CVector& y);
CVector vadd(const CVector& x, const CVector& y);
CVector vsub(const CVector& x, const CVector& y);

/// Rotate the global phase so the largest-magnitude component is real
/// and positive. Ties resolve to the lowest index.
void phase_fix_largest(CVector& v);

} // namespace ptm
