#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "ptm/errors.hpp"
#include "ptm/linalg.hpp"

using namespace ptm;

namespace {

const cplx I(0.0, 1.0);

ComplexMatrix h2_matrix(double gamma) {
    return ComplexMatrix{{I * gamma, 1.0}, {1.0, -I * gamma}};
}

ComplexMatrix symmetric_metric(double gamma) {
    const double a = 1.0 / std::sqrt(1.0 - gamma * gamma);
    return ComplexMatrix{{a, -I * gamma * a}, {I * gamma * a, a}};
}

double reconstruction_error(const ComplexMatrix& m, const HermitianEigenResult& e) {
    const std::size_t n = m.size();
    ComplexMatrix r = m;
    for (std::size_t k = 0; k < n; ++k) {
        const CVector v = e.vectors.column(k);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                r(i, j) -= e.eigenvalues[k] * v[i] * std::conj(v[j]);
    }
    return r.frobenius_norm();
}

} // namespace

TEST_CASE("hermitian_eig: 2x2 identity") {
    const auto e = hermitian_eig(ComplexMatrix::identity(2));
    CHECK(e.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(e.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("hermitian_eig: sigma_y spectrum") {
    const ComplexMatrix sy{{0.0, -I}, {I, 0.0}};
    const auto e = hermitian_eig(sy);
    CHECK(e.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-13));
    CHECK(e.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(reconstruction_error(sy, e) < 1e-13);
}

TEST_CASE("hermitian_eig: closed-form symmetric-phase metric") {
    // Eigenvalues of a*(1 -+ gamma) with a = 1/sqrt(1-gamma^2).
    const double gamma = 0.2;
    const ComplexMatrix g = symmetric_metric(gamma);
    const auto e = hermitian_eig(g);
    const double a = 1.0 / std::sqrt(1.0 - gamma * gamma);
    CHECK(e.eigenvalues[0] == doctest::Approx(a * (1.0 - gamma)).epsilon(1e-12));
    CHECK(e.eigenvalues[1] == doctest::Approx(a * (1.0 + gamma)).epsilon(1e-12));
}

TEST_CASE("hermitian_eig: rejects non-Hermitian input") {
    CHECK_THROWS_AS(hermitian_eig(h2_matrix(0.5)), NotHermitian);
}

TEST_CASE("hermitian_eig: reconstruction and orthonormality on random input") {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<std::size_t> size(2, 16);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = size(rng);
        const ComplexMatrix m = oracle::random_hermitian(rng, n);
        const auto e = hermitian_eig(m);
        CHECK(reconstruction_error(m, e) <= 1e-10 * std::max(m.frobenius_norm(), 1e-30));

        ComplexMatrix gram = e.vectors.adjoint() * e.vectors;
        gram -= ComplexMatrix::identity(n);
        CHECK(gram.max_abs() < 1e-10);
        for (std::size_t k = 1; k < n; ++k)
            CHECK(e.eigenvalues[k - 1] <= e.eigenvalues[k] + 1e-14);
    }
}

TEST_CASE("general_eig: symmetric-phase Hamiltonian has real pair") {
    const auto e = general_eig(h2_matrix(0.2));
    const double eps = std::sqrt(1.0 - 0.04);
    CHECK(e.eigenvalues[0].real() == doctest::Approx(eps).epsilon(1e-13));
    CHECK(std::abs(e.eigenvalues[0].imag()) < 1e-14);
    CHECK(e.eigenvalues[1].real() == doctest::Approx(-eps).epsilon(1e-13));
    CHECK(e.converged[0]);
    CHECK(e.converged[1]);
}

TEST_CASE("general_eig: broken-phase Hamiltonian has imaginary pair") {
    const auto e = general_eig(h2_matrix(1.2));
    const double eb = std::sqrt(1.2 * 1.2 - 1.0);
    CHECK(e.eigenvalues[0].imag() == doctest::Approx(eb).epsilon(1e-13));
    CHECK(std::abs(e.eigenvalues[0].real()) < 1e-14);
    CHECK(e.eigenvalues[1].imag() == doctest::Approx(-eb).epsilon(1e-13));
}

TEST_CASE("general_eig: diagonal matrix returns the standard basis") {
    const ComplexMatrix d = ComplexMatrix::diagonal({2.0, 3.0 * I});
    const auto e = general_eig(d);
    CHECK(std::abs(e.eigenvalues[0] - 2.0) < 1e-14);
    CHECK(std::abs(e.eigenvalues[1] - 3.0 * I) < 1e-14);
    CHECK(std::abs(e.vectors(0, 0) - 1.0) < 1e-12);
    CHECK(std::abs(e.vectors(1, 0)) < 1e-12);
    CHECK(std::abs(e.vectors(1, 1) - 1.0) < 1e-12);
    CHECK(std::abs(e.vectors(0, 1)) < 1e-12);
}

TEST_CASE("general_eig: defective input raises DefectivePencil") {
    CHECK_THROWS_AS(general_eig(h2_matrix(1.0)), DefectivePencil);
}

TEST_CASE("general_eig: repeated eigenvalue of a diagonalizable matrix") {
    const ComplexMatrix m = ComplexMatrix::diagonal({1.0, 1.0, 2.0});
    const auto e = general_eig(m);
    // Two independent unit vectors for the doubled eigenvalue.
    const CVector v0 = e.vectors.column(1);
    const CVector v1 = e.vectors.column(2);
    CHECK(std::abs(vdot(v0, v1)) < 1e-8);
}

TEST_CASE("general_eig: residuals and char-poly oracle on random matrices") {
    std::mt19937_64 rng(777);
    std::uniform_int_distribution<std::size_t> size(2, 4);
    for (int trial = 0; trial < 120; ++trial) {
        const std::size_t n = size(rng);
        const ComplexMatrix m = oracle::random_matrix(rng, n);
        const auto e = general_eig(m);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(e.converged[i]);
            CVector r = m * e.vectors.column(i);
            vaxpy(-e.eigenvalues[i], e.vectors.column(i), r);
            CHECK(vnorm(r) <= 1e-8 * m.frobenius_norm());
        }
        const double mismatch =
            oracle::match_sets(e.eigenvalues, oracle::eigenvalues_by_char_poly(m));
        CHECK(mismatch < 1e-8);
    }
}

TEST_CASE("general_eig: sort order is descending by real then imaginary part") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 40; ++trial) {
        const auto vals = general_eigenvalues(oracle::random_matrix(rng, 6));
        for (std::size_t i = 1; i < vals.size(); ++i) {
            const bool ordered = vals[i - 1].real() > vals[i].real() ||
                                 (vals[i - 1].real() == vals[i].real() &&
                                  vals[i - 1].imag() >= vals[i].imag());
            CHECK(ordered);
        }
    }
}

TEST_CASE("hermitian_sqrt: identity and diagonal cases") {
    const auto s1 = hermitian_sqrt(ComplexMatrix::identity(3));
    ComplexMatrix d1 = s1;
    d1 -= ComplexMatrix::identity(3);
    CHECK(d1.max_abs() < 1e-13);

    const auto s2 = hermitian_sqrt(ComplexMatrix::diagonal({4.0, 9.0}));
    CHECK(std::abs(s2(0, 0) - 2.0) < 1e-13);
    CHECK(std::abs(s2(1, 1) - 3.0) < 1e-13);
    CHECK(std::abs(s2(0, 1)) < 1e-13);
}

TEST_CASE("hermitian_sqrt: squares back to the symmetric-phase metric") {
    const ComplexMatrix g = symmetric_metric(0.2);
    const ComplexMatrix s = hermitian_sqrt(g);
    ComplexMatrix diff = s * s;
    diff -= g;
    CHECK(diff.frobenius_norm() <= 1e-10 * g.frobenius_norm());
    CHECK(s.is_hermitian(1e-12));
}

TEST_CASE("hermitian_sqrt: rejects indefinite input") {
    CHECK_THROWS_AS(hermitian_sqrt(ComplexMatrix::diagonal({1.0, -1.0})), NotPositiveDefinite);
}

TEST_CASE("hermitian_sqrt: random positive definite property") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        const ComplexMatrix m = oracle::random_hpd(rng, 2 + trial % 7);
        const ComplexMatrix s = hermitian_sqrt(m);
        ComplexMatrix diff = s * s;
        diff -= m;
        CHECK(diff.frobenius_norm() <= 1e-10 * m.frobenius_norm());
    }
}

TEST_CASE("entrywise_abs_sum: basic values") {
    CHECK(entrywise_abs_sum(ComplexMatrix(3)) == 0.0);
    const ComplexMatrix sx{{0.0, 1.0}, {1.0, 0.0}};
    CHECK(entrywise_abs_sum(sx) == doctest::Approx(2.0));
    // (2 + 2*gamma)/sqrt(1-gamma^2) at gamma = 0.2.
    CHECK(entrywise_abs_sum(symmetric_metric(0.2)) ==
          doctest::Approx(2.4 / std::sqrt(0.96)).epsilon(1e-14));
}

TEST_CASE("lu: solve, inverse, determinant") {
    std::mt19937_64 rng(31);
    const ComplexMatrix m = oracle::random_matrix(rng, 5);
    const CVector b = oracle::random_state(rng, 5);
    const CVector x = lu_solve(lu_factor(m), b);
    CVector r = m * x;
    vaxpy(-1.0, b, r);
    CHECK(vnorm(r) < 1e-10);

    ComplexMatrix prod = m * lu_inverse(m);
    prod -= ComplexMatrix::identity(5);
    CHECK(prod.max_abs() < 1e-10);

    const cplx detd = lu_determinant(ComplexMatrix::diagonal({2.0, 3.0 * I}));
    CHECK(std::abs(detd - 6.0 * I) < 1e-14);
}
