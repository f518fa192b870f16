#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "ptm/errors.hpp"
#include "ptm/metric.hpp"
#include "ptm/models.hpp"
#include "ptm/observables.hpp"
#include "ptm/uncertainty.hpp"

using namespace ptm;

namespace {

const cplx I(0.0, 1.0);

CVector appendix_state(const BiorthogonalSystem& sys, const MetricOperator& g) {
    return generic_state(sys, 1.0, M_PI / 2.0, InnerProduct::g_metric, &g);
}

} // namespace

TEST_CASE("g_variance: eigenstate of a Hermitian operator has none") {
    const auto g = identity_metric(2);
    const CVector up{1.0, 0.0};
    CHECK(std::abs(g_variance(pauli(PauliAxis::z), g, up)) < 1e-14);
}

TEST_CASE("g_variance: sigma_z on the balanced superposition") {
    const auto g = identity_metric(2);
    const CVector plus{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
    CHECK(g_variance(pauli(PauliAxis::z), g, plus) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("g_variance: Hamiltonian variance on the appendix state") {
    const double gamma = 0.2;
    const auto sys = biorthogonal_system(h2(gamma));
    const auto g = build_metric(sys);
    const CVector psi = appendix_state(sys, g);
    CHECK(g_variance(h2(gamma), g, psi) == doctest::Approx(1.0 - gamma * gamma).epsilon(1e-10));
}

TEST_CASE("g_variance: good observables have a real variance") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    const double gamma = 0.5;
    const auto g = closed_form_metric_2x2(gamma, PhaseLabel::symmetric);
    for (int trial = 0; trial < 40; ++trial) {
        const ComplexMatrix o =
            good_observable_2x2(gamma, PhaseLabel::symmetric, dist(rng), dist(rng));
        const CVector psi = g_normalize(g, oracle::random_state(rng, 2));
        const GMoments m = g_moments(o, g, psi);
        CHECK(std::abs((m.second - m.mean * m.mean).imag()) <= 1e-9);
    }
}

TEST_CASE("g_variance: rejects unnormalized states") {
    const auto g = identity_metric(2);
    CHECK_THROWS_AS(g_variance(pauli(PauliAxis::z), g, CVector{1.0, 1.0}), NotNormalized);
}

TEST_CASE("uncertainty_sides: Dirac reduction matches the textbook evaluation") {
    std::mt19937_64 rng(1234);
    const auto g = identity_metric(2);
    for (int trial = 0; trial < 200; ++trial) {
        const ComplexMatrix a = oracle::random_hermitian(rng, 2);
        const ComplexMatrix b = oracle::random_hermitian(rng, 2);
        CVector psi = oracle::random_state(rng, 2);
        const double nn = vnorm(psi);
        vscale(psi, 1.0 / nn);

        const UncertaintyReport rep = uncertainty_sides(a, b, g, psi);
        const oracle::DiracUncertainty ref = oracle::textbook_uncertainty(a, b, psi);
        CHECK(rep.var_a == doctest::Approx(ref.var_a).epsilon(1e-12));
        CHECK(rep.var_b == doctest::Approx(ref.var_b).epsilon(1e-12));
        CHECK(rep.lhs == doctest::Approx(ref.lhs).epsilon(1e-12));
        CHECK(rep.rhs == doctest::Approx(ref.rhs).epsilon(1e-12));
        CHECK(rep.lhs >= ref.rhs - 1e-9 * std::max(1.0, ref.rhs));
    }
}

TEST_CASE("uncertainty_sides: good pairs never violate the bound") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 1000; ++trial) {
        const bool symmetric = trial % 2 == 0;
        const double gamma = symmetric ? 0.15 + 0.08 * (trial % 10) : 1.1 + 0.09 * (trial % 10);
        const ComplexMatrix h = h2(gamma);
        const auto g = build_metric(biorthogonal_system(h));
        const ComplexMatrix a = symmetric ? h : h2(1.0 / gamma);
        const ComplexMatrix b = pauli(PauliAxis::y);
        const CVector psi = g_normalize(g, oracle::random_state(rng, 2));
        const UncertaintyReport rep = uncertainty_sides(a, b, g, psi);
        CHECK(rep.lhs - rep.rhs >= -1e-9 * std::max(1.0, rep.rhs));
    }
}

TEST_CASE("uncertainty_sides: non-good Hermitian pairs do violate under the metric") {
    const auto sys = biorthogonal_system(h2(0.2));
    const auto g = build_metric(sys);
    double min_eta = HUGE_VAL;
    for (double p : {0.3, 0.7, 1.0, 1.8}) {
        for (int k = 1; k < 16; ++k) {
            const double theta = 2.0 * M_PI * k / 16.0;
            const CVector psi = generic_state(sys, p, theta, InnerProduct::g_metric, &g);
            const UncertaintyReport rep =
                uncertainty_sides(pauli(PauliAxis::x), pauli(PauliAxis::z), g, psi);
            min_eta = std::min(min_eta, rep.eta);
        }
    }
    CHECK(min_eta < 1.0);
}

TEST_CASE("uncertainty_sides: saturation kills the symmetrized cross term") {
    const double gamma = 0.2;
    const auto sys = biorthogonal_system(h2(gamma));
    const auto g = build_metric(sys);
    const ComplexMatrix a = h2(gamma);
    const ComplexMatrix b = pauli(PauliAxis::y);
    for (double theta : {M_PI / 6, M_PI / 2, 1.1, 2.9, 4.0}) {
        const CVector psi = generic_state(sys, 1.0, theta, InnerProduct::g_metric, &g);
        const UncertaintyReport rep = uncertainty_sides(a, b, g, psi);
        REQUIRE(std::abs(rep.eta - 1.0) < 1e-9);
        const cplx cross = g_inner(g, psi, vadd(a * (b * psi), b * (a * psi)));
        const cplx r = g_inner(g, psi, a * psi);
        const cplx p = g_inner(g, psi, b * psi);
        CHECK(std::abs(cross - 2.0 * r.real() * p.real()) < 1e-8);
    }
}

TEST_CASE("mus_test: the appendix state is a minimum-uncertainty state") {
    const double gamma = 0.2;
    const auto sys = biorthogonal_system(h2(gamma));
    const auto g = build_metric(sys);
    const CVector psi = appendix_state(sys, g);
    const MusResult r = mus_test(h2(gamma), pauli(PauliAxis::y), g, psi, 1e-6);
    CHECK(r.is_mus);
    CHECK(r.residual < 1e-10);
    // lambda_G equals the eigenvalue magnitude sqrt(1 - gamma^2).
    CHECK(r.lambda_g == doctest::Approx(std::sqrt(1.0 - gamma * gamma)).epsilon(1e-9));
}

TEST_CASE("mus_test: eigenstate of A with lambda = 0") {
    const auto g = identity_metric(2);
    const CVector up{1.0, 0.0};
    const MusResult r = mus_test(pauli(PauliAxis::z), pauli(PauliAxis::x), g, up, 1e-8);
    CHECK(r.lambda_g == 0.0);
    CHECK(r.residual < 1e-14);
    CHECK(r.is_mus);
}

TEST_CASE("mus_test: the whole balanced line saturates with the matched sign") {
    // (A + i s lambda_G B) psi = (r + i s lambda_G p) psi holds with
    // lambda_G |sin theta| equal to the eigenvalue magnitude; at theta with
    // sin theta = 0 the state collapses to an eigenstate of B.
    const double gamma = 0.2;
    const double eps = std::sqrt(1.0 - gamma * gamma);
    const auto sys = biorthogonal_system(h2(gamma));
    const auto g = build_metric(sys);
    const ComplexMatrix a = h2(gamma);
    const ComplexMatrix b = pauli(PauliAxis::y);

    for (double theta : {M_PI / 4, M_PI / 2, 2.2, 3.9, 5.5}) {
        const CVector psi = generic_state(sys, 1.0, theta, InnerProduct::g_metric, &g);
        const MusResult r = mus_test(a, b, g, psi, 1e-6);
        CHECK(r.is_mus);
        CHECK(r.lambda_g * std::abs(std::sin(theta)) == doctest::Approx(eps).epsilon(1e-8));
        // The minimizing sign satisfies eps = -s lambda_G sin(theta).
        CHECK(-r.sign * r.lambda_g * std::sin(theta) == doctest::Approx(eps).epsilon(1e-8));
    }

    const CVector at_zero = generic_state(sys, 1.0, 0.0, InnerProduct::g_metric, &g);
    CHECK_THROWS_AS(mus_test(a, b, g, at_zero, 1e-6), DegenerateVariance);
}

TEST_CASE("mus_test: states off the saturating lines are rejected") {
    const double gamma = 0.2;
    const auto sys = biorthogonal_system(h2(gamma));
    const auto g = build_metric(sys);
    for (double p : {0.4, 2.5}) {
        const CVector psi = generic_state(sys, p, M_PI / 3.0, InnerProduct::g_metric, &g);
        const MusResult r = mus_test(h2(gamma), pauli(PauliAxis::y), g, psi, 1e-6);
        CHECK_FALSE(r.is_mus);
        const UncertaintyReport rep = uncertainty_sides(h2(gamma), pauli(PauliAxis::y), g, psi);
        CHECK(rep.eta > 1.0 + 1e-6);
    }
}

TEST_CASE("minimum uncertainty coincides with eta = 1 on grid rows") {
    const double gamma = 0.2;
    const auto sys = biorthogonal_system(h2(gamma));
    const auto g = build_metric(sys);
    const ComplexMatrix a = h2(gamma);
    const ComplexMatrix b = pauli(PauliAxis::y);
    for (double p : {0.5, 1.0, 1.7}) {
        for (int k = 0; k <= 12; ++k) {
            const double theta = 2.0 * M_PI * k / 12.0;
            const CVector psi = generic_state(sys, p, theta, InnerProduct::g_metric, &g);
            const UncertaintyReport rep = uncertainty_sides(a, b, g, psi);
            CHECK((std::abs(rep.eta - 1.0) <= 1e-6) == (rep.mus_residual <= 1e-6));
        }
    }
}
