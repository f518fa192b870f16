#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <set>
#include <string>

#include "ptm/errors.hpp"
#include "ptm/models.hpp"
#include "ptm/sweep.hpp"

using namespace ptm;

namespace {

// Compact signature "p:0 p:1 p:inf t:0.5 ..." (theta in units of pi),
// sorted, for comparing extracted line sets against expectations.
std::set<std::string> line_signature(const std::vector<MusLine>& lines) {
    std::set<std::string> out;
    char buf[64];
    for (const MusLine& l : lines) {
        if (l.axis == LineAxis::p_axis) {
            if (std::isinf(l.value))
                out.insert("p:inf");
            else {
                std::snprintf(buf, sizeof buf, "p:%.3f", l.value);
                out.insert(buf);
            }
        } else {
            std::snprintf(buf, sizeof buf, "t:%.3f", l.value / M_PI);
            out.insert(buf);
        }
    }
    return out;
}

StateLabel class_of(const std::vector<MusLine>& lines, LineAxis axis, double value) {
    for (const MusLine& l : lines) {
        if (l.axis != axis) continue;
        if (std::isinf(value) ? std::isinf(l.value) : std::abs(l.value - value) < 1e-9)
            return l.state_class;
    }
    throw std::runtime_error("line not found");
}

} // namespace

TEST_CASE("grid helpers: endpoints are exact") {
    const auto p = tangent_p_grid(41);
    CHECK(p.front() == 0.0);
    CHECK(p[20] == 1.0);
    CHECK(std::isinf(p.back()));

    const auto t = default_theta_grid(41);
    CHECK(t.front() == 0.0);
    CHECK(t.back() == 2.0 * M_PI);
    CHECK(std::abs(t[10] - M_PI / 2.0) < 1e-12);
}

TEST_CASE("grid_sweep: Dirac product never violates for Hermitian observables") {
    for (double gamma : {0.2, 1.2}) {
        const auto rows = grid_sweep(pauli(PauliAxis::x), pauli(PauliAxis::z), h2(gamma),
                                     InnerProduct::dirac, tangent_p_grid(21),
                                     default_theta_grid(21));
        REQUIRE(rows.size() == 21 * 21);
        for (const SweepRow& r : rows) CHECK(r.eta >= 1.0 - 1e-9);
    }
}

TEST_CASE("grid_sweep: metric product breaks the bound for non-good observables") {
    const auto rows = grid_sweep(pauli(PauliAxis::x), pauli(PauliAxis::z), h2(0.2),
                                 InnerProduct::g_metric, tangent_p_grid(21),
                                 default_theta_grid(21));
    double min_eta = HUGE_VAL;
    for (const SweepRow& r : rows) min_eta = std::min(min_eta, r.eta);
    CHECK(min_eta < 1.0);
}

TEST_CASE("grid_sweep: good pairs hold everywhere under the metric") {
    const auto rows = grid_sweep(h2(0.2), pauli(PauliAxis::y), h2(0.2),
                                 InnerProduct::g_metric, tangent_p_grid(21),
                                 default_theta_grid(21));
    for (const SweepRow& r : rows) CHECK(r.eta >= 1.0 - 1e-9);
}

TEST_CASE("grid_sweep: propagates the exceptional point") {
    CHECK_THROWS_AS(grid_sweep(pauli(PauliAxis::x), pauli(PauliAxis::z), h2(1.0),
                               InnerProduct::dirac, tangent_p_grid(5), default_theta_grid(5)),
                    ExceptionalPoint);
}

TEST_CASE("extract_mus_lines: Dirac symmetric phase shows six lines") {
    const auto rows = grid_sweep(pauli(PauliAxis::x), pauli(PauliAxis::z), h2(0.2),
                                 InnerProduct::dirac, tangent_p_grid(41),
                                 default_theta_grid(41));
    const auto lines = extract_mus_lines(rows, 1e-6);
    CHECK(line_signature(lines) ==
          std::set<std::string>{"p:0.000", "p:1.000", "p:inf", "t:0.000", "t:1.000", "t:2.000"});
    CHECK(class_of(lines, LineAxis::p_axis, 0.0) == StateLabel::pt_symmetric_state);
    CHECK(class_of(lines, LineAxis::p_axis, 1.0) == StateLabel::pt_broken_state);
    CHECK(class_of(lines, LineAxis::theta_axis, 0.0) == StateLabel::pt_symmetric_state);
}

TEST_CASE("extract_mus_lines: Dirac broken phase shows five lines") {
    const auto rows = grid_sweep(pauli(PauliAxis::x), pauli(PauliAxis::z), h2(1.2),
                                 InnerProduct::dirac, tangent_p_grid(41),
                                 default_theta_grid(41));
    const auto lines = extract_mus_lines(rows, 1e-6);
    CHECK(line_signature(lines) ==
          std::set<std::string>{"p:0.000", "p:1.000", "p:inf", "t:0.500", "t:1.500"});
    CHECK(class_of(lines, LineAxis::p_axis, 0.0) == StateLabel::pt_broken_state);
    CHECK(class_of(lines, LineAxis::p_axis, 1.0) == StateLabel::pt_symmetric_state);
    CHECK(class_of(lines, LineAxis::theta_axis, M_PI / 2.0) == StateLabel::pt_broken_state);
}

TEST_CASE("extract_mus_lines: good pair under the metric, symmetric phase") {
    const auto rows = grid_sweep(h2(0.2), pauli(PauliAxis::y), h2(0.2),
                                 InnerProduct::g_metric, tangent_p_grid(41),
                                 default_theta_grid(41));
    const auto lines = extract_mus_lines(rows, 1e-6);
    CHECK(line_signature(lines) ==
          std::set<std::string>{"p:1.000", "t:0.500", "t:1.500"});
    CHECK(class_of(lines, LineAxis::p_axis, 1.0) == StateLabel::pt_broken_state);
    // Along theta = pi/2 only the eigenvector endpoints are PT eigenstates,
    // so the collinearity majority is broken even though lambda_G < 1 on the
    // whole line.
    CHECK(class_of(lines, LineAxis::theta_axis, M_PI / 2.0) == StateLabel::pt_broken_state);
    CHECK(class_of(lines, LineAxis::theta_axis, 3.0 * M_PI / 2.0) == StateLabel::pt_broken_state);
}

TEST_CASE("extract_mus_lines: good pair under the metric, broken phase") {
    const auto rows = grid_sweep(h2(1.0 / 1.2), pauli(PauliAxis::y), h2(1.2),
                                 InnerProduct::g_metric, tangent_p_grid(41),
                                 default_theta_grid(41));
    const auto lines = extract_mus_lines(rows, 1e-6);
    CHECK(line_signature(lines) ==
          std::set<std::string>{"p:0.000", "p:inf", "t:0.000", "t:0.500", "t:1.000",
                                "t:1.500", "t:2.000"});
    // PT maps each constant-theta line onto itself by p <-> 1/p, but only
    // the p = 1 crossing states are PT eigenstates; every theta line is
    // therefore broken-majority under the collinearity classifier.
    for (double t : {0.0, M_PI / 2.0, M_PI, 3.0 * M_PI / 2.0, 2.0 * M_PI})
        CHECK(class_of(lines, LineAxis::theta_axis, t) == StateLabel::pt_broken_state);
    CHECK(class_of(lines, LineAxis::p_axis, 0.0) == StateLabel::pt_broken_state);
    CHECK(class_of(lines, LineAxis::p_axis, std::numeric_limits<double>::infinity()) ==
          StateLabel::pt_broken_state);
}

TEST_CASE("extract_mus_lines: requires the anchor grid points") {
    const auto rows = grid_sweep(pauli(PauliAxis::x), pauli(PauliAxis::z), h2(0.2),
                                 InnerProduct::dirac, linear_grid(0.0, 2.0, 5),
                                 default_theta_grid(9));
    CHECK_THROWS_AS(extract_mus_lines(rows, 1e-6), IncompleteGrid);
}

TEST_CASE("kappa_scan: lattice A around its transition") {
    const ModelSpec spec{ModelKind::lattice_a, 10, 0.0};
    const auto rows = kappa_scan(spec, {0.5, 1.5});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].kappa <= 1e-10);
    CHECK(rows[0].phase == PhaseLabel::symmetric);
    CHECK(rows[1].kappa > 1e-3);
    CHECK(rows[1].phase == PhaseLabel::broken);
}

TEST_CASE("kappa_scan: lattice B stays good below its transition") {
    const ModelSpec spec{ModelKind::lattice_b, 10, 0.0};
    const auto rows = kappa_scan(spec, {0.1, 0.2, 0.3});
    for (const ScanRow& r : rows) {
        CHECK(r.kappa <= 1e-10);
        CHECK(r.phase == PhaseLabel::symmetric);
    }
}

TEST_CASE("kappa_scan: the exceptional point itself yields a sentinel row") {
    const ModelSpec spec{ModelKind::h2, 2, 0.0};
    const auto rows = kappa_scan(spec, {0.5, 1.0});
    CHECK(rows[0].kappa <= 1e-10);
    CHECK(std::isnan(rows[1].kappa));
    CHECK(rows[1].phase == PhaseLabel::exceptional);
}

TEST_CASE("find_ep: two-level and lattice A transitions at 1") {
    const ModelSpec dimer{ModelKind::h2, 2, 0.0};
    CHECK(std::abs(find_ep(dimer, 0.5, 1.5, 1e-3) - 1.0) <= 1e-3);

    const ModelSpec lattice{ModelKind::lattice_a, 10, 0.0};
    CHECK(std::abs(find_ep(lattice, 0.5, 1.5, 1e-3) - 1.0) <= 1e-3);
}

TEST_CASE("find_ep: lattice B bracket from the scan range") {
    const ModelSpec spec{ModelKind::lattice_b, 10, 0.0};
    const double ep = find_ep(spec, 0.2, 0.8, 1e-3);
    CHECK(ep > 0.2);
    CHECK(ep < 0.8);
}

TEST_CASE("find_ep: rejects a bracket that does not straddle the transition") {
    const ModelSpec spec{ModelKind::lattice_a, 10, 0.0};
    CHECK_THROWS_AS(find_ep(spec, 0.2, 0.8, 1e-3), BadBracket);
    CHECK_THROWS_AS(find_ep(spec, 1.5, 0.5, 1e-3), BadBracket);
}

TEST_CASE("sweeps are deterministic and independent of the worker count") {
    const auto run = [] {
        return grid_sweep(pauli(PauliAxis::x), pauli(PauliAxis::z), h2(0.2),
                          InnerProduct::g_metric, tangent_p_grid(15), default_theta_grid(17));
    };
    setenv("PTM_THREADS", "1", 1);
    const auto serial = run();
    setenv("PTM_THREADS", "4", 1);
    const auto parallel = run();
    unsetenv("PTM_THREADS");
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].eta == parallel[i].eta);
        CHECK(serial[i].lhs == parallel[i].lhs);
        CHECK(serial[i].rhs == parallel[i].rhs);
        CHECK(serial[i].mus == parallel[i].mus);
    }
}
