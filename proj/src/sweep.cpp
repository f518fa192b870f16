#include "ptm/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <map>
#include <thread>

#include "ptm/errors.hpp"
#include "ptm/metric.hpp"
#include "ptm/observables.hpp"
#include "ptm/uncertainty.hpp"

namespace ptm {

namespace {

std::size_t worker_count(std::size_t jobs) {
    std::size_t n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("PTM_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap > 0) n = std::min<std::size_t>(n, static_cast<std::size_t>(cap));
    }
    return std::max<std::size_t>(1, std::min(n, jobs));
}

// Run fn(k) for k in [0, jobs) on a small pool; results must go to disjoint
// slots. The first exception, if any, is rethrown on the caller thread.
template <typename Fn>
void parallel_for(std::size_t jobs, Fn&& fn) {
    const std::size_t workers = worker_count(jobs);
    if (workers <= 1) {
        for (std::size_t k = 0; k < jobs; ++k) fn(k);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    const std::size_t chunk = (jobs + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(jobs, lo + chunk);
        pool.emplace_back([&, w, lo, hi] {
            try {
                for (std::size_t k = lo; k < hi; ++k) fn(k);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

bool contains_value(const std::vector<double>& grid, double target) {
    for (double v : grid) {
        if (std::isinf(target)) {
            if (std::isinf(v)) return true;
        } else if (std::abs(v - target) <= 1e-12) {
            return true;
        }
    }
    return false;
}

StateLabel majority_label(const std::vector<const SweepRow*>& rows) {
    std::size_t symmetric = 0;
    for (const SweepRow* r : rows)
        if (r->state_class == StateLabel::pt_symmetric_state) ++symmetric;
    return 2 * symmetric >= rows.size() ? StateLabel::pt_symmetric_state
                                        : StateLabel::pt_broken_state;
}

double kappa_at(const ModelSpec& spec, double gamma, double threshold) {
    ModelSpec at = spec;
    at.gamma = gamma;
    const ComplexMatrix h = lattice_hamiltonian(at);
    const BiorthogonalSystem sys = biorthogonal_system(h);
    const MetricOperator g = build_metric(sys);
    return goodness(h, g, threshold).kappa;
}

// Bisection of a boolean predicate over [lo, hi]; the predicate must differ
// at the ends. Returns the midpoint of the final bracket.
template <typename Pred>
double bisect(double lo, double hi, double tol, Pred&& pred, bool at_lo) {
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (pred(mid) == at_lo)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

std::vector<double> linear_grid(double lo, double hi, std::size_t count) {
    if (count == 0) throw IncompleteGrid("grids need at least one point");
    std::vector<double> g(count);
    if (count == 1) {
        g[0] = lo;
        return g;
    }
    const double step = (hi - lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) g[i] = lo + static_cast<double>(i) * step;
    g.back() = hi;
    return g;
}

std::vector<double> tangent_p_grid(std::size_t count) {
    if (count < 3) throw IncompleteGrid("the tangent grid needs at least three points");
    std::vector<double> g(count);
    const double step = (M_PI / 2.0) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i + 1 < count; ++i)
        g[i] = std::tan(static_cast<double>(i) * step);
    g[0] = 0.0;
    if (count % 2 == 1) g[count / 2] = 1.0; // the midpoint alpha = pi/4 exactly
    g.back() = std::numeric_limits<double>::infinity();
    return g;
}

std::vector<double> default_theta_grid(std::size_t count) {
    return linear_grid(0.0, 2.0 * M_PI, count);
}

std::vector<SweepRow> grid_sweep(const ComplexMatrix& a, const ComplexMatrix& b,
                                 const ComplexMatrix& h, InnerProduct inner,
                                 const std::vector<double>& p_grid,
                                 const std::vector<double>& theta_grid, double mus_tol) {
    if (p_grid.empty() || theta_grid.empty())
        throw IncompleteGrid("empty sweep grid");

    const BiorthogonalSystem sys = biorthogonal_system(h);
    const MetricOperator metric =
        inner == InnerProduct::g_metric ? build_metric(sys) : identity_metric(h.size());
    const ComplexMatrix parity = parity_op(h.size());

    const std::size_t nt = theta_grid.size();
    std::vector<SweepRow> rows(p_grid.size() * nt);
    parallel_for(rows.size(), [&](std::size_t k) {
        const double p = p_grid[k / nt];
        const double theta = theta_grid[k % nt];
        const CVector psi = generic_state(sys, p, theta, inner, &metric);
        const UncertaintyReport rep = uncertainty_sides(a, b, metric, psi, mus_tol);
        const StateClass cls = classify_state(psi, parity);
        rows[k] = SweepRow{p,       theta,   rep.eta,      rep.var_a, rep.var_b,
                           rep.lhs, rep.rhs, rep.lambda_g, rep.is_mus, cls.label};
    });
    return rows;
}

std::vector<MusLine> extract_mus_lines(const std::vector<SweepRow>& rows, double mus_tol) {
    if (rows.empty()) throw IncompleteGrid("no sweep rows");

    // Group by the exact grid values (each line shares one double).
    std::map<double, std::vector<const SweepRow*>> by_p, by_theta;
    for (const SweepRow& r : rows) {
        by_p[r.p].push_back(&r);
        by_theta[r.theta].push_back(&r);
    }

    std::vector<double> p_values, theta_values;
    for (const auto& [v, g] : by_p) p_values.push_back(v);
    for (const auto& [v, g] : by_theta) theta_values.push_back(v);
    if (p_values.size() * theta_values.size() != rows.size())
        throw IncompleteGrid("sweep rows do not form a full rectangular grid");
    for (double req : {0.0, 1.0, std::numeric_limits<double>::infinity()})
        if (!contains_value(p_values, req))
            throw IncompleteGrid("p grid must contain 0, 1 and inf");
    for (double req : {0.0, M_PI / 2.0, M_PI, 3.0 * M_PI / 2.0, 2.0 * M_PI})
        if (!contains_value(theta_values, req))
            throw IncompleteGrid("theta grid must contain the multiples of pi/2");

    std::vector<MusLine> lines;
    auto harvest = [&](const std::map<double, std::vector<const SweepRow*>>& groups,
                       LineAxis axis) {
        for (const auto& [value, members] : groups) {
            bool all_mus = true;
            double max_rhs = 0.0;
            for (const SweepRow* r : members) {
                all_mus = all_mus && r->mus && std::abs(r->eta - 1.0) <= mus_tol;
                max_rhs = std::max(max_rhs, r->rhs);
            }
            // A line of pure 0/0 saturations (eigenstates of one observable
            // at every theta) carries no information; skip it.
            if (all_mus && max_rhs > 1e-12)
                lines.push_back(MusLine{axis, value, majority_label(members), members.size()});
        }
    };
    harvest(by_p, LineAxis::p_axis);
    harvest(by_theta, LineAxis::theta_axis);
    return lines;
}

std::vector<ScanRow> kappa_scan(const ModelSpec& spec, const std::vector<double>& gamma_grid,
                                double kappa_threshold) {
    std::vector<ScanRow> rows(gamma_grid.size());
    parallel_for(rows.size(), [&](std::size_t k) {
        ModelSpec at = spec;
        at.gamma = gamma_grid[k];
        const ComplexMatrix h = lattice_hamiltonian(at);
        const PhaseVerdict verdict = phase_verdict(h);
        double kappa = std::numeric_limits<double>::quiet_NaN();
        try {
            kappa = kappa_at(spec, gamma_grid[k], kappa_threshold);
        } catch (const ExceptionalPoint&) {
        } catch (const IllConditioned&) {
        }
        rows[k] = ScanRow{gamma_grid[k], kappa, verdict.label};
    });
    return rows;
}

double find_ep(const ModelSpec& spec, double gamma_lo, double gamma_hi, double tol,
               double kappa_threshold) {
    if (!(tol > 0.0) || !(gamma_hi > gamma_lo))
        throw BadBracket("need gamma_lo < gamma_hi and tol > 0");

    auto kappa_good = [&](double gamma) {
        try {
            return kappa_at(spec, gamma, kappa_threshold) <= kappa_threshold;
        } catch (const ExceptionalPoint&) {
            return false;
        } catch (const IllConditioned&) {
            return false;
        }
    };
    const bool good_lo = kappa_good(gamma_lo);
    if (good_lo == kappa_good(gamma_hi))
        throw BadBracket("the good-observable verdict must differ at the bracket ends");

    const double by_kappa = bisect(gamma_lo, gamma_hi, tol, kappa_good, good_lo);

    auto spectrum_real = [&](double gamma) {
        ModelSpec at = spec;
        at.gamma = gamma;
        return phase_verdict(lattice_hamiltonian(at)).label == PhaseLabel::symmetric;
    };
    const bool real_lo = spectrum_real(gamma_lo);
    if (real_lo == spectrum_real(gamma_hi))
        throw BadBracket("the spectrum-reality verdict must differ at the bracket ends");
    const double by_spectrum = bisect(gamma_lo, gamma_hi, tol, spectrum_real, real_lo);

    if (std::abs(by_kappa - by_spectrum) > 10.0 * tol)
        throw Error("kappa and spectrum-reality transition estimates disagree");
    return by_kappa;
}

} // namespace ptm
