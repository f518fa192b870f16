#include "ptm/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ptm/errors.hpp"
#include "ptm/io.hpp"
#include "ptm/linalg.hpp"
#include "ptm/metric.hpp"
#include "ptm/models.hpp"
#include "ptm/observables.hpp"
#include "ptm/spectral.hpp"
#include "ptm/sweep.hpp"
#include "ptm/uncertainty.hpp"

namespace ptm {

namespace {

constexpr const char* kVersion = "0.1.0";

struct Options {
    std::string command;
    std::string model = "h2";
    std::string gamma = "0";
    std::size_t n = 10;
    std::string inner = "g";
    std::vector<std::string> obs;
    std::string p_grid = "tan:201";
    std::string theta_grid = "0:6.2831853071795865:201";
    double tol_kappa = 1e-8;
    double tol_mus = 1e-6;
    double tol_ep = 1e-3;
    double tol_imag = -1.0; // negative: scale-based default
    double tol_gap = -1.0;
    bool find_ep = false;
    std::string bracket;
    std::string out = "-";
    std::string format = "csv";
};

double parse_number(const std::string& text, const char* what) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || text.empty())
        throw ParseError(std::string("cannot parse ") + what + ": '" + text + "'");
    return v;
}

// "lo:hi:step" inclusive of hi up to rounding.
std::vector<double> parse_range(const std::string& spec) {
    const auto c1 = spec.find(':');
    const auto c2 = spec.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw ParseError("range must look like lo:hi:step, got '" + spec + "'");
    const double lo = parse_number(spec.substr(0, c1), "a range start");
    const double hi = parse_number(spec.substr(c1 + 1, c2 - c1 - 1), "a range end");
    const double step = parse_number(spec.substr(c2 + 1), "a range step");
    if (!(step > 0.0) || hi < lo) throw ParseError("range needs lo <= hi and step > 0");
    std::vector<double> grid;
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) grid.push_back(lo + static_cast<double>(i) * step);
    return grid;
}

bool is_range(const std::string& spec) { return spec.find(':') != std::string::npos; }

std::vector<double> parse_p_grid(const std::string& spec) {
    if (spec.rfind("tan:", 0) == 0) {
        const double count = parse_number(spec.substr(4), "a grid count");
        return tangent_p_grid(static_cast<std::size_t>(count));
    }
    const auto c1 = spec.find(':');
    const auto c2 = spec.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw ParseError("p grid must be tan:count or lo:hi:count, got '" + spec + "'");
    const double lo = parse_number(spec.substr(0, c1), "a grid start");
    const double hi = parse_number(spec.substr(c1 + 1, c2 - c1 - 1), "a grid end");
    const double count = parse_number(spec.substr(c2 + 1), "a grid count");
    return linear_grid(lo, hi, static_cast<std::size_t>(count));
}

std::vector<double> parse_theta_grid(const std::string& spec) {
    const auto c1 = spec.find(':');
    const auto c2 = spec.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw ParseError("theta grid must be lo:hi:count, got '" + spec + "'");
    const double lo = parse_number(spec.substr(0, c1), "a grid start");
    const double hi = parse_number(spec.substr(c1 + 1, c2 - c1 - 1), "a grid end");
    const double count = parse_number(spec.substr(c2 + 1), "a grid count");
    return linear_grid(lo, hi, static_cast<std::size_t>(count));
}

struct ResolvedModel {
    ModelSpec spec;        // kind = custom for file-backed models
    ComplexMatrix matrix;  // built at a single gamma (scans rebuild per point)
    double gamma = 0.0;
    bool from_file = false;
};

bool builtin_model(const std::string& name) {
    return name == "h2" || name == "hA" || name == "hB";
}

ModelKind kind_of(const std::string& name) {
    if (name == "h2") return ModelKind::h2;
    if (name == "hA") return ModelKind::lattice_a;
    if (name == "hB") return ModelKind::lattice_b;
    return ModelKind::custom;
}

ResolvedModel resolve_model(const Options& opt, double gamma) {
    ResolvedModel m;
    if (builtin_model(opt.model)) {
        m.spec = ModelSpec{kind_of(opt.model), opt.model == "h2" ? 2 : opt.n, gamma};
        m.gamma = gamma;
        m.matrix = lattice_hamiltonian(m.spec);
    } else {
        m.spec.kind = ModelKind::custom;
        if (!std::filesystem::exists(opt.model))
            throw ParseError("no such model: '" + opt.model + "' (not a builtin, not a file)");
        m.matrix = parse_matrix_file(opt.model);
        m.from_file = true;
        if (!m.matrix.all_finite()) throw ParseError(opt.model + ": non-finite entries");
    }
    return m;
}

ComplexMatrix resolve_observable(const std::string& name, const ResolvedModel& model) {
    const std::size_t n = model.matrix.size();
    auto need_two_level = [&](const char* what) {
        if (n != 2)
            throw DimensionMismatch(std::string(what) + " is two-level but the model has " +
                                    std::to_string(n) + " sites");
    };
    if (name == "sigma_x") { need_two_level("sigma_x"); return pauli(PauliAxis::x); }
    if (name == "sigma_y") { need_two_level("sigma_y"); return pauli(PauliAxis::y); }
    if (name == "sigma_z") { need_two_level("sigma_z"); return pauli(PauliAxis::z); }
    if (name == "hamiltonian") return model.matrix;
    if (name == "h_inv_gamma") {
        need_two_level("h_inv_gamma");
        if (model.from_file || model.gamma == 0.0)
            throw OutOfDomain("h_inv_gamma needs a builtin two-level model with gamma != 0");
        return h2(1.0 / model.gamma);
    }
    if (!std::filesystem::exists(name))
        throw ParseError("no such observable: '" + name + "' (not a builtin, not a file)");
    ComplexMatrix m = parse_matrix_file(name);
    if (m.size() != n)
        throw DimensionMismatch(name + ": observable is " + std::to_string(m.size()) +
                                "-dimensional but the model has " + std::to_string(n) + " sites");
    return m;
}

InnerProduct inner_of(const std::string& name) {
    if (name == "dirac") return InnerProduct::dirac;
    if (name == "g") return InnerProduct::g_metric;
    throw ParseError("--inner must be dirac or g, got '" + name + "'");
}

PhaseVerdict verdict_for(const Options& opt, const ComplexMatrix& h) {
    const double scale = h.frobenius_norm();
    const double ti = opt.tol_imag >= 0.0 ? opt.tol_imag : 1e-9 * scale;
    const double tg = opt.tol_gap >= 0.0 ? opt.tol_gap : 1e-10 * scale;
    return phase_verdict(h, ti, tg);
}

Metadata base_metadata(const Options& opt) {
    Metadata meta;
    meta.emplace_back("tool", "ptmetric");
    meta.emplace_back("version", kVersion);
    meta.emplace_back("command", opt.command);
    meta.emplace_back("model", opt.model);
    if (builtin_model(opt.model) && opt.model != "h2")
        meta.emplace_back("n", std::to_string(opt.n));
    meta.emplace_back("gamma", opt.gamma);
    return meta;
}

void emit(const Options& opt, const Table& table, const Metadata& meta) {
    const std::string content =
        opt.format == "json" ? to_json(table, meta) : to_csv(table, meta);
    if (opt.out == "-")
        std::fwrite(content.data(), 1, content.size(), stdout);
    else
        atomic_write_file(opt.out, content);
}

double single_gamma(const Options& opt) {
    if (is_range(opt.gamma))
        throw ParseError("this command takes a single --gamma, not a range");
    return parse_number(opt.gamma, "--gamma");
}

// -- commands ----------------------------------------------------------------

void cmd_eig(const Options& opt) {
    const ResolvedModel model = resolve_model(opt, single_gamma(opt));
    const CVector vals = general_eigenvalues(model.matrix);
    const PhaseVerdict verdict = verdict_for(opt, model.matrix);

    Table t;
    t.columns = {"index", "re", "im"};
    for (std::size_t i = 0; i < vals.size(); ++i)
        t.rows.push_back({std::to_string(i), format_double(vals[i].real()),
                          format_double(vals[i].imag())});
    Metadata meta = base_metadata(opt);
    meta.emplace_back("phase", to_string(verdict.label));
    meta.emplace_back("max_imag", format_double(verdict.max_imag));
    meta.emplace_back("min_gap", format_double(verdict.min_gap));
    emit(opt, t, meta);
}

void cmd_metric(const Options& opt) {
    const ResolvedModel model = resolve_model(opt, single_gamma(opt));
    const BiorthogonalSystem sys = biorthogonal_system(model.matrix);
    const MetricOperator g = build_metric(sys);

    Table t;
    t.columns = {"row", "col", "re", "im"};
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j)
            t.rows.push_back({std::to_string(i), std::to_string(j),
                              format_double(g.matrix(i, j).real()),
                              format_double(g.matrix(i, j).imag())});
    Metadata meta = base_metadata(opt);
    meta.emplace_back("min_eigenvalue", format_double(g.min_eigenvalue));
    meta.emplace_back("condition_number", format_double(g.condition_number));
    meta.emplace_back("conditioning", format_double(sys.conditioning));
    emit(opt, t, meta);
}

void cmd_check_obs(const Options& opt) {
    if (opt.obs.empty()) throw ParseError("check-obs needs at least one --obs");
    const ResolvedModel model = resolve_model(opt, single_gamma(opt));
    const MetricOperator g = build_metric(biorthogonal_system(model.matrix));

    Table t;
    t.columns = {"obs", "kappa", "verdict"};
    for (const std::string& name : opt.obs) {
        const GoodnessReport rep = goodness(resolve_observable(name, model), g, opt.tol_kappa);
        t.rows.push_back({name, format_double(rep.kappa), rep.verdict ? "1" : "0"});
    }
    Metadata meta = base_metadata(opt);
    meta.emplace_back("tol_kappa", format_double(opt.tol_kappa));
    emit(opt, t, meta);
}

std::vector<SweepRow> run_sweep(const Options& opt, const ResolvedModel& model) {
    if (model.matrix.size() != 2)
        throw DimensionMismatch("sweeps are defined for two-level models");
    if (opt.obs.size() != 2) throw ParseError("sweeps need exactly two --obs");
    const ComplexMatrix a = resolve_observable(opt.obs[0], model);
    const ComplexMatrix b = resolve_observable(opt.obs[1], model);
    return grid_sweep(a, b, model.matrix, inner_of(opt.inner), parse_p_grid(opt.p_grid),
                      parse_theta_grid(opt.theta_grid), opt.tol_mus);
}

Metadata sweep_metadata(const Options& opt) {
    Metadata meta = base_metadata(opt);
    meta.emplace_back("inner", opt.inner);
    meta.emplace_back("obs_a", opt.obs.size() > 0 ? opt.obs[0] : "");
    meta.emplace_back("obs_b", opt.obs.size() > 1 ? opt.obs[1] : "");
    meta.emplace_back("p_grid", opt.p_grid);
    meta.emplace_back("theta_grid", opt.theta_grid);
    meta.emplace_back("tol_mus", format_double(opt.tol_mus));
    return meta;
}

void cmd_sweep(const Options& opt) {
    const ResolvedModel model = resolve_model(opt, single_gamma(opt));
    emit(opt, sweep_table(run_sweep(opt, model)), sweep_metadata(opt));
}

void cmd_mus(const Options& opt) {
    const ResolvedModel model = resolve_model(opt, single_gamma(opt));
    const auto lines = extract_mus_lines(run_sweep(opt, model), opt.tol_mus);
    emit(opt, mus_line_table(lines), sweep_metadata(opt));
}

void cmd_ep_scan(const Options& opt) {
    if (!builtin_model(opt.model))
        throw ParseError("ep-scan needs a builtin model (h2, hA or hB)");
    if (!is_range(opt.gamma))
        throw ParseError("ep-scan needs --gamma lo:hi:step");
    const std::vector<double> grid = parse_range(opt.gamma);
    const ModelSpec spec{kind_of(opt.model), opt.model == "h2" ? 2 : opt.n, 0.0};
    const std::vector<ScanRow> rows = kappa_scan(spec, grid, opt.tol_kappa);

    Metadata meta = base_metadata(opt);
    meta.emplace_back("tol_kappa", format_double(opt.tol_kappa));
    if (opt.find_ep) {
        double lo = grid.front(), hi = grid.back();
        if (!opt.bracket.empty()) {
            const auto c = opt.bracket.find(':');
            if (c == std::string::npos)
                throw ParseError("--bracket must look like lo:hi");
            lo = parse_number(opt.bracket.substr(0, c), "a bracket start");
            hi = parse_number(opt.bracket.substr(c + 1), "a bracket end");
        }
        const double ep = find_ep(spec, lo, hi, opt.tol_ep, opt.tol_kappa);
        meta.emplace_back("gamma_ep", format_double(ep));
        meta.emplace_back("tol_ep", format_double(opt.tol_ep));
    }
    emit(opt, scan_table(rows), meta);
}

void add_common_options(CLI::App* cmd, Options& opt, bool with_grids) {
    cmd->add_option("--model", opt.model, "h2, hA, hB, or a matrix JSON file");
    cmd->add_option("--gamma", opt.gamma, "gain/loss strength (scans: lo:hi:step)");
    cmd->add_option("--n", opt.n, "lattice site count (even, >= 4)");
    cmd->add_option("--out", opt.out, "output path ('-' for stdout)");
    cmd->add_option("--format", opt.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--tol-kappa", opt.tol_kappa, "good-observable threshold on kappa");
    cmd->add_option("--tol-imag", opt.tol_imag, "phase verdict: imaginary-part tolerance");
    cmd->add_option("--tol-gap", opt.tol_gap, "phase verdict: eigenvalue-gap tolerance");
    if (with_grids) {
        cmd->add_option("--inner", opt.inner, "inner product: dirac or g")
            ->check(CLI::IsMember({"dirac", "g"}));
        cmd->add_option("--obs", opt.obs, "observable name or matrix file (repeatable)");
        cmd->add_option("--p-grid", opt.p_grid, "tan:count or lo:hi:count");
        cmd->add_option("--theta-grid", opt.theta_grid, "lo:hi:count");
        cmd->add_option("--tol-mus", opt.tol_mus, "minimum-uncertainty tolerance on |eta-1|");
    }
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    Options opt;
    CLI::App app{"ptmetric: metric operators, good observables and uncertainty relations\n"
                 "for PT-invariant non-Hermitian models"};
    app.require_subcommand(1);

    CLI::App* eig = app.add_subcommand("eig", "eigenvalues and phase verdict of a model");
    add_common_options(eig, opt, false);
    CLI::App* metric = app.add_subcommand("metric", "build the metric operator of a model");
    add_common_options(metric, opt, false);
    CLI::App* check = app.add_subcommand("check-obs", "kappa test for observables");
    add_common_options(check, opt, false);
    check->add_option("--obs", opt.obs, "observable name or matrix file (repeatable)");
    CLI::App* sweep = app.add_subcommand("sweep", "uncertainty relation over a (p, theta) grid");
    add_common_options(sweep, opt, true);
    CLI::App* mus = app.add_subcommand("mus", "extract minimum-uncertainty lines from a grid");
    add_common_options(mus, opt, true);
    CLI::App* ep = app.add_subcommand("ep-scan", "kappa scan over gamma; optional EP bisection");
    add_common_options(ep, opt, false);
    ep->add_flag("--find-ep", opt.find_ep, "bisect for the exceptional point");
    ep->add_option("--bracket", opt.bracket, "bisection bracket lo:hi (default: range ends)");
    ep->add_option("--tol-ep", opt.tol_ep, "bisection tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (eig->parsed()) { opt.command = "eig"; cmd_eig(opt); }
        else if (metric->parsed()) { opt.command = "metric"; cmd_metric(opt); }
        else if (check->parsed()) { opt.command = "check-obs"; cmd_check_obs(opt); }
        else if (sweep->parsed()) { opt.command = "sweep"; cmd_sweep(opt); }
        else if (mus->parsed()) { opt.command = "mus"; cmd_mus(opt); }
        else if (ep->parsed()) { opt.command = "ep-scan"; cmd_ep_scan(opt); }
        return 0;
    } catch (const ParseError& e) {
        std::fprintf(stderr, "ptmetric: %s\n", e.what());
        return 2;
    } catch (const NotSquare& e) {
        std::fprintf(stderr, "ptmetric: %s\n", e.what());
        return 2;
    } catch (const BadDimension& e) {
        std::fprintf(stderr, "ptmetric: %s\n", e.what());
        return 2;
    } catch (const DimensionMismatch& e) {
        std::fprintf(stderr, "ptmetric: %s\n", e.what());
        return 2;
    } catch (const IncompleteGrid& e) {
        std::fprintf(stderr, "ptmetric: %s\n", e.what());
        return 2;
    } catch (const MissingMetric& e) {
        std::fprintf(stderr, "ptmetric: %s\n", e.what());
        return 2;
    } catch (const OutOfDomain& e) {
        std::fprintf(stderr, "ptmetric: %s\n", e.what());
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "ptmetric: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "ptmetric: unexpected error: %s\n", e.what());
        return 1;
    }
}

} // namespace ptm
