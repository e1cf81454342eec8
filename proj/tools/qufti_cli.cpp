// qufti — variance bounds for multi-phase Fourier interferometry.
//
// One verb per study artifact: closed-form quantum bounds (qcrb), quantum
// information matrices (qfi), classical information at a phase setting
// (cfi), multistart phase optimization (optimize), the strategy comparison
// across device sizes (fig2), and the scattershot efficiency sweep (fig3).
// Flags describe the experiment; a JSON scenario file, when given, overrides
// the flags key by key.
//
// Exit codes: 0 success, 2 validation error, 3 numerical failure (no
// feasible optimum), 4 I/O error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <qufti/qufti.hpp>

namespace {

using qufti::detail::format_significant;

/// Flag values shared by every subcommand; zero/empty sentinels mean "not
/// given" for fields whose spec default differs from the flag default.
struct Flags {
    std::size_t modes = 0;
    std::size_t num_phases = 0;
    int k = 1;
    std::string scheme;
    std::size_t resolved_mode = 0;
    std::vector<double> phi;
    std::size_t starts = 0;
    std::size_t max_iters = 0;
    std::uint64_t seed = 0;
    std::size_t threads = 0;
    std::string p_grid;
    std::string out;
    std::string svg;
    std::string scenario_path;
    std::size_t m_min = 2;
    std::size_t m_max = 6;
};

void add_device_options(CLI::App* cmd, Flags& f) {
    cmd->add_option("--modes", f.modes, "mode count m");
    cmd->add_option("--num-phases", f.num_phases, "tunable phase count d (requires d < m)");
    cmd->add_option("--k", f.k, "photons per mode for quantum-bound queries");
    cmd->add_option("--scheme", f.scheme, "detector array: nrd, spd or one-nrd");
    cmd->add_option("--resolved-mode", f.resolved_mode,
                    "resolving arm for one-nrd, 1-based (default 1)");
    cmd->add_option("--scenario", f.scenario_path, "JSON scenario file; keys override flags");
}

void add_optimizer_options(CLI::App* cmd, Flags& f) {
    cmd->add_option("--starts", f.starts, "independent search starts (default 32)");
    cmd->add_option("--max-iters", f.max_iters, "iteration cap per start (default 2000)");
    cmd->add_option("--seed", f.seed, "base seed for the start points (default 0)");
    cmd->add_option("--threads", f.threads, "worker threads, 0 = all cores (default 0)");
}

void add_output_options(CLI::App* cmd, Flags& f) {
    cmd->add_option("--out", f.out, "CSV output path (default: print to stdout)");
    cmd->add_option("--svg", f.svg, "SVG chart output path");
}

std::string slurp_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw qufti::IoError("scenario: cannot open '" + path + "' for reading");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (!in.good() && !in.eof()) {
        throw qufti::IoError("scenario: read from '" + path + "' failed");
    }
    return buffer.str();
}

/// Grid description "start:stop:step" -> inclusive grid, capped at stop so
/// rounding never pushes the last point past it.
std::vector<double> parse_grid(const std::string& text) {
    double start = 0.0, stop = 0.0, step = 0.0;
    char trailing = '\0';
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &start, &stop, &step, &trailing) != 3) {
        throw qufti::ScenarioError("p-grid: expected start:stop:step, got '" + text + "'");
    }
    if (!(step > 0.0) || stop < start) {
        throw qufti::ScenarioError("p-grid: need step > 0 and stop >= start");
    }
    const std::size_t count = static_cast<std::size_t>((stop - start) / step + 1e-9);
    std::vector<double> grid;
    grid.reserve(count + 1);
    for (std::size_t i = 0; i <= count; ++i) {
        grid.push_back(std::min(start + static_cast<double>(i) * step, stop));
    }
    return grid;
}

/// Folds the flag values into a spec, then lets the scenario document (when
/// given) override key by key.  Returns the validated spec plus the raw
/// document so callers can ask which keys the document set.
struct MergedScenario {
    qufti::ScenarioSpec spec;
    nlohmann::json document;  // null when no scenario file was given
};

MergedScenario merge_scenario(const Flags& f, qufti::ScenarioSpec base) {
    if (f.modes != 0) base.modes = f.modes;
    if (f.num_phases != 0) base.num_phases = f.num_phases;
    base.k = f.k;
    if (!f.scheme.empty()) base.scheme.kind = qufti::parse_detector_kind(f.scheme);
    if (f.resolved_mode != 0) {
        if (f.scheme != "one-nrd") {
            throw qufti::ScenarioError("--resolved-mode: only meaningful with --scheme one-nrd");
        }
        base.scheme.resolved_mode = f.resolved_mode;
    }
    if (!f.phi.empty()) base.phases = f.phi;
    if (f.starts != 0) base.optimizer.starts = f.starts;
    if (f.max_iters != 0) base.optimizer.max_iters = f.max_iters;
    base.optimizer.base_seed = f.seed;
    base.optimizer.threads = f.threads;
    if (!f.p_grid.empty()) base.efficiency_grid = parse_grid(f.p_grid);
    if (!f.out.empty()) base.csv_path = f.out;
    if (!f.svg.empty()) base.svg_path = f.svg;

    MergedScenario merged;
    if (!f.scenario_path.empty()) {
        const std::string text = slurp_file(f.scenario_path);
        merged.spec = qufti::parse_scenario_overlay(text, std::move(base));
        merged.document = nlohmann::json::parse(text);
    } else {
        qufti::validate_scenario(base);
        merged.spec = std::move(base);
    }
    return merged;
}

void print_matrix(const std::string& name, const qufti::FisherMatrix& f,
                  const std::string& unit = "radian^-2") {
    std::cout << name << " (" << f.dim() << "x" << f.dim() << ", " << unit << "):\n";
    for (std::size_t i = 0; i < f.dim(); ++i) {
        std::cout << "  [";
        for (std::size_t j = 0; j < f.dim(); ++j) {
            if (j) std::cout << ", ";
            std::cout << format_significant(f(i, j), 12);
        }
        std::cout << "]\n";
    }
}

std::string join_phases(const std::vector<double>& phases) {
    std::string out;
    for (std::size_t i = 0; i < phases.size(); ++i) {
        if (i) out += ",";
        out += format_significant(phases[i], 15);
    }
    return out;
}

int run_qcrb(const Flags& flags) {
    const qufti::ScenarioSpec spec = merge_scenario(flags, {}).spec;
    const double bound = qufti::qcrb_closed_form(spec.modes, spec.num_phases, spec.k, 1);
    std::cout << "m=" << spec.modes << " d=" << spec.num_phases << " k=" << spec.k
              << ": quantum bound on the total variance = " << format_significant(bound, 15)
              << " radian^2 per trial\n";
    return 0;
}

int run_qfi(const Flags& flags) {
    const qufti::ScenarioSpec spec = merge_scenario(flags, {}).spec;
    const qufti::FisherMatrix analytic =
        qufti::quantum_fisher_analytic(spec.modes, spec.num_phases, spec.k);
    const qufti::FisherMatrix numeric = qufti::quantum_fisher_numeric(
        qufti::build_qft(spec.modes), qufti::uniform_input(spec.modes, spec.k), spec.num_phases);
    const qufti::FisherMatrix inverse =
        qufti::qfi_inverse_closed_form(spec.modes, spec.num_phases, spec.k);

    print_matrix("quantum information, closed form", analytic);
    print_matrix("quantum information, from number covariances", numeric);
    double max_diff = 0.0;
    for (std::size_t i = 0; i < analytic.dim(); ++i) {
        for (std::size_t j = 0; j < analytic.dim(); ++j) {
            max_diff = std::max(max_diff, std::abs(analytic(i, j) - numeric(i, j)));
        }
    }
    std::cout << "max |closed form - numeric| = " << format_significant(max_diff, 6) << "\n";
    print_matrix("closed-form inverse", inverse, "radian^2");
    std::cout << "max |F * F^-1 - I| = "
              << format_significant(qufti::max_identity_deviation(analytic, inverse), 6) << "\n";
    return 0;
}

int run_cfi(const Flags& flags) {
    const qufti::ScenarioSpec spec = merge_scenario(flags, {}).spec;
    if (!spec.phases) {
        throw qufti::ScenarioError("cfi: a phase setting is required (--phi or scenario phases)");
    }
    const qufti::Interferometer interf = qufti::make_qufti(spec.modes, spec.num_phases);
    const qufti::FisherMatrix f = qufti::classical_fisher(
        interf, qufti::uniform_input(spec.modes), spec.scheme, *spec.phases);

    std::cout << "scheme " << qufti::to_string(spec.scheme) << " at phases ("
              << join_phases(*spec.phases) << ")\n";
    print_matrix("classical information", f);
    if (f.degenerate_support()) {
        std::cout << "note: support boundary hit (an outcome vanished with a non-vanishing "
                     "derivative); the matrix is not trustable here\n";
    }
    const qufti::VarianceBound bound = qufti::total_variance(f, 1);
    if (bound.singular) {
        std::cout << "total variance bound: singular information matrix (bound +inf)\n";
    } else {
        std::cout << "total variance bound: " << format_significant(bound.total_variance, 15)
                  << " radian^2 per trial\n";
    }
    return 0;
}

int run_optimize(const Flags& flags) {
    const qufti::ScenarioSpec spec = merge_scenario(flags, {}).spec;
    const qufti::Optimum opt = qufti::minimize_variance(spec);
    const double qcrb = qufti::qcrb_closed_form(spec.modes, spec.num_phases, 1, 1);

    std::cout << "m=" << spec.modes << " d=" << spec.num_phases << " scheme "
              << qufti::to_string(spec.scheme) << "\n";
    std::cout << "optimized total variance = " << format_significant(opt.variance, 15)
              << " radian^2 per trial\n";
    std::cout << "phases = (" << join_phases(opt.phases) << ")\n";
    std::cout << "quantum bound = " << format_significant(qcrb, 15)
              << ", ratio = " << format_significant(opt.variance / qcrb, 6) << "\n";
    std::cout << "start " << opt.start_index << ", "
              << (opt.converged ? "converged" : "iteration cap reached") << "\n";
    return 0;
}

void emit_table(const qufti::ScenarioSpec& spec, const qufti::CsvTable& table,
                const std::string& svg_title, const std::string& x_label,
                const std::vector<qufti::SvgSeries>& series) {
    if (spec.csv_path) {
        qufti::emit_csv(table, *spec.csv_path);
        std::cout << "wrote " << *spec.csv_path << "\n";
    } else {
        std::cout << table.to_csv();
    }
    if (spec.svg_path) {
        qufti::emit_svg(*spec.svg_path, svg_title, x_label, "total variance (radian^2)", series);
        std::cout << "wrote " << *spec.svg_path << "\n";
    }
}

/// Scheme list for the sweeps: a scheme named on the command line or in the
/// scenario document narrows the sweep to it; otherwise every scheme in
/// `defaults` runs.
std::vector<qufti::DetectionScheme> sweep_schemes(
    const Flags& flags, const MergedScenario& merged,
    std::vector<qufti::DetectionScheme> defaults) {
    const bool scheme_in_document =
        merged.document.is_object() && merged.document.contains("scheme");
    if (!flags.scheme.empty() || scheme_in_document) {
        return {merged.spec.scheme};
    }
    return defaults;
}

int run_fig2(const Flags& flags) {
    qufti::ScenarioSpec base;
    base.modes = 4;  // placeholder device; the sweep sets m itself
    base.num_phases = 3;
    const MergedScenario merged = merge_scenario(flags, std::move(base));

    if (flags.m_min < 2) {
        throw qufti::ScenarioError("--m-min: the smallest device has 2 modes");
    }
    if (flags.m_max < flags.m_min) {
        throw qufti::ScenarioError("--m-max: must be >= --m-min");
    }
    if (flags.m_max > 6) {
        std::cerr << "warning: m > 6 grows the configuration count combinatorially; "
                     "expect long optimizations\n";
    }
    std::vector<std::size_t> m_values;
    for (std::size_t m = flags.m_min; m <= flags.m_max; ++m) m_values.push_back(m);

    const std::vector<qufti::DetectionScheme> schemes = sweep_schemes(
        flags, merged,
        {qufti::DetectionScheme::nrd(), qufti::DetectionScheme::spd(),
         qufti::DetectionScheme::one_nrd(1)});

    const qufti::CsvTable table = qufti::run_fig2_sweep(m_values, schemes,
                                                        merged.spec.optimizer);
    emit_table(merged.spec, table, "strategy comparison at d = m-1 (per-repetition units)", "m",
               qufti::fig2_series(table));
    return 0;
}

int run_fig3(const Flags& flags) {
    qufti::ScenarioSpec base;
    base.modes = 4;  // the four-mode, three-phase study device
    base.num_phases = 3;
    const MergedScenario merged = merge_scenario(flags, std::move(base));

    std::vector<double> grid;
    if (merged.spec.efficiency_grid) {
        grid = *merged.spec.efficiency_grid;
    } else {
        grid = parse_grid("0.05:1.0:0.05");
    }

    const std::vector<qufti::DetectionScheme> schemes = sweep_schemes(
        flags, merged, {qufti::DetectionScheme::nrd(), qufti::DetectionScheme::one_nrd(1)});

    const qufti::CsvTable table = qufti::run_fig3_sweep(merged.spec, schemes, grid);
    emit_table(merged.spec, table, "scattershot sensitivity vs source efficiency", "p",
               qufti::fig3_series(table));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"variance bounds for multi-phase Fourier interferometry"};
    app.require_subcommand(1);
    Flags flags;

    CLI::App* qcrb = app.add_subcommand("qcrb", "closed-form quantum bound on the total variance");
    add_device_options(qcrb, flags);

    CLI::App* qfi = app.add_subcommand(
        "qfi", "quantum information matrix, closed form and from number covariances");
    add_device_options(qfi, flags);

    CLI::App* cfi =
        app.add_subcommand("cfi", "classical information of a detector array at fixed phases");
    add_device_options(cfi, flags);
    cfi->add_option("--phi", flags.phi, "phase setting, comma-separated radians")
        ->delimiter(',');

    CLI::App* optimize =
        app.add_subcommand("optimize", "minimize the total variance over the phase setting");
    add_device_options(optimize, flags);
    add_optimizer_options(optimize, flags);

    CLI::App* fig2 = app.add_subcommand(
        "fig2", "strategy comparison across device sizes at d = m-1 (CSV/SVG)");
    add_device_options(fig2, flags);
    add_optimizer_options(fig2, flags);
    add_output_options(fig2, flags);
    fig2->add_option("--m-min", flags.m_min, "smallest device size (default 2)");
    fig2->add_option("--m-max", flags.m_max, "largest device size (default 6)");

    CLI::App* fig3 = app.add_subcommand(
        "fig3", "scattershot efficiency sweep for the four-mode device (CSV/SVG)");
    add_device_options(fig3, flags);
    add_optimizer_options(fig3, flags);
    add_output_options(fig3, flags);
    fig3->add_option("--phi", flags.phi,
                     "fixed phase setting, comma-separated radians (default: optimize)")
        ->delimiter(',');
    fig3->add_option("--p-grid", flags.p_grid,
                     "efficiency grid start:stop:step (default 0.05:1.0:0.05)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (qcrb->parsed()) return run_qcrb(flags);
        if (qfi->parsed()) return run_qfi(flags);
        if (cfi->parsed()) return run_cfi(flags);
        if (optimize->parsed()) return run_optimize(flags);
        if (fig2->parsed()) return run_fig2(flags);
        if (fig3->parsed()) return run_fig3(flags);
    } catch (const qufti::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const qufti::NoOptimumError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const qufti::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
