// Release acceptance gate.  Each criterion prints exactly one PASS/FAIL line
// with the measured quantities, and the binary exits nonzero when any
// requested criterion fails.  Tolerances are pinned here, next to the checks
// they guard.
//
// Usage: qufti_acceptance [--criterion N] [--cli PATH]
//   --criterion N   run only criterion N (1..11); default: run all
//   --cli PATH      path to the command-line binary (criterion 11 only)

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <qufti/qufti.hpp>

namespace {

using qufti::detail::format_significant;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<double> random_phases(std::mt19937_64& rng, std::size_t d) {
    std::vector<double> phases(d);
    for (double& phi : phases) {
        phi = uniform01(rng) * 2.0 * 3.14159265358979323846;
    }
    return phases;
}

struct Result {
    bool pass = false;
    std::string measured;
};

std::string fmt(double v, int digits = 6) { return format_significant(v, digits); }

// 1. Closed-form quantum bound values and evaluation cost.
Result criterion_1() {
    const auto t0 = Clock::now();
    const double four_mode = qufti::qcrb_closed_form(4, 3, 1, 1);
    const double three_mode = qufti::qcrb_closed_form(3, 2, 1, 1);
    const double ms = seconds_since(t0) * 1e3;

    Result r;
    r.pass = four_mode == 0.75 && three_mode == 0.5 && ms < 1.0;
    r.measured = "qcrb(4,3)=" + fmt(four_mode, 15) + ", qcrb(3,2)=" + fmt(three_mode, 15) +
                 ", runtime=" + fmt(ms, 3) + " ms";
    return r;
}

// 2. Number-covariance evaluation of the quantum information matrix agrees
//    with the closed form entrywise.
Result criterion_2() {
    const auto t0 = Clock::now();
    double worst = 0.0;
    const std::vector<std::pair<int, std::vector<std::size_t>>> cases = {
        {1, {2, 3, 4, 5}}, {2, {2, 3}}};
    for (const auto& [k, m_values] : cases) {
        for (const std::size_t m : m_values) {
            const qufti::UnitaryMatrix frame = qufti::build_qft(m);
            const qufti::FockConfig input = qufti::uniform_input(m, k);
            for (std::size_t d = 1; d < m; ++d) {
                const qufti::FisherMatrix numeric = qufti::quantum_fisher_numeric(frame, input, d);
                const qufti::FisherMatrix analytic = qufti::quantum_fisher_analytic(m, d, k);
                for (std::size_t i = 0; i < d; ++i) {
                    for (std::size_t j = 0; j < d; ++j) {
                        worst = std::max(worst, std::abs(numeric(i, j) - analytic(i, j)));
                    }
                }
            }
        }
    }
    const double secs = seconds_since(t0);

    Result r;
    r.pass = worst < 1e-8 && secs < 30.0;
    r.measured = "max entry deviation=" + fmt(worst) + ", runtime=" + fmt(secs, 3) + " s";
    return r;
}

// 3. Closed-form inverse of the quantum information matrix.
Result criterion_3() {
    double worst = 0.0;
    for (std::size_t m = 2; m <= 8; ++m) {
        for (std::size_t d = 1; d < m; ++d) {
            const double dev = qufti::max_identity_deviation(
                qufti::quantum_fisher_analytic(m, d, 1), qufti::qfi_inverse_closed_form(m, d, 1));
            worst = std::max(worst, dev);
        }
    }
    Result r;
    r.pass = worst <= 1e-10;
    r.measured = "max |F*F^-1 - I| over 1<=d<m<=8 = " + fmt(worst);
    return r;
}

// 4. Gray-code permanent vs the factorial-sum oracle on random matrices.
Result criterion_4() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(20260814);
    const std::size_t count = 210;
    double worst = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t n = 1 + (i % 7);
        qufti::ComplexMatrix w(n, n);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                w(a, b) = qufti::complex(2.0 * uniform01(rng) - 1.0, 2.0 * uniform01(rng) - 1.0);
            }
        }
        const qufti::complex fast = qufti::permanent_ryser(w);
        const qufti::complex slow = qufti::permanent_naive(w);
        const double rel = std::abs(fast - slow) / std::max(std::abs(slow), 1e-12);
        worst = std::max(worst, rel);
    }
    const double secs = seconds_since(t0);

    Result r;
    r.pass = worst < 1e-10 && secs < 10.0;
    r.measured = std::to_string(count) + " matrices, max relative error=" + fmt(worst) +
                 ", runtime=" + fmt(secs, 3) + " s";
    return r;
}

// 5. Output distributions stay normalized and conserve the photon number.
Result criterion_5() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(5);
    double worst_norm = 0.0;
    bool conserved = true;
    for (std::size_t m = 2; m <= 6; ++m) {
        const qufti::Interferometer interf = qufti::make_qufti(m, m - 1);
        const qufti::FockConfig input = qufti::uniform_input(m);
        const int t = input.total();
        for (int rep = 0; rep < 100; ++rep) {
            const qufti::FockState state =
                qufti::output_distribution(interf.unitary(random_phases(rng, m - 1)), input);
            double total = 0.0;
            for (std::size_t x = 0; x < state.configs.size(); ++x) {
                total += std::norm(state.amplitudes[x]);
                conserved = conserved && state.configs[x].total() == t;
            }
            worst_norm = std::max(worst_norm, std::abs(total - 1.0));
        }
    }
    const double secs = seconds_since(t0);

    Result r;
    r.pass = worst_norm <= 1e-10 && conserved && secs < 120.0;
    r.measured = std::string("max |sum p - 1|=") + fmt(worst_norm) +
                 ", photon totals conserved=" + (conserved ? "yes" : "no") +
                 ", runtime=" + fmt(secs, 3) + " s";
    return r;
}

// 6. Information ordering: quantum above every detector array, trace bound
//    above the quantum bound, and spd <= one-nrd <= nrd in the PSD order.
Result criterion_6() {
    std::mt19937_64 rng(6);
    const std::vector<qufti::DetectionScheme> schemes = {qufti::DetectionScheme::nrd(),
                                                         qufti::DetectionScheme::spd(),
                                                         qufti::DetectionScheme::one_nrd(1)};
    double worst_quantum_eig = 0.0;   // most negative min eigenvalue of F_quant - F_clas
    double worst_chain_eig = 0.0;     // most negative eigenvalue along the spd/one-nrd/nrd chain
    double worst_trace_margin = 0.0;  // most negative Tr[F^-1] - qcrb
    for (const std::size_t m : {std::size_t{3}, std::size_t{4}}) {
        const std::size_t d = m - 1;
        const qufti::Interferometer interf = qufti::make_qufti(m, d);
        const qufti::FockConfig input = qufti::uniform_input(m);
        const qufti::FisherMatrix quantum = qufti::quantum_fisher_analytic(m, d, 1);
        const double qcrb = qufti::qcrb_closed_form(m, d, 1, 1);
        for (int rep = 0; rep < 100; ++rep) {
            const std::vector<double> phases = random_phases(rng, d);
            std::vector<qufti::FisherMatrix> classical;
            for (const qufti::DetectionScheme& scheme : schemes) {
                classical.push_back(qufti::classical_fisher(interf, input, scheme, phases));
                worst_quantum_eig =
                    std::min(worst_quantum_eig, qufti::min_eigenvalue(quantum - classical.back()));
                const qufti::VarianceBound bound = qufti::total_variance(classical.back(), 1);
                if (!bound.singular) {
                    worst_trace_margin =
                        std::min(worst_trace_margin, bound.total_variance - qcrb);
                }
            }
            // classical[0]=nrd, [1]=spd, [2]=one-nrd
            worst_chain_eig =
                std::min(worst_chain_eig, qufti::min_eigenvalue(classical[2] - classical[1]));
            worst_chain_eig =
                std::min(worst_chain_eig, qufti::min_eigenvalue(classical[0] - classical[2]));
        }
    }
    Result r;
    r.pass = worst_quantum_eig >= -1e-9 && worst_chain_eig >= -1e-9 && worst_trace_margin >= -1e-9;
    r.measured = "min eig(F_quant - F_clas)=" + fmt(worst_quantum_eig) +
                 ", min chain eig=" + fmt(worst_chain_eig) +
                 ", min Tr[F^-1]-qcrb=" + fmt(worst_trace_margin);
    return r;
}

// 7. Single tunable phase: the optimized nrd variance matches m/(8(m-1)).
Result criterion_7() {
    double worst = 0.0;
    for (std::size_t m = 2; m <= 6; ++m) {
        const qufti::Optimum opt = qufti::minimize_variance(m, 1, qufti::DetectionScheme::nrd());
        const double target = static_cast<double>(m) / (8.0 * static_cast<double>(m - 1));
        worst = std::max(worst, std::abs(opt.variance - target));
    }
    Result r;
    r.pass = worst <= 1e-4;
    r.measured = "max |variance - m/(8(m-1))| over m=2..6 = " + fmt(worst);
    return r;
}

// 8. Fair-comparison table and the factor-four trend of the coherent/parallel
//    ratio.
Result criterion_8() {
    bool exact = true;
    for (std::size_t m = 2; m <= 7; ++m) {
        const qufti::FairComparison fc = qufti::fair_comparison(m, m - 1);
        exact = exact && fc.parallel == 0.25;
        exact = exact && fc.coherent == static_cast<double>(m - 1) / static_cast<double>(m);
        exact = exact && fc.sequential == static_cast<double>(m) / 8.0;
    }
    const qufti::FairComparison at20 = qufti::fair_comparison(20, 19);
    const qufti::FairComparison at100 = qufti::fair_comparison(100, 99);
    const double ratio20 = at20.coherent / at20.parallel;
    const double ratio100 = at100.coherent / at100.parallel;

    Result r;
    r.pass = exact && ratio20 >= 3.4 && ratio100 > ratio20 && ratio100 < 4.0;
    r.measured = std::string("m=2..7 closed forms exact=") + (exact ? "yes" : "no") +
                 ", ratio(m=20)=" + fmt(ratio20) + ", ratio(m=100)=" + fmt(ratio100);
    return r;
}

// 9. Near-saturation of the quantum bound by the optimized detector arrays.
Result criterion_9() {
    const qufti::Optimum nrd32 = qufti::minimize_variance(3, 2, qufti::DetectionScheme::nrd());
    const qufti::Optimum nrd43 = qufti::minimize_variance(4, 3, qufti::DetectionScheme::nrd());
    const qufti::Optimum one32 = qufti::minimize_variance(3, 2, qufti::DetectionScheme::one_nrd(1));
    const double qcrb32 = qufti::qcrb_closed_form(3, 2, 1, 1);
    const double qcrb43 = qufti::qcrb_closed_form(4, 3, 1, 1);

    const bool nrd_near = nrd32.variance <= 1.25 * qcrb32 && nrd43.variance <= 1.25 * qcrb43;
    const bool one_near = one32.variance <= 1.05 * nrd32.variance;
    const bool hard_bound = nrd32.variance >= qcrb32 - 1e-9 && nrd43.variance >= qcrb43 - 1e-9 &&
                            one32.variance >= qcrb32 - 1e-9;

    Result r;
    r.pass = nrd_near && one_near && hard_bound;
    r.measured = "nrd/qcrb(3,2)=" + fmt(nrd32.variance / qcrb32) +
                 ", nrd/qcrb(4,3)=" + fmt(nrd43.variance / qcrb43) +
                 ", one-nrd/nrd(3,2)=" + fmt(one32.variance / nrd32.variance) +
                 ", hard bound held=" + (hard_bound ? "yes" : "no");
    return r;
}

// 10. Scattershot sweep: deterministic limit, monotonicity, and the crossing
//     of the coherent nbar=4 reference (2.25) for the four-mode device.
Result criterion_10() {
    const auto t0 = Clock::now();
    const double reference = 2.25;
    constexpr double inf = std::numeric_limits<double>::infinity();

    struct SchemeCase {
        qufti::DetectionScheme scheme;
        double window_low, window_high;
        const char* name;
    };
    const std::vector<SchemeCase> cases = {
        {qufti::DetectionScheme::nrd(), 0.4, 0.6, "nrd"},
        {qufti::DetectionScheme::one_nrd(1), 0.55, 0.75, "one-nrd"}};

    bool equality_ok = true;
    bool monotone_ok = true;
    bool windows_ok = true;
    std::string crossings;
    for (const SchemeCase& c : cases) {
        const qufti::Optimum opt = qufti::minimize_variance(4, 3, c.scheme);

        qufti::ScattershotSpec spec;
        spec.modes = 4;
        spec.num_phases = 3;
        spec.scheme = c.scheme;
        spec.phases = opt.phases;

        spec.efficiency = 1.0;
        const qufti::VarianceBound at_unit = qufti::scattershot_variance(spec);
        equality_ok = equality_ok && !at_unit.singular &&
                      std::abs(at_unit.total_variance - opt.variance) <= 1e-10;

        std::vector<double> grid, values;
        for (int i = 1; i <= 20; ++i) {
            grid.push_back(std::min(0.05 * i, 1.0));
            spec.efficiency = grid.back();
            const qufti::VarianceBound bound = qufti::scattershot_variance(spec);
            values.push_back(bound.singular ? inf : bound.total_variance);
        }
        for (std::size_t i = 0; i + 1 < values.size(); ++i) {
            if (!std::isinf(values[i]) && values[i + 1] > values[i] + 1e-9) {
                monotone_ok = false;
            }
        }

        double crossing = inf;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (values[i] <= reference) {
                if (i == 0 || std::isinf(values[i - 1])) {
                    crossing = grid[i];
                } else {
                    crossing = grid[i - 1] + (values[i - 1] - reference) /
                                                 (values[i - 1] - values[i]) *
                                                 (grid[i] - grid[i - 1]);
                }
                break;
            }
        }
        windows_ok = windows_ok && crossing >= c.window_low && crossing <= c.window_high;
        if (!crossings.empty()) crossings += ", ";
        crossings += std::string(c.name) + " crossing=" + fmt(crossing);
    }
    const double secs = seconds_since(t0);

    Result r;
    r.pass = equality_ok && monotone_ok && windows_ok && secs < 600.0;
    r.measured = std::string("p=1 matches deterministic=") + (equality_ok ? "yes" : "no") +
                 ", non-increasing=" + (monotone_ok ? "yes" : "no") + ", " + crossings +
                 " (windows nrd 0.4..0.6, one-nrd 0.55..0.75), runtime=" + fmt(secs, 3) + " s";
    return r;
}

// 11. Byte-identical sweep output for a fixed seed, independent of threads.
Result criterion_11(const std::string& cli_path) {
    Result r;
    if (cli_path.empty()) {
        r.measured = "path to the command-line binary not given (--cli)";
        return r;
    }
    const std::string stem = "/tmp/qufti_acceptance_fig2_";
    const std::vector<std::pair<std::string, std::string>> runs = {
        {stem + "a.csv", "--threads 1"},
        {stem + "b.csv", "--threads 1"},
        {stem + "c.csv", "--threads 2"}};
    std::vector<std::string> contents;
    for (const auto& [path, threads] : runs) {
        const std::string cmd =
            cli_path + " fig2 --seed 7 " + threads + " --out " + path + " > /dev/null";
        if (std::system(cmd.c_str()) != 0) {
            r.measured = "command failed: " + cmd;
            return r;
        }
        std::ifstream in(path, std::ios::binary);
        std::ostringstream buffer;
        buffer << in.rdbuf();
        contents.push_back(buffer.str());
    }
    const bool rerun_same = contents[0] == contents[1];
    const bool threads_same = contents[0] == contents[2];
    r.pass = !contents[0].empty() && rerun_same && threads_same;
    r.measured = std::to_string(contents[0].size()) + " bytes, rerun identical=" +
                 (rerun_same ? "yes" : "no") +
                 ", thread-count independent=" + (threads_same ? "yes" : "no");
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    int selected = 0;
    std::string cli_path;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--criterion" && i + 1 < argc) {
            selected = std::atoi(argv[++i]);
        } else if (arg == "--cli" && i + 1 < argc) {
            cli_path = argv[++i];
        } else {
            std::cerr << "unknown argument: " << arg << "\n"
                      << "usage: qufti_acceptance [--criterion N] [--cli PATH]\n";
            return 2;
        }
    }
    if (selected < 0 || selected > 11) {
        std::cerr << "criterion number must be in 1..11\n";
        return 2;
    }

    bool all_pass = true;
    for (int n = 1; n <= 11; ++n) {
        if (selected != 0 && n != selected) continue;
        Result result;
        switch (n) {
            case 1: result = criterion_1(); break;
            case 2: result = criterion_2(); break;
            case 3: result = criterion_3(); break;
            case 4: result = criterion_4(); break;
            case 5: result = criterion_5(); break;
            case 6: result = criterion_6(); break;
            case 7: result = criterion_7(); break;
            case 8: result = criterion_8(); break;
            case 9: result = criterion_9(); break;
            case 10: result = criterion_10(); break;
            case 11: result = criterion_11(cli_path); break;
        }
        std::cout << "criterion " << n << ": " << (result.pass ? "PASS" : "FAIL") << " ("
                  << result.measured << ")\n";
        all_pass = all_pass && result.pass;
    }
    return all_pass ? 0 : 1;
}
