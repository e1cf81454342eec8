// qufti/figures.hpp
//
// Desk-scale reproductions of the two headline studies: the strategy
// comparison across device sizes (optimized variance vs. the quantum bound
// and the closed-form comparators, in fair per-nu2 units) and the
// scattershot efficiency sweep (averaged variance vs. source efficiency,
// per single measurement).

#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "qufti/detection.hpp"
#include "qufti/error.hpp"
#include "qufti/fisher.hpp"
#include "qufti/optimize.hpp"
#include "qufti/report.hpp"
#include "qufti/scattershot.hpp"
#include "qufti/scenario.hpp"

namespace qufti {

/// Strategy-comparison sweep at d = m-1 for each requested m and scheme.
/// Variances are in fair-comparison units (per unit of the sequential trial
/// count nu_2; the parallel strategy gets nu_1 = d*nu_2 repetitions for the
/// same photon budget, so its per-nu_2 value is Tr[F^-1]/d).  A row whose
/// optimization failed outright is marked with NaN cells and the sweep
/// continues.
inline CsvTable run_fig2_sweep(const std::vector<std::size_t>& m_values,
                               const std::vector<DetectionScheme>& schemes,
                               const OptimizerOptions& opts = OptimizerOptions{}) {
    CsvTable table({"m", "d", "scheme", "optimized_variance_per_nu2", "qcrb_per_nu2",
                    "sequential_per_nu2", "coherent_per_nu2", "ratio_to_qcrb"});
    for (std::size_t m : m_values) {
        if (m < 2) {
            throw InvalidDimensionError("run_fig2_sweep: m must be >= 2 (got " +
                                        std::to_string(m) + ")");
        }
        const std::size_t d = m - 1;
        const FairComparison fc = fair_comparison(m, d);
        for (const DetectionScheme& scheme : schemes) {
            double optimized = std::numeric_limits<double>::quiet_NaN();
            double ratio = std::numeric_limits<double>::quiet_NaN();
            try {
                const Optimum opt = minimize_variance(m, d, scheme, opts);
                optimized = opt.variance / static_cast<double>(d);
                ratio = optimized / fc.parallel;
            } catch (const NoOptimumError&) {
                // Row stays NaN-marked; later sizes may still succeed.
            }
            table.add_row({CsvCell::of_integer(static_cast<long long>(m)),
                           CsvCell::of_integer(static_cast<long long>(d)),
                           CsvCell::of_text(to_string(scheme)), CsvCell::of_number(optimized),
                           CsvCell::of_number(fc.parallel), CsvCell::of_number(fc.sequential),
                           CsvCell::of_number(fc.coherent), CsvCell::of_number(ratio)});
        }
    }
    return table;
}

/// Scattershot efficiency sweep for the scenario's device (default study:
/// four modes, three phases).  Every scheme is optimized at full input first
/// — unless the scenario pins explicit phases — and then swept over the
/// efficiency grid at that fixed setting.  Variances are per single
/// measurement (nu = 1); the shot-noise reference is a coherent strategy
/// with mean photon number nbar = m.
inline CsvTable run_fig3_sweep(const ScenarioSpec& scenario,
                               const std::vector<DetectionScheme>& schemes,
                               const std::vector<double>& p_grid) {
    validate_scenario(scenario);
    const std::size_t m = scenario.modes;
    const std::size_t d = scenario.num_phases;
    const double reference = coherent_variance(d, static_cast<double>(m));

    CsvTable table({"p", "scheme", "avg_variance_per_trial", "coherent_reference_per_trial"});
    for (const DetectionScheme& scheme : schemes) {
        ScattershotSpec spec;
        spec.modes = m;
        spec.num_phases = d;
        spec.scheme = scheme;
        if (scenario.phases) {
            spec.phases = *scenario.phases;
        } else {
            spec.phases = minimize_variance(m, d, scheme, scenario.optimizer).phases;
        }
        ScattershotSweepOptions sweep_options;
        sweep_options.threads = scenario.optimizer.threads;
        const std::vector<ScattershotPoint> points =
            scattershot_sweep(spec, p_grid, sweep_options);
        for (const ScattershotPoint& point : points) {
            table.add_row({CsvCell::of_number(point.efficiency),
                           CsvCell::of_text(to_string(scheme)),
                           CsvCell::of_number(point.bound.total_variance),
                           CsvCell::of_number(reference)});
        }
    }
    return table;
}

namespace detail {

inline double cell_value(const CsvCell& cell) {
    switch (cell.kind) {
        case CsvCell::Kind::number: return cell.number;
        case CsvCell::Kind::integer: return static_cast<double>(cell.whole);
        case CsvCell::Kind::text: break;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

/// Splits a long-format table into one series per distinct value of the
/// label column, plotting y_column against x_column.
inline std::vector<SvgSeries> series_by_label(const CsvTable& table, const std::string& x_column,
                                              const std::string& label_column,
                                              const std::string& y_column) {
    const std::size_t xi = table.column(x_column);
    const std::size_t li = table.column(label_column);
    const std::size_t yi = table.column(y_column);
    std::vector<SvgSeries> series;
    for (const auto& row : table.rows()) {
        const std::string& label = row[li].text;
        SvgSeries* target = nullptr;
        for (SvgSeries& s : series) {
            if (s.label == label) {
                target = &s;
                break;
            }
        }
        if (target == nullptr) {
            series.push_back(SvgSeries{label, {}});
            target = &series.back();
        }
        target->points.emplace_back(cell_value(row[xi]), cell_value(row[yi]));
    }
    return series;
}

/// One constant-or-varying reference series taken from a numeric column.
inline SvgSeries reference_series(const CsvTable& table, const std::string& x_column,
                                  const std::string& y_column, const std::string& label) {
    const std::size_t xi = table.column(x_column);
    const std::size_t yi = table.column(y_column);
    SvgSeries series{label, {}};
    for (const auto& row : table.rows()) {
        const std::pair<double, double> point(cell_value(row[xi]), cell_value(row[yi]));
        bool seen = false;
        for (const auto& existing : series.points) {
            if (existing == point) {
                seen = true;
                break;
            }
        }
        if (!seen) series.points.push_back(point);
    }
    return series;
}

}  // namespace detail

/// Chart series for the strategy-comparison table: one polyline per scheme
/// plus the three closed-form comparators.
inline std::vector<SvgSeries> fig2_series(const CsvTable& table) {
    std::vector<SvgSeries> series =
        detail::series_by_label(table, "m", "scheme", "optimized_variance_per_nu2");
    series.push_back(detail::reference_series(table, "m", "qcrb_per_nu2", "qcrb"));
    series.push_back(detail::reference_series(table, "m", "sequential_per_nu2", "sequential"));
    series.push_back(detail::reference_series(table, "m", "coherent_per_nu2", "coherent"));
    return series;
}

/// Chart series for the scattershot table: one polyline per scheme plus the
/// shot-noise reference.
inline std::vector<SvgSeries> fig3_series(const CsvTable& table) {
    std::vector<SvgSeries> series =
        detail::series_by_label(table, "p", "scheme", "avg_variance_per_trial");
    series.push_back(detail::reference_series(table, "p", "coherent_reference_per_trial",
                                              "coherent reference"));
    return series;
}

}  // namespace qufti
