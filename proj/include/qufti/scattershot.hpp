// qufti/scattershot.hpp
//
// Probabilistic heralded-source model.  Each of the m input modes receives a
// photon independently with efficiency p; the heralding record says which
// configuration actually entered the device, so every trial contributes the
// Fisher information of its own input.  The figure of merit is the
// inverse-variance-weighted average over heralded configurations:
//   1 / var_avg  =  sum_i  p_i / var_i,
// where configurations whose information matrix is singular contribute
// nothing (their individual variance is infinite).

#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "qufti/detection.hpp"
#include "qufti/error.hpp"
#include "qufti/fisher.hpp"
#include "qufti/fock_config.hpp"
#include "qufti/interferometer.hpp"
#include "qufti/optimize.hpp"
#include "qufti/parallel.hpp"

namespace qufti {

/// One scattershot operating point.
struct ScattershotSpec {
    std::size_t modes = 0;       ///< m
    std::size_t num_phases = 0;  ///< d, with d < m
    DetectionScheme scheme;
    double efficiency = 1.0;     ///< per-source heralding probability p
    std::vector<double> phases;  ///< evaluation point (length d)
};

/// Probability that a configuration with t heralded photons occurs:
/// p^t (1-p)^(m-t).
inline double herald_weight(std::size_t m, int t, double p) {
    return std::pow(p, static_cast<double>(t)) *
           std::pow(1.0 - p, static_cast<double>(m) - static_cast<double>(t));
}

/// All 2^m binary input configurations with their heralding probabilities.
/// Enumeration order is fixed: configurations ascend as binary numbers with
/// mode 1 as the most significant bit, so (0,...,0) comes first and
/// (1,...,1) last.  Probabilities sum to 1 exactly up to rounding.
inline std::vector<std::pair<FockConfig, double>> herald_configs(std::size_t m, double p) {
    if (m == 0) {
        throw InvalidDimensionError("herald_configs: mode count must be >= 1");
    }
    if (m > 24) {
        throw SizeGuardError("herald_configs: 2^m enumeration guarded at m <= 24");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ProbabilityError("herald_configs: efficiency must lie in [0, 1]");
    }
    std::vector<std::pair<FockConfig, double>> out;
    const std::size_t count = std::size_t(1) << m;
    out.reserve(count);
    for (std::size_t s = 0; s < count; ++s) {
        std::vector<int> occ(m);
        int t = 0;
        for (std::size_t j = 0; j < m; ++j) {
            occ[j] = static_cast<int>((s >> (m - 1 - j)) & 1u);
            t += occ[j];
        }
        out.emplace_back(FockConfig(std::move(occ)), herald_weight(m, t, p));
    }
    return out;
}

/// Supplies the Fisher matrix of one heralded input configuration.
using FisherSupplier = std::function<FisherMatrix(const FockConfig&)>;

/// The default supplier: exact classical Fisher information of the device at
/// the spec's phases for the given input.  Empty inputs yield a zero matrix
/// (no photons, no information).
inline FisherSupplier make_classical_fisher_supplier(const ScattershotSpec& spec) {
    const Interferometer interf = make_qufti(spec.modes, spec.num_phases);
    return [interf, spec](const FockConfig& in_cfg) -> FisherMatrix {
        if (in_cfg.total() == 0) {
            return FisherMatrix(spec.num_phases,
                                std::vector<double>(spec.num_phases * spec.num_phases, 0.0));
        }
        return classical_fisher(interf, in_cfg, spec.scheme, spec.phases);
    };
}

/// Scattershot-averaged variance with an injectable per-configuration
/// information supplier (the tests substitute mock suppliers here).
/// Configurations below weight 1e-15 are skipped; singular or
/// degenerate-support configurations contribute zero inverse variance.  The
/// result is flagged singular when nothing contributed.  Per-configuration
/// work may run on `threads` workers; the averaging sum runs in fixed
/// configuration order either way.
inline VarianceBound scattershot_variance_with(const ScattershotSpec& spec,
                                               const FisherSupplier& supplier,
                                               std::size_t threads = 1) {
    if (spec.num_phases < 1 || spec.num_phases >= spec.modes) {
        throw ReferenceModeError("scattershot_variance: phase count d = " +
                                 std::to_string(spec.num_phases) + " must satisfy 1 <= d < m = " +
                                 std::to_string(spec.modes));
    }
    if (spec.phases.size() != spec.num_phases) {
        throw ArityError("scattershot_variance: expected " + std::to_string(spec.num_phases) +
                         " phases, got " + std::to_string(spec.phases.size()));
    }
    const auto configs = herald_configs(spec.modes, spec.efficiency);
    std::vector<double> contributions(configs.size(), 0.0);
    parallel_for(configs.size(), threads, [&](std::size_t i) {
        const double weight = configs[i].second;
        if (weight < 1e-15) return;
        const FisherMatrix f = supplier(configs[i].first);
        if (f.degenerate_support()) return;
        const VarianceBound bound = total_variance(f, 1);
        if (bound.singular) return;
        contributions[i] = weight / bound.total_variance;
    });
    double inverse_total = 0.0;
    for (double c : contributions) inverse_total += c;

    VarianceBound result;
    if (inverse_total <= 0.0) {
        result.singular = true;
        result.total_variance = std::numeric_limits<double>::infinity();
    } else {
        result.total_variance = 1.0 / inverse_total;
    }
    return result;
}

/// Scattershot-averaged variance of the device itself.
inline VarianceBound scattershot_variance(const ScattershotSpec& spec, std::size_t threads = 1) {
    return scattershot_variance_with(spec, make_classical_fisher_supplier(spec), threads);
}

/// One point of an efficiency sweep.
struct ScattershotPoint {
    double efficiency = 0.0;
    VarianceBound bound;
};

/// Sweep controls.  By default the phases stay fixed at spec.phases for
/// every efficiency — a physical device has one phase setting per experiment
/// — and the per-configuration information is computed once and reweighted
/// across the grid.  reoptimize_per_p instead re-optimizes the phases of the
/// averaged variance at every grid point (a sensitivity study, much
/// costlier).
struct ScattershotSweepOptions {
    bool reoptimize_per_p = false;
    OptimizerOptions optimizer{};  ///< used only when reoptimize_per_p
    std::size_t threads = 1;       ///< workers for per-configuration information
};

/// Averaged variance at each grid efficiency, at fixed phases (or
/// re-optimized ones, see options).  Grid values must lie in [0, 1].
inline std::vector<ScattershotPoint> scattershot_sweep(
    const ScattershotSpec& spec, const std::vector<double>& p_grid,
    const ScattershotSweepOptions& options = ScattershotSweepOptions{}) {
    for (double p : p_grid) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw ProbabilityError("scattershot_sweep: grid efficiency " + std::to_string(p) +
                                   " outside [0, 1]");
        }
    }
    std::vector<ScattershotPoint> points;
    points.reserve(p_grid.size());

    if (options.reoptimize_per_p) {
        for (double p : p_grid) {
            ScattershotSpec at_p = spec;
            at_p.efficiency = p;
            const auto objective = [&](const std::vector<double>& phases) {
                ScattershotSpec candidate = at_p;
                candidate.phases = phases;
                const VarianceBound bound =
                    scattershot_variance(candidate, options.threads);
                return bound.singular ? std::numeric_limits<double>::infinity()
                                      : bound.total_variance;
            };
            ScattershotPoint point;
            point.efficiency = p;
            try {
                const Optimum opt = multistart_minimize(
                    spec.num_phases, objective, options.optimizer,
                    "scattershot p=" + std::to_string(p));
                point.bound.total_variance = opt.variance;
                point.bound.singular = false;
            } catch (const NoOptimumError&) {
                point.bound.singular = true;
                point.bound.total_variance = std::numeric_limits<double>::infinity();
            }
            points.push_back(point);
        }
        return points;
    }

    // Fixed phases: the information of each heralded configuration does not
    // depend on p, so compute it once and only reweight across the grid.
    const auto configs = herald_configs(spec.modes, 0.0);
    const FisherSupplier supplier = make_classical_fisher_supplier(spec);
    std::vector<double> inverse_variance(configs.size(), 0.0);
    parallel_for(configs.size(), options.threads, [&](std::size_t i) {
        const FisherMatrix f = supplier(configs[i].first);
        if (f.degenerate_support()) return;
        const VarianceBound bound = total_variance(f, 1);
        if (!bound.singular) inverse_variance[i] = 1.0 / bound.total_variance;
    });

    for (double p : p_grid) {
        double inverse_total = 0.0;
        for (std::size_t i = 0; i < configs.size(); ++i) {
            const double weight = herald_weight(spec.modes, configs[i].first.total(), p);
            if (weight < 1e-15) continue;
            inverse_total += weight * inverse_variance[i];
        }
        ScattershotPoint point;
        point.efficiency = p;
        if (inverse_total <= 0.0) {
            point.bound.singular = true;
            point.bound.total_variance = std::numeric_limits<double>::infinity();
        } else {
            point.bound.total_variance = 1.0 / inverse_total;
        }
        points.push_back(point);
    }
    return points;
}

}  // namespace qufti
