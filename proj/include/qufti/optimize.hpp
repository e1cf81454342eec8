// qufti/optimize.hpp
//
// Deterministic multistart minimization of the classical Cramer-Rao total
// variance Tr[F^-1(phi)] over the phase hypercube.  The landscape has
// singular ridges and several local basins, so the strategy is many
// independent seeded Nelder-Mead descents with a fixed-order reduction:
// identical inputs give bit-identical results across runs and thread counts.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qufti/detection.hpp"
#include "qufti/error.hpp"
#include "qufti/fisher.hpp"
#include "qufti/fock_config.hpp"
#include "qufti/interferometer.hpp"
#include "qufti/parallel.hpp"

namespace qufti {

/// Multistart search configuration.
struct OptimizerOptions {
    std::size_t starts = 32;         ///< independent Nelder-Mead descents
    std::size_t max_iters = 2000;    ///< iteration cap per start (fails soft)
    double simplex_tol = 1e-8;       ///< convergence: simplex diameter below this
    double objective_tol = 1e-10;    ///< convergence: value spread below this
    std::uint64_t base_seed = 0;     ///< start i draws from seed base_seed + i
    std::size_t threads = 0;         ///< worker threads for the starts (0 = auto)

    friend bool operator==(const OptimizerOptions&, const OptimizerOptions&) = default;
};

/// Result of one simplex descent.
struct NelderMeadResult {
    std::vector<double> point;
    double value = std::numeric_limits<double>::infinity();
    std::size_t iterations = 0;
    bool converged = false;
};

/// Best phase setting found by the multistart search.
struct Optimum {
    std::vector<double> phases;  ///< in [0, 2*pi)
    double variance = std::numeric_limits<double>::infinity();
    std::size_t start_index = 0;
    bool converged = false;
};

/// Single Nelder-Mead simplex descent with the standard reflect/expand/
/// contract/shrink coefficients (1, 2, 1/2, 1/2).  The objective may return
/// +infinity (infeasible points); the walk then shrinks away from them.
/// Converges when the simplex diameter (max-norm) drops below simplex_tol or
/// the finite value spread drops below objective_tol.
inline NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& fn,
                                    std::vector<double> start, std::size_t max_iters,
                                    double simplex_tol, double objective_tol,
                                    double initial_step = 0.25) {
    const std::size_t d = start.size();
    if (d == 0) {
        throw InvalidDimensionError("nelder_mead: dimension must be >= 1");
    }
    if (!(simplex_tol > 0.0) || !(objective_tol > 0.0) || !(initial_step > 0.0)) {
        throw InvalidDimensionError("nelder_mead: tolerances and step must be > 0");
    }

    std::vector<std::vector<double>> simplex(d + 1, start);
    for (std::size_t i = 0; i < d; ++i) simplex[i + 1][i] += initial_step;
    std::vector<double> values(d + 1);
    for (std::size_t i = 0; i <= d; ++i) values[i] = fn(simplex[i]);

    NelderMeadResult result;
    std::vector<double> centroid(d), candidate(d);
    for (std::size_t iter = 0; iter < max_iters; ++iter) {
        // Order vertices best-first.  A full sort is negligible at these
        // dimensions and keeps the bookkeeping obvious.
        for (std::size_t i = 0; i <= d; ++i) {
            for (std::size_t j = i + 1; j <= d; ++j) {
                if (values[j] < values[i]) {
                    std::swap(values[i], values[j]);
                    std::swap(simplex[i], simplex[j]);
                }
            }
        }
        result.iterations = iter;

        double diameter = 0.0;
        for (std::size_t i = 1; i <= d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                diameter = std::max(diameter, std::abs(simplex[i][j] - simplex[0][j]));
            }
        }
        const double spread = values[d] - values[0];
        if (diameter < simplex_tol || (std::isfinite(spread) && spread < objective_tol)) {
            result.converged = true;
            break;
        }

        for (std::size_t j = 0; j < d; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < d; ++i) s += simplex[i][j];
            centroid[j] = s / static_cast<double>(d);
        }

        for (std::size_t j = 0; j < d; ++j) candidate[j] = centroid[j] + (centroid[j] - simplex[d][j]);
        const double f_reflect = fn(candidate);
        if (f_reflect < values[0]) {
            std::vector<double> expanded(d);
            for (std::size_t j = 0; j < d; ++j) {
                expanded[j] = centroid[j] + 2.0 * (centroid[j] - simplex[d][j]);
            }
            const double f_expand = fn(expanded);
            if (f_expand < f_reflect) {
                simplex[d] = std::move(expanded);
                values[d] = f_expand;
            } else {
                simplex[d] = candidate;
                values[d] = f_reflect;
            }
            continue;
        }
        if (f_reflect < values[d - 1]) {
            simplex[d] = candidate;
            values[d] = f_reflect;
            continue;
        }

        bool contracted = false;
        if (f_reflect < values[d]) {
            std::vector<double> outside(d);
            for (std::size_t j = 0; j < d; ++j) {
                outside[j] = centroid[j] + 0.5 * (candidate[j] - centroid[j]);
            }
            const double f_outside = fn(outside);
            if (f_outside <= f_reflect) {
                simplex[d] = std::move(outside);
                values[d] = f_outside;
                contracted = true;
            }
        } else {
            std::vector<double> inside(d);
            for (std::size_t j = 0; j < d; ++j) {
                inside[j] = centroid[j] - 0.5 * (centroid[j] - simplex[d][j]);
            }
            const double f_inside = fn(inside);
            if (f_inside < values[d]) {
                simplex[d] = std::move(inside);
                values[d] = f_inside;
                contracted = true;
            }
        }
        if (!contracted) {
            for (std::size_t i = 1; i <= d; ++i) {
                for (std::size_t j = 0; j < d; ++j) {
                    simplex[i][j] = simplex[0][j] + 0.5 * (simplex[i][j] - simplex[0][j]);
                }
                values[i] = fn(simplex[i]);
            }
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i <= d; ++i) {
        if (values[i] < values[best]) best = i;
    }
    result.point = simplex[best];
    result.value = values[best];
    return result;
}

/// Total-variance objective: +infinity on singular or degenerate-support
/// Fisher matrices so the walker steers clear of deterministic-output
/// ridges.
inline double variance_objective(const Interferometer& interf, const FockConfig& in_cfg,
                                 const DetectionScheme& scheme, const std::vector<double>& phases) {
    const FisherMatrix f = classical_fisher(interf, in_cfg, scheme, phases);
    if (f.degenerate_support()) {
        return std::numeric_limits<double>::infinity();
    }
    const VarianceBound bound = total_variance(f, 1);
    return bound.singular ? std::numeric_limits<double>::infinity() : bound.total_variance;
}

/// Generic seeded multistart minimization over phase space.  Start i draws
/// its initial point from seed base_seed + i, uniformly over
/// [0.1, 2*pi - 0.1]^d — the collar keeps initial points off the singular
/// phi = 0 corner, though the walk itself is unconstrained.  Starts run
/// independently (optionally in parallel) and are reduced in start order
/// with ties broken toward the lower index, so the result is
/// schedule-independent.  Throws NoOptimumError when every start ended
/// infeasible (+infinity).
inline Optimum multistart_minimize(std::size_t d,
                                   const std::function<double(const std::vector<double>&)>& fn,
                                   const OptimizerOptions& opts, const std::string& label) {
    if (d == 0) {
        throw InvalidDimensionError("multistart_minimize: dimension must be >= 1");
    }
    if (opts.starts < 1) {
        throw InvalidDimensionError("multistart_minimize: starts must be >= 1");
    }
    if (!(opts.simplex_tol > 0.0) || !(opts.objective_tol > 0.0)) {
        throw InvalidDimensionError("multistart_minimize: tolerances must be > 0");
    }

    std::vector<NelderMeadResult> slots(opts.starts);
    parallel_for(opts.starts, opts.threads, [&](std::size_t i) {
        std::mt19937_64 rng(opts.base_seed + i);
        std::vector<double> start(d);
        for (std::size_t j = 0; j < d; ++j) {
            // Top 53 generator bits -> uniform [0, 1); written out explicitly
            // so the draw is identical on every platform.
            const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            start[j] = 0.1 + u * (2.0 * std::numbers::pi - 0.2);
        }
        slots[i] = nelder_mead(fn, std::move(start), opts.max_iters, opts.simplex_tol,
                               opts.objective_tol);
    });

    std::size_t best = 0;
    for (std::size_t i = 1; i < opts.starts; ++i) {
        if (slots[i].value < slots[best].value) best = i;
    }
    if (!std::isfinite(slots[best].value)) {
        throw NoOptimumError("multistart_minimize: all " + std::to_string(opts.starts) +
                             " starts ended singular or degenerate (" + label + ")");
    }

    Optimum optimum;
    optimum.start_index = best;
    optimum.converged = slots[best].converged;
    optimum.phases = slots[best].point;
    const double two_pi = 2.0 * std::numbers::pi;
    for (double& phi : optimum.phases) {
        phi = std::fmod(phi, two_pi);
        if (phi < 0.0) phi += two_pi;
    }
    // Report the value recomputed at the wrapped phases so the returned pair
    // is self-consistent; wrapping only perturbs at rounding level, but fall
    // back to the raw point if it ever crossed onto a singular ridge.
    const double recomputed = fn(optimum.phases);
    if (std::isfinite(recomputed)) {
        optimum.variance = recomputed;
    } else {
        optimum.phases = slots[best].point;
        optimum.variance = slots[best].value;
    }
    return optimum;
}

/// Minimizes Tr[F^-1(phi)] over phi for the given probe and detection
/// scheme.
inline Optimum minimize_variance(const Interferometer& interf, const FockConfig& in_cfg,
                                 const DetectionScheme& scheme,
                                 const OptimizerOptions& opts = OptimizerOptions{}) {
    const auto objective = [&](const std::vector<double>& phases) {
        return variance_objective(interf, in_cfg, scheme, phases);
    };
    return multistart_minimize(interf.num_phases, objective, opts,
                               "m=" + std::to_string(interf.modes) +
                                   ", d=" + std::to_string(interf.num_phases) +
                                   ", scheme=" + to_string(scheme));
}

/// Convenience overload for the parallel Fourier probe: m modes, d phases,
/// one photon in every mode.
inline Optimum minimize_variance(std::size_t m, std::size_t d, const DetectionScheme& scheme,
                                 const OptimizerOptions& opts = OptimizerOptions{}) {
    return minimize_variance(make_qufti(m, d), uniform_input(m), scheme, opts);
}

}  // namespace qufti
