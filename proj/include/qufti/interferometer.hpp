// qufti/interferometer.hpp
//
// Construction of the multimode Fourier interferometer: the discrete Fourier
// unitary V, the diagonal phase layer Phi carrying the d unknown phases, the
// composite U = V Phi V^dagger, and the submatrix expansion that turns U
// into the matrix whose permanent yields a transition amplitude.
//
// Convention: the Fourier matrix uses omega = exp(2*pi*i/m).  With 1-based
// mode numbers i, j its entries are m^{-1/2} omega^{(i-1)(j-1)}; in the
// 0-based storage used here that is simply omega^{r*c}.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "qufti/complex_matrix.hpp"
#include "qufti/error.hpp"
#include "qufti/fock_config.hpp"

namespace qufti {

/// Discrete Fourier unitary of dimension m: entry (i,j) = m^{-1/2}
/// omega^{(i-1)(j-1)} with omega = exp(2*pi*i/m) and 1-based (i,j).
inline UnitaryMatrix build_qft(std::size_t m) {
    if (m == 0) {
        throw InvalidDimensionError("build_qft: mode count must be >= 1");
    }
    const double norm = 1.0 / std::sqrt(static_cast<double>(m));
    ComplexMatrix v(m, m);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < m; ++c) {
            // Reduce the exponent mod m before evaluating to keep the roots
            // of unity exact in angle for large r*c.
            const std::size_t power = (r * c) % m;
            const double angle = 2.0 * std::numbers::pi * static_cast<double>(power) /
                                 static_cast<double>(m);
            v(r, c) = norm * std::polar(1.0, angle);
        }
    }
    return UnitaryMatrix(std::move(v));
}

/// Diagonal phase layer: entry k is exp(i*phi_k) for the first d modes and 1
/// for the remaining reference modes.  Requires 1 <= d < m so that at least
/// one arm stays phase-free as a reference.
inline UnitaryMatrix build_phase_layer(std::size_t m, std::size_t d,
                                       const std::vector<double>& phases) {
    if (m == 0) {
        throw InvalidDimensionError("build_phase_layer: mode count must be >= 1");
    }
    if (d < 1 || d >= m) {
        throw ReferenceModeError("build_phase_layer: phase count d = " + std::to_string(d) +
                                 " must satisfy 1 <= d < m = " + std::to_string(m) +
                                 " (one reference mode required)");
    }
    if (phases.size() != d) {
        throw ArityError("build_phase_layer: expected " + std::to_string(d) + " phases, got " +
                         std::to_string(phases.size()));
    }
    ComplexMatrix phi(m, m);
    for (std::size_t k = 0; k < m; ++k) {
        phi(k, k) = k < d ? std::polar(1.0, phases[k]) : complex(1.0, 0.0);
    }
    return UnitaryMatrix(std::move(phi));
}

/// Composite interferometer unitary V Phi V^dagger.
inline UnitaryMatrix compose_interferometer(const UnitaryMatrix& v, const UnitaryMatrix& phi) {
    if (v.dim() != phi.dim()) {
        throw ArityError("compose_interferometer: dimension mismatch " + std::to_string(v.dim()) +
                         " vs " + std::to_string(phi.dim()));
    }
    return UnitaryMatrix(v.matrix() * phi.matrix() * v.matrix().conjugate_transpose());
}

/// Builds the t x t matrix whose permanent gives the in_cfg -> out_cfg
/// transition amplitude: row j of U is repeated out_cfg[j] times and column
/// l is repeated in_cfg[l] times, in ascending mode order.
inline ComplexMatrix expand_submatrix(const ComplexMatrix& u, const FockConfig& in_cfg,
                                      const FockConfig& out_cfg) {
    if (in_cfg.modes() != u.cols() || out_cfg.modes() != u.rows()) {
        throw ArityError("expand_submatrix: configuration length does not match matrix dimension");
    }
    const int t_in = in_cfg.total();
    const int t_out = out_cfg.total();
    if (t_in != t_out) {
        throw ConfigurationError("expand_submatrix: photon totals differ, in " +
                                 std::to_string(t_in) + " vs out " + std::to_string(t_out));
    }
    const std::size_t t = static_cast<std::size_t>(t_in);
    std::vector<std::size_t> row_modes;
    std::vector<std::size_t> col_modes;
    row_modes.reserve(t);
    col_modes.reserve(t);
    for (std::size_t j = 0; j < out_cfg.modes(); ++j) {
        for (int rep = 0; rep < out_cfg[j]; ++rep) row_modes.push_back(j);
    }
    for (std::size_t l = 0; l < in_cfg.modes(); ++l) {
        for (int rep = 0; rep < in_cfg[l]; ++rep) col_modes.push_back(l);
    }
    ComplexMatrix w(t, t);
    for (std::size_t r = 0; r < t; ++r) {
        for (std::size_t c = 0; c < t; ++c) {
            w(r, c) = u(row_modes[r], col_modes[c]);
        }
    }
    return w;
}

inline ComplexMatrix expand_submatrix(const UnitaryMatrix& u, const FockConfig& in_cfg,
                                      const FockConfig& out_cfg) {
    return expand_submatrix(u.matrix(), in_cfg, out_cfg);
}

/// A Fourier interferometer with m modes and d tunable phases.  Bundles the
/// fixed Fourier unitary with the phase-dependent composite and its exact
/// entrywise derivatives.  Immutable and safe to share across threads.
struct Interferometer {
    std::size_t modes = 0;       ///< m
    std::size_t num_phases = 0;  ///< d, with 1 <= d < m
    UnitaryMatrix qft;           ///< V

    /// U(phases) = V Phi(phases) V^dagger.
    UnitaryMatrix unitary(const std::vector<double>& phases) const {
        return compose_interferometer(qft, build_phase_layer(modes, num_phases, phases));
    }

    /// Exact entrywise derivative of the composite unitary with respect to
    /// phase k (1-based, k <= d):
    ///   dU_{ab}/dphi_k = i * V_{ak} * exp(i*phi_k) * conj(V_{bk}).
    /// Only the k-th diagonal entry of Phi depends on phi_k, so the
    /// derivative is the rank-one outer product of the k-th column of V.
    ComplexMatrix unitary_derivative(const std::vector<double>& phases, std::size_t k) const {
        if (phases.size() != num_phases) {
            throw ArityError("unitary_derivative: expected " + std::to_string(num_phases) +
                             " phases, got " + std::to_string(phases.size()));
        }
        if (k < 1 || k > num_phases) {
            throw IndexError("unitary_derivative: phase index " + std::to_string(k) +
                             " out of range 1.." + std::to_string(num_phases));
        }
        const std::size_t col = k - 1;
        const complex factor = complex(0.0, 1.0) * std::polar(1.0, phases[col]);
        ComplexMatrix du(modes, modes);
        for (std::size_t a = 0; a < modes; ++a) {
            const complex left = factor * qft(a, col);
            for (std::size_t b = 0; b < modes; ++b) {
                du(a, b) = left * std::conj(qft(b, col));
            }
        }
        return du;
    }
};

/// Parallel Fourier interferometer probe with m modes and d phases.
inline Interferometer make_qufti(std::size_t m, std::size_t d) {
    if (d < 1 || d >= m) {
        throw ReferenceModeError("make_qufti: phase count d = " + std::to_string(d) +
                                 " must satisfy 1 <= d < m = " + std::to_string(m));
    }
    return Interferometer{m, d, build_qft(m)};
}

}  // namespace qufti
