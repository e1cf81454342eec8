// qufti/fock.hpp
//
// Exact Fock-space simulation of a passive linear-optical unitary: photon
// configuration enumeration, permanent-based transition amplitudes, full
// output distributions, and the Fourier-frame state whose photon-number
// covariances give the quantum Fisher information.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "qufti/complex_matrix.hpp"
#include "qufti/error.hpp"
#include "qufti/fock_config.hpp"
#include "qufti/interferometer.hpp"
#include "qufti/permanent.hpp"

namespace qufti {

/// Pure state with a definite photon total:  sum_i amplitudes[i] |configs[i]>.
struct FockState {
    std::vector<FockConfig> configs;
    std::vector<complex> amplitudes;

    /// Squared-norm sum, 1 within 1e-10 for states built by this module.
    double norm_squared() const {
        double s = 0.0;
        for (const complex& a : amplitudes) s += std::norm(a);
        return s;
    }
};

namespace detail {

inline void enumerate_configs_rec(std::size_t m, int t, std::vector<int>& prefix,
                                  std::vector<FockConfig>& out) {
    if (prefix.size() + 1 == m) {
        prefix.push_back(t);
        out.push_back(FockConfig(prefix));
        prefix.pop_back();
        return;
    }
    for (int first = t; first >= 0; --first) {
        prefix.push_back(first);
        enumerate_configs_rec(m, t - first, prefix, out);
        prefix.pop_back();
    }
}

inline double occupancy_factorial(const FockConfig& cfg) {
    double f = 1.0;
    for (int n : cfg.occupations) {
        for (int i = 2; i <= n; ++i) f *= static_cast<double>(i);
    }
    return f;
}

}  // namespace detail

/// All weak compositions of t photons into m modes, in lexicographically
/// descending order; the count is C(t+m-1, m-1).  The ordering is fixed so
/// that distributions are reproducible and outcome supports stay aligned
/// across phase values.
inline std::vector<FockConfig> enumerate_configs(std::size_t m, int t) {
    if (m == 0) {
        throw InvalidDimensionError("enumerate_configs: mode count must be >= 1");
    }
    if (t < 0) {
        throw ConfigurationError("enumerate_configs: photon total must be >= 0");
    }
    std::vector<FockConfig> out;
    std::vector<int> prefix;
    prefix.reserve(m);
    detail::enumerate_configs_rec(m, t, prefix, out);
    return out;
}

/// Transition amplitude <out_cfg| U |in_cfg>:
///   perm(W) / sqrt(prod_j in_cfg[j]! * prod_j out_cfg[j]!)
/// with W the expanded submatrix of U.  The symmetric in/out factorial
/// normalization reduces to the familiar 1/sqrt(n_1!...n_m!) for the
/// all-ones input and extends the same amplitude path to arbitrary (e.g.
/// heralded) input configurations.
inline complex amplitude(const UnitaryMatrix& u, const FockConfig& in_cfg,
                         const FockConfig& out_cfg) {
    const ComplexMatrix w = expand_submatrix(u, in_cfg, out_cfg);
    const double norm = std::sqrt(detail::occupancy_factorial(in_cfg) *
                                  detail::occupancy_factorial(out_cfg));
    return permanent_ryser(w) / norm;
}

/// Exact output state of U applied to |in_cfg>: one amplitude per
/// configuration from enumerate_configs, in enumeration order.
inline FockState output_distribution(const UnitaryMatrix& u, const FockConfig& in_cfg) {
    const int t = in_cfg.total();
    if (t < 1) {
        throw ConfigurationError("output_distribution: photon total must be >= 1");
    }
    if (in_cfg.modes() != u.dim()) {
        throw ArityError("output_distribution: configuration length does not match dimension");
    }
    FockState state;
    state.configs = enumerate_configs(u.dim(), t);
    state.amplitudes.reserve(state.configs.size());
    for (const FockConfig& out_cfg : state.configs) {
        state.amplitudes.push_back(amplitude(u, in_cfg, out_cfg));
    }
    const double norm = state.norm_squared();
    if (std::abs(norm - 1.0) > 1e-10) {
        throw ProbabilityError("output_distribution: state norm " + std::to_string(norm) +
                               " deviates from 1 beyond tolerance");
    }
    return state;
}

/// The Fourier-frame state V^dagger |in_cfg>.  The quantum Fisher
/// information of the composite interferometer depends only on this state:
/// each phase generates a photon-number rotation in the V-frame, so the QFI
/// reduces to number covariances of this state and is independent of the
/// phases themselves.
inline FockState frame_state(const UnitaryMatrix& v, const FockConfig& in_cfg) {
    return output_distribution(v.adjoint(), in_cfg);
}

/// Photon-number covariance <n_l n_n> - <n_l><n_n> of a Fock state, with
/// 1-based mode indices.
inline double number_covariance(const FockState& state, std::size_t l, std::size_t n) {
    if (state.configs.empty()) {
        throw ConfigurationError("number_covariance: empty state");
    }
    const std::size_t m = state.configs.front().modes();
    if (l < 1 || l > m || n < 1 || n > m) {
        throw IndexError("number_covariance: mode index out of range 1.." + std::to_string(m));
    }
    const std::size_t li = l - 1;
    const std::size_t ni = n - 1;
    double mean_l = 0.0;
    double mean_n = 0.0;
    double mean_ln = 0.0;
    for (std::size_t i = 0; i < state.configs.size(); ++i) {
        const double p = std::norm(state.amplitudes[i]);
        const double cl = static_cast<double>(state.configs[i][li]);
        const double cn = static_cast<double>(state.configs[i][ni]);
        mean_l += p * cl;
        mean_n += p * cn;
        mean_ln += p * cl * cn;
    }
    return mean_ln - mean_l * mean_n;
}

}  // namespace qufti
