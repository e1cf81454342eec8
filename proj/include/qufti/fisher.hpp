// qufti/fisher.hpp
//
// Fisher-information analysis.  Classical Fisher information of a detection
// scheme with exact (permanent-gradient) or finite-difference probability
// Jacobians; the quantum Fisher information both numerically (photon-number
// covariances of the Fourier-frame state) and in closed form; Cramer-Rao
// variance bounds; and the closed-form comparator strategies used for fair
// resource accounting.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "qufti/complex_matrix.hpp"
#include "qufti/detection.hpp"
#include "qufti/error.hpp"
#include "qufti/fock.hpp"
#include "qufti/fock_config.hpp"
#include "qufti/interferometer.hpp"
#include "qufti/permanent.hpp"

namespace qufti {

/// Real symmetric d x d information matrix (units radian^-2).  Construction
/// validates symmetry to 1e-10 and stores the symmetrized average.  The
/// degenerate-support flag marks a classical Fisher matrix whose outcome sum
/// had to drop a vanishing-probability term with a non-negligible
/// derivative; such points sit on a support boundary and carry no trustable
/// information value.
class FisherMatrix {
public:
    FisherMatrix() = default;

    FisherMatrix(std::size_t dim, std::vector<double> entries, bool degenerate_support = false)
        : dim_(dim), entries_(std::move(entries)), degenerate_support_(degenerate_support) {
        if (entries_.size() != dim_ * dim_) {
            throw ArityError("FisherMatrix: entry count does not equal dim^2");
        }
        double asym = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) {
            for (std::size_t j = i + 1; j < dim_; ++j) {
                asym = std::max(asym, std::abs(entries_[i * dim_ + j] - entries_[j * dim_ + i]));
            }
        }
        if (asym > 1e-10) {
            throw ShapeError("FisherMatrix: asymmetry " + std::to_string(asym) +
                             " exceeds tolerance");
        }
        for (std::size_t i = 0; i < dim_; ++i) {
            for (std::size_t j = i + 1; j < dim_; ++j) {
                const double avg = 0.5 * (entries_[i * dim_ + j] + entries_[j * dim_ + i]);
                entries_[i * dim_ + j] = avg;
                entries_[j * dim_ + i] = avg;
            }
        }
    }

    std::size_t dim() const { return dim_; }
    double operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
    const std::vector<double>& entries() const { return entries_; }
    bool degenerate_support() const { return degenerate_support_; }

    double trace() const {
        double s = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) s += entries_[i * dim_ + i];
        return s;
    }

private:
    std::size_t dim_ = 0;
    std::vector<double> entries_;
    bool degenerate_support_ = false;
};

/// Entrywise difference (flags are diagnostic and not propagated).
inline FisherMatrix operator-(const FisherMatrix& a, const FisherMatrix& b) {
    if (a.dim() != b.dim()) {
        throw ArityError("FisherMatrix difference: dimension mismatch");
    }
    std::vector<double> entries(a.entries());
    for (std::size_t i = 0; i < entries.size(); ++i) entries[i] -= b.entries()[i];
    return FisherMatrix(a.dim(), std::move(entries));
}

namespace detail {

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations,
/// returned in ascending order.  Dimensions here are tiny (d <= 8), so the
/// quadratically convergent sweep is both simple and exact to rounding.
inline std::vector<double> jacobi_eigenvalues(std::size_t n, std::vector<double> a) {
    if (n == 0) return {};
    double scale = 0.0;
    for (double v : a) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return std::vector<double>(n, 0.0);

    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                off = std::max(off, std::abs(a[p * n + q]));
            }
        }
        if (off <= 1e-14 * scale) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (std::abs(apq) <= 1e-300) continue;
                const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k * n + p];
                    const double akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p * n + k];
                    const double aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = a[i * n + i];
    std::sort(eig.begin(), eig.end());
    return eig;
}

}  // namespace detail

/// Eigenvalues in ascending order.
inline std::vector<double> symmetric_eigenvalues(const FisherMatrix& f) {
    return detail::jacobi_eigenvalues(f.dim(), f.entries());
}

/// Smallest eigenvalue; the PSD checks used by the data-processing tests.
inline double min_eigenvalue(const FisherMatrix& f) {
    const std::vector<double> eig = symmetric_eigenvalues(f);
    return eig.empty() ? 0.0 : eig.front();
}

/// ||A*B - I||_max, for closed-form inverse verification.
inline double max_identity_deviation(const FisherMatrix& a, const FisherMatrix& b) {
    if (a.dim() != b.dim()) {
        throw ArityError("max_identity_deviation: dimension mismatch");
    }
    const std::size_t n = a.dim();
    double dev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += a(i, k) * b(k, j);
            dev = std::max(dev, std::abs(s - (i == j ? 1.0 : 0.0)));
        }
    }
    return dev;
}

/// Cramer-Rao total-variance bound Tr[F^-1]/nu with a singularity flag.
struct VarianceBound {
    double total_variance = std::numeric_limits<double>::infinity();  ///< radian^2
    std::uint64_t trials = 1;
    bool singular = false;
};

/// Tr[F^-1]/trials.  The matrix is inverted through its eigenvalues; the
/// bound is flagged singular (variance +infinity) when the smallest
/// eigenvalue drops below 1e-10 or the condition number exceeds 1e12, so
/// noise is never silently amplified into a finite-looking answer.
inline VarianceBound total_variance(const FisherMatrix& f, std::uint64_t trials = 1) {
    if (trials < 1) {
        throw InvalidDimensionError("total_variance: trial count must be >= 1");
    }
    VarianceBound bound;
    bound.trials = trials;
    const std::vector<double> eig = symmetric_eigenvalues(f);
    const double eig_min = eig.empty() ? 0.0 : eig.front();
    const double eig_max = eig.empty() ? 0.0 : std::abs(eig.back());
    if (eig_min < 1e-10 || eig_max / eig_min > 1e12) {
        bound.singular = true;
        bound.total_variance = std::numeric_limits<double>::infinity();
        return bound;
    }
    double trace_inv = 0.0;
    for (double lambda : eig) trace_inv += 1.0 / lambda;
    bound.total_variance = trace_inv / static_cast<double>(trials);
    return bound;
}

/// Derivative engine for probability Jacobians: exact permanent gradients or
/// central finite differences with the given step.
struct JacobianEngine {
    enum class Kind { exact, central_fd };
    Kind kind = Kind::exact;
    double step = 1e-5;

    static JacobianEngine exact() { return {Kind::exact, 0.0}; }
    static JacobianEngine central_fd(double step = 1e-5) { return {Kind::central_fd, step}; }
};

/// Outcome probabilities over the scheme support together with their
/// derivative rows: derivatives[x][j] = dp(x|phi)/dphi_(j+1).
struct JacobianResult {
    OutcomeDistribution distribution;
    std::vector<std::vector<double>> derivatives;
};

namespace detail {

/// Probabilities over the scheme support at the given phases, in support
/// order (zero-probability outcomes retained).
inline std::vector<double> support_probabilities(const Interferometer& interf,
                                                 const FockConfig& in_cfg,
                                                 const OutcomeSupport& support,
                                                 const std::vector<FockConfig>& configs,
                                                 const std::vector<double>& phases) {
    const UnitaryMatrix u = interf.unitary(phases);
    std::vector<double> p(support.outcomes.size(), 0.0);
    for (std::size_t ci = 0; ci < configs.size(); ++ci) {
        p[support.config_to_outcome[ci]] += std::norm(amplitude(u, in_cfg, configs[ci]));
    }
    return p;
}

}  // namespace detail

/// Probabilities and their phase derivatives for every outcome in the
/// scheme's support.
///
/// Exact engine: each amplitude gamma = perm(W)/norm is differentiated
/// through the permanent, using the entrywise unitary derivative
/// dU_{ab}/dphi_k = i * V_{ak} e^{i phi_k} conj(V_{bk}); then
/// d|gamma|^2 = 2 Re(conj(gamma) * dgamma), and coarse-grained derivatives
/// are sums over the constituent configurations.  Finite-difference engine:
/// central differences of the coarse-grained probabilities.
inline JacobianResult probability_jacobian(const Interferometer& interf, const FockConfig& in_cfg,
                                           const DetectionScheme& scheme,
                                           const std::vector<double>& phases,
                                           const JacobianEngine& engine = JacobianEngine::exact()) {
    if (phases.size() != interf.num_phases) {
        throw ArityError("probability_jacobian: expected " + std::to_string(interf.num_phases) +
                         " phases, got " + std::to_string(phases.size()));
    }
    if (in_cfg.modes() != interf.modes) {
        throw ArityError("probability_jacobian: configuration length does not match mode count");
    }
    const std::size_t d = interf.num_phases;
    const int t = in_cfg.total();
    if (t < 1) {
        throw ConfigurationError("probability_jacobian: photon total must be >= 1");
    }
    const OutcomeSupport support = scheme_support(interf.modes, t, scheme);
    const std::vector<FockConfig> configs = enumerate_configs(interf.modes, t);
    const std::size_t n_out = support.outcomes.size();

    JacobianResult result;
    result.distribution.outcomes = support.outcomes;
    result.distribution.probabilities.assign(n_out, 0.0);
    result.derivatives.assign(n_out, std::vector<double>(d, 0.0));

    if (engine.kind == JacobianEngine::Kind::exact) {
        const UnitaryMatrix u = interf.unitary(phases);
        std::vector<ComplexMatrix> du;
        du.reserve(d);
        for (std::size_t k = 1; k <= d; ++k) {
            du.push_back(interf.unitary_derivative(phases, k));
        }
        std::vector<ComplexMatrix> wdots;
        for (std::size_t ci = 0; ci < configs.size(); ++ci) {
            const FockConfig& out_cfg = configs[ci];
            const ComplexMatrix w = expand_submatrix(u, in_cfg, out_cfg);
            const double norm = std::sqrt(detail::occupancy_factorial(in_cfg) *
                                          detail::occupancy_factorial(out_cfg));
            wdots.clear();
            for (std::size_t k = 0; k < d; ++k) {
                wdots.push_back(expand_submatrix(du[k], in_cfg, out_cfg));
            }
            const PermanentWithGradient pg = permanent_with_gradient(w, wdots);
            const complex gamma = pg.value / norm;
            const std::size_t xi = support.config_to_outcome[ci];
            result.distribution.probabilities[xi] += std::norm(gamma);
            for (std::size_t k = 0; k < d; ++k) {
                const complex dgamma = pg.directional[k] / norm;
                result.derivatives[xi][k] += 2.0 * (std::conj(gamma) * dgamma).real();
            }
        }
    } else {
        if (!(engine.step > 0.0)) {
            throw InvalidDimensionError("probability_jacobian: finite-difference step must be > 0");
        }
        result.distribution.probabilities =
            detail::support_probabilities(interf, in_cfg, support, configs, phases);
        for (std::size_t k = 0; k < d; ++k) {
            std::vector<double> lo = phases;
            std::vector<double> hi = phases;
            lo[k] -= engine.step;
            hi[k] += engine.step;
            const std::vector<double> p_lo =
                detail::support_probabilities(interf, in_cfg, support, configs, lo);
            const std::vector<double> p_hi =
                detail::support_probabilities(interf, in_cfg, support, configs, hi);
            for (std::size_t xi = 0; xi < n_out; ++xi) {
                result.derivatives[xi][k] = (p_hi[xi] - p_lo[xi]) / (2.0 * engine.step);
            }
        }
    }
    return result;
}

/// Classical Fisher information of the coarse-grained outcome distribution:
///   F_{ij} = sum_x (1/p(x)) dp(x)/dphi_i dp(x)/dphi_j.
/// Outcomes with p < 1e-12 are dropped as exact 0*0/0 limits when all their
/// derivatives are below 1e-9; a dropped outcome with a larger derivative
/// marks a support boundary and sets the degenerate flag instead.
inline FisherMatrix classical_fisher(const Interferometer& interf, const FockConfig& in_cfg,
                                     const DetectionScheme& scheme,
                                     const std::vector<double>& phases,
                                     const JacobianEngine& engine = JacobianEngine::exact()) {
    const JacobianResult jr = probability_jacobian(interf, in_cfg, scheme, phases, engine);
    const std::size_t d = interf.num_phases;
    std::vector<double> entries(d * d, 0.0);
    bool degenerate = false;
    for (std::size_t xi = 0; xi < jr.distribution.probabilities.size(); ++xi) {
        const double p = jr.distribution.probabilities[xi];
        const std::vector<double>& g = jr.derivatives[xi];
        if (p < 1e-12) {
            double gmax = 0.0;
            for (double v : g) gmax = std::max(gmax, std::abs(v));
            if (gmax >= 1e-9) degenerate = true;
            continue;
        }
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                entries[i * d + j] += g[i] * g[j] / p;
            }
        }
    }
    return FisherMatrix(d, std::move(entries), degenerate);
}

/// Quantum Fisher information computed from the state alone:
///   F_{ln} = 4 * Cov(n_l, n_n) in the Fourier-frame state V^dagger|in>.
/// Phase-independent by construction.
inline FisherMatrix quantum_fisher_numeric(const UnitaryMatrix& v, const FockConfig& in_cfg,
                                           std::size_t d) {
    if (d < 1 || d >= v.dim()) {
        throw ReferenceModeError("quantum_fisher_numeric: phase count d = " + std::to_string(d) +
                                 " must satisfy 1 <= d < m = " + std::to_string(v.dim()));
    }
    const FockState frame = frame_state(v, in_cfg);
    std::vector<double> entries(d * d, 0.0);
    for (std::size_t l = 0; l < d; ++l) {
        for (std::size_t n = l; n < d; ++n) {
            const double value = 4.0 * number_covariance(frame, l + 1, n + 1);
            entries[l * d + n] = value;
            entries[n * d + l] = value;
        }
    }
    return FisherMatrix(d, std::move(entries));
}

/// Closed-form quantum Fisher information for the k-photon-per-mode input:
///   4k(k+1) * [ (m-1)/m on the diagonal, -1/m off the diagonal ].
inline FisherMatrix quantum_fisher_analytic(std::size_t m, std::size_t d, int k = 1) {
    if (d < 1 || d >= m) {
        throw ReferenceModeError("quantum_fisher_analytic: phase count d = " + std::to_string(d) +
                                 " must satisfy 1 <= d < m = " + std::to_string(m));
    }
    if (k < 1) {
        throw InvalidDimensionError("quantum_fisher_analytic: photons per mode must be >= 1");
    }
    const double prefactor = 4.0 * static_cast<double>(k) * static_cast<double>(k + 1);
    const double diag = prefactor * static_cast<double>(m - 1) / static_cast<double>(m);
    const double off = -prefactor / static_cast<double>(m);
    std::vector<double> entries(d * d, off);
    for (std::size_t i = 0; i < d; ++i) entries[i * d + i] = diag;
    return FisherMatrix(d, std::move(entries));
}

/// Closed-form inverse of the analytic quantum Fisher information:
///   (1/(4k(k+1))) * [ (m-d+1)/(m-d) on the diagonal, 1/(m-d) off ].
inline FisherMatrix qfi_inverse_closed_form(std::size_t m, std::size_t d, int k = 1) {
    if (d < 1 || d >= m) {
        throw ReferenceModeError("qfi_inverse_closed_form: phase count d = " + std::to_string(d) +
                                 " must satisfy 1 <= d < m = " + std::to_string(m));
    }
    if (k < 1) {
        throw InvalidDimensionError("qfi_inverse_closed_form: photons per mode must be >= 1");
    }
    const double prefactor = 1.0 / (4.0 * static_cast<double>(k) * static_cast<double>(k + 1));
    const double md = static_cast<double>(m - d);
    const double diag = prefactor * static_cast<double>(m - d + 1) / md;
    const double off = prefactor / md;
    std::vector<double> entries(d * d, off);
    for (std::size_t i = 0; i < d; ++i) entries[i * d + i] = diag;
    return FisherMatrix(d, std::move(entries));
}

/// Quantum Cramer-Rao bound on the total variance:
///   (1/nu) * (1/(4k(k+1))) * d(m-d+1)/(m-d).
inline double qcrb_closed_form(std::size_t m, std::size_t d, int k = 1, std::uint64_t trials = 1) {
    if (d < 1 || d >= m) {
        throw ReferenceModeError("qcrb_closed_form: phase count d = " + std::to_string(d) +
                                 " must satisfy 1 <= d < m = " + std::to_string(m));
    }
    if (k < 1) {
        throw InvalidDimensionError("qcrb_closed_form: photons per mode must be >= 1");
    }
    if (trials < 1) {
        throw InvalidDimensionError("qcrb_closed_form: trial count must be >= 1");
    }
    const double numerator = static_cast<double>(d) * static_cast<double>(m - d + 1);
    const double denominator = 4.0 * static_cast<double>(k) * static_cast<double>(k + 1) *
                               static_cast<double>(m - d) * static_cast<double>(trials);
    return numerator / denominator;
}

/// Total-variance bounds of the three strategies under fair photon
/// accounting (per unit of the sequential trial count nu_2, i.e. with
/// nu_1 = d * nu_2 parallel repetitions bought for the same photon budget).
struct FairComparison {
    double parallel = 0.0;    ///< (m-d+1) / (8(m-d))
    double sequential = 0.0;  ///< m*d / (8(m-1))
    double coherent = 0.0;    ///< d/m, the shot-noise reference
};

inline FairComparison fair_comparison(std::size_t m, std::size_t d) {
    if (d < 1 || d >= m) {
        throw ReferenceModeError("fair_comparison: phase count d = " + std::to_string(d) +
                                 " must satisfy 1 <= d < m = " + std::to_string(m));
    }
    FairComparison out;
    out.parallel = static_cast<double>(m - d + 1) / (8.0 * static_cast<double>(m - d));
    out.sequential = static_cast<double>(m) * static_cast<double>(d) /
                     (8.0 * static_cast<double>(m - 1));
    out.coherent = static_cast<double>(d) / static_cast<double>(m);
    return out;
}

/// Shot-noise-limited total variance of a coherent-state strategy with mean
/// photon number nbar: d^2 / nbar.
inline double coherent_variance(std::size_t d, double nbar) {
    if (!(nbar > 0.0)) {
        throw InvalidDimensionError("coherent_variance: mean photon number must be > 0");
    }
    return static_cast<double>(d) * static_cast<double>(d) / nbar;
}

}  // namespace qufti
