// qufti/detection.hpp
//
// Detector models.  The exact output state is coarse-grained into what each
// detector array can actually distinguish:
//   NRD     — photon-number-resolving detectors on every arm (full config),
//   SPD     — on-off detectors that only distinguish vacuum from non-vacuum,
//   OneNRD  — a single number-resolving detector on one designated arm with
//             on-off detectors on the rest.

#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "qufti/error.hpp"
#include "qufti/fock.hpp"
#include "qufti/fock_config.hpp"

namespace qufti {

enum class DetectorKind { nrd, spd, one_nrd };

/// Tagged detector-array choice.  resolved_mode is 1-based and only
/// meaningful for OneNRD; the default arm is mode 1 (the Fourier symmetry of
/// the device makes the placement immaterial when every non-reference arm
/// carries a phase, and keeping it configurable lets tests check exactly
/// that).
struct DetectionScheme {
    DetectorKind kind = DetectorKind::nrd;
    std::size_t resolved_mode = 1;

    static DetectionScheme nrd() { return {DetectorKind::nrd, 1}; }
    static DetectionScheme spd() { return {DetectorKind::spd, 1}; }
    static DetectionScheme one_nrd(std::size_t mode = 1) { return {DetectorKind::one_nrd, mode}; }

    friend bool operator==(const DetectionScheme&, const DetectionScheme&) = default;
};

inline std::string to_string(const DetectionScheme& s) {
    switch (s.kind) {
        case DetectorKind::nrd: return "nrd";
        case DetectorKind::spd: return "spd";
        case DetectorKind::one_nrd: return "one-nrd";
    }
    return "?";
}

/// Canonical measurement-outcome label.  The key encoding per scheme:
///   NRD     — the full occupation vector (length m),
///   SPD     — the click pattern min(occ, 1) (length m),
///   OneNRD  — element 0 is the exact count on the resolved arm, followed by
///             the click pattern of the remaining arms in ascending mode
///             order (length m).
struct DetectionOutcome {
    std::vector<int> key;

    friend bool operator==(const DetectionOutcome&, const DetectionOutcome&) = default;
    friend auto operator<=>(const DetectionOutcome&, const DetectionOutcome&) = default;
};

/// Human-readable outcome label, e.g. "(2,(1,0))" for OneNRD.
inline std::string to_string(const DetectionOutcome& outcome, const DetectionScheme& scheme) {
    std::string out;
    const auto& k = outcome.key;
    if (scheme.kind == DetectorKind::one_nrd) {
        out = "(" + std::to_string(k.empty() ? 0 : k[0]) + ",(";
        for (std::size_t i = 1; i < k.size(); ++i) {
            if (i > 1) out += ",";
            out += std::to_string(k[i]);
        }
        out += "))";
    } else {
        out = "(";
        for (std::size_t i = 0; i < k.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(k[i]);
        }
        out += ")";
    }
    return out;
}

/// Maps an exact photon configuration to what the detector array reports.
inline DetectionOutcome classify_outcome(const FockConfig& cfg, const DetectionScheme& scheme) {
    const std::size_t m = cfg.modes();
    DetectionOutcome outcome;
    switch (scheme.kind) {
        case DetectorKind::nrd:
            outcome.key = cfg.occupations;
            break;
        case DetectorKind::spd:
            outcome.key.reserve(m);
            for (int n : cfg.occupations) outcome.key.push_back(n > 0 ? 1 : 0);
            break;
        case DetectorKind::one_nrd: {
            if (scheme.resolved_mode < 1 || scheme.resolved_mode > m) {
                throw IndexError("classify_outcome: resolved mode " +
                                 std::to_string(scheme.resolved_mode) + " out of range 1.." +
                                 std::to_string(m));
            }
            outcome.key.reserve(m);
            outcome.key.push_back(cfg[scheme.resolved_mode - 1]);
            for (std::size_t i = 0; i < m; ++i) {
                if (i + 1 == scheme.resolved_mode) continue;
                outcome.key.push_back(cfg[i] > 0 ? 1 : 0);
            }
            break;
        }
    }
    return outcome;
}

/// Probability distribution over detector outcomes.
struct OutcomeDistribution {
    std::vector<DetectionOutcome> outcomes;
    std::vector<double> probabilities;

    double total() const {
        double s = 0.0;
        for (double p : probabilities) s += p;
        return s;
    }
};

/// The scheme's full outcome support for m modes and t photons: every
/// distinct DetectionOutcome reachable from some configuration, listed in
/// first-appearance order over the fixed configuration enumeration, plus the
/// map from configuration index to outcome index.  The support depends only
/// on (m, t, scheme), never on the phases, so probability vectors and their
/// derivatives stay aligned across phase values; outcomes whose probability
/// happens to be zero are retained.
struct OutcomeSupport {
    std::vector<DetectionOutcome> outcomes;
    std::vector<std::size_t> config_to_outcome;  ///< aligned with enumerate_configs(m, t)
};

inline OutcomeSupport scheme_support(std::size_t m, int t, const DetectionScheme& scheme) {
    const std::vector<FockConfig> configs = enumerate_configs(m, t);
    OutcomeSupport support;
    support.config_to_outcome.reserve(configs.size());
    std::map<std::vector<int>, std::size_t> index;
    for (const FockConfig& cfg : configs) {
        DetectionOutcome outcome = classify_outcome(cfg, scheme);
        auto [it, inserted] = index.try_emplace(outcome.key, support.outcomes.size());
        if (inserted) {
            support.outcomes.push_back(std::move(outcome));
        }
        support.config_to_outcome.push_back(it->second);
    }
    return support;
}

/// Sums the state's configuration probabilities over each detector outcome.
/// Outcome order is first appearance in the state's configuration order;
/// total probability is preserved exactly (same addends, grouped).
inline OutcomeDistribution coarse_grain(const FockState& state, const DetectionScheme& scheme) {
    OutcomeDistribution dist;
    std::map<std::vector<int>, std::size_t> index;
    for (std::size_t i = 0; i < state.configs.size(); ++i) {
        DetectionOutcome outcome = classify_outcome(state.configs[i], scheme);
        auto [it, inserted] = index.try_emplace(outcome.key, dist.outcomes.size());
        if (inserted) {
            dist.outcomes.push_back(std::move(outcome));
            dist.probabilities.push_back(0.0);
        }
        dist.probabilities[it->second] += std::norm(state.amplitudes[i]);
    }
    for (double& p : dist.probabilities) {
        if (p < 0.0) {
            if (p < -1e-14) {
                throw ProbabilityError("coarse_grain: probability " + std::to_string(p) +
                                       " below rounding tolerance");
            }
            p = 0.0;
        }
    }
    return dist;
}

}  // namespace qufti
