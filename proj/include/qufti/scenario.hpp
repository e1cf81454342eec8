// qufti/scenario.hpp
//
// One-document experiment descriptions.  A scenario JSON object aggregates
// every knob of a run — device size, detection scheme, phases, optimizer
// controls, efficiency grid, output paths — with schema validation that
// rejects unknown keys and reports offending field paths.  Rendering and
// parsing round-trip exactly.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qufti/detection.hpp"
#include "qufti/error.hpp"
#include "qufti/optimize.hpp"

namespace qufti {

/// Full experiment description.
struct ScenarioSpec {
    std::size_t modes = 0;       ///< m (key "m")
    std::size_t num_phases = 0;  ///< d (key "d")
    int k = 1;                   ///< photons per mode for quantum-bound queries
    DetectionScheme scheme = DetectionScheme::nrd();
    std::optional<std::vector<double>> phases;           ///< explicit evaluation point
    OptimizerOptions optimizer{};                        ///< multistart controls
    std::optional<std::vector<double>> efficiency_grid;  ///< key "p_grid"
    std::optional<std::string> csv_path;                 ///< key "out"
    std::optional<std::string> svg_path;                 ///< key "svg"

    friend bool operator==(const ScenarioSpec&, const ScenarioSpec&) = default;
};

/// Parses "nrd" | "spd" | "one-nrd".
inline DetectorKind parse_detector_kind(const std::string& name) {
    if (name == "nrd") return DetectorKind::nrd;
    if (name == "spd") return DetectorKind::spd;
    if (name == "one-nrd") return DetectorKind::one_nrd;
    throw ScenarioError("scheme: unknown value '" + name + "' (expected nrd, spd or one-nrd)");
}

/// Validates cross-field constraints of a complete spec.
inline void validate_scenario(const ScenarioSpec& spec) {
    if (spec.modes < 1) {
        throw ScenarioError("m: mode count must be >= 1");
    }
    if (spec.num_phases < 1 || spec.num_phases >= spec.modes) {
        throw ScenarioError("d: must satisfy 1 <= d < m (got d=" +
                            std::to_string(spec.num_phases) + ", m=" +
                            std::to_string(spec.modes) + "); one reference mode is required");
    }
    if (spec.k < 1) {
        throw ScenarioError("k: photons per mode must be >= 1");
    }
    if (spec.scheme.kind == DetectorKind::one_nrd &&
        (spec.scheme.resolved_mode < 1 || spec.scheme.resolved_mode > spec.modes)) {
        throw ScenarioError("resolved_mode: must lie in 1..m (got " +
                            std::to_string(spec.scheme.resolved_mode) + ", m=" +
                            std::to_string(spec.modes) + ")");
    }
    if (spec.phases && spec.phases->size() != spec.num_phases) {
        throw ScenarioError("phases: expected " + std::to_string(spec.num_phases) +
                            " entries, got " + std::to_string(spec.phases->size()));
    }
    if (spec.efficiency_grid) {
        for (double p : *spec.efficiency_grid) {
            if (!(p >= 0.0 && p <= 1.0)) {
                throw ScenarioError("p_grid: value " + std::to_string(p) + " outside [0, 1]");
            }
        }
    }
    if (spec.optimizer.starts < 1) {
        throw ScenarioError("starts: must be >= 1");
    }
    if (!(spec.optimizer.simplex_tol > 0.0)) {
        throw ScenarioError("simplex_tol: must be > 0");
    }
    if (!(spec.optimizer.objective_tol > 0.0)) {
        throw ScenarioError("objective_tol: must be > 0");
    }
}

namespace detail {

inline std::size_t scenario_count(const nlohmann::json& value, const std::string& key,
                                  std::size_t minimum) {
    if (!value.is_number_integer() || value.get<long long>() < 0) {
        throw ScenarioError(key + ": expected a non-negative integer");
    }
    const auto v = value.get<unsigned long long>();
    if (v < minimum) {
        throw ScenarioError(key + ": must be >= " + std::to_string(minimum));
    }
    return static_cast<std::size_t>(v);
}

inline double scenario_number(const nlohmann::json& value, const std::string& key) {
    if (!value.is_number()) {
        throw ScenarioError(key + ": expected a number");
    }
    return value.get<double>();
}

inline std::vector<double> scenario_number_array(const nlohmann::json& value,
                                                 const std::string& key) {
    if (!value.is_array()) {
        throw ScenarioError(key + ": expected an array of numbers");
    }
    std::vector<double> out;
    out.reserve(value.size());
    for (std::size_t i = 0; i < value.size(); ++i) {
        if (!value[i].is_number()) {
            throw ScenarioError(key + "[" + std::to_string(i) + "]: expected a number");
        }
        out.push_back(value[i].get<double>());
    }
    return out;
}

inline std::string scenario_string(const nlohmann::json& value, const std::string& key) {
    if (!value.is_string()) {
        throw ScenarioError(key + ": expected a string");
    }
    return value.get<std::string>();
}

}  // namespace detail

/// Applies a scenario document on top of `base`: keys present in the JSON
/// override the base values (so command-line flags can serve as the base and
/// the document wins), keys absent keep them.  Unknown keys are rejected.
/// The merged spec is validated before being returned.
inline ScenarioSpec parse_scenario_overlay(const std::string& text, ScenarioSpec base) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
        throw ScenarioError(std::string("scenario: invalid JSON: ") + err.what());
    }
    if (!doc.is_object()) {
        throw ScenarioError("scenario: top-level value must be an object");
    }

    bool saw_resolved_mode = false;
    for (const auto& [key, value] : doc.items()) {
        if (key == "m") {
            base.modes = detail::scenario_count(value, key, 1);
        } else if (key == "d") {
            base.num_phases = detail::scenario_count(value, key, 1);
        } else if (key == "k") {
            base.k = static_cast<int>(detail::scenario_count(value, key, 1));
        } else if (key == "scheme") {
            base.scheme.kind = parse_detector_kind(detail::scenario_string(value, key));
        } else if (key == "resolved_mode") {
            base.scheme.resolved_mode = detail::scenario_count(value, key, 1);
            saw_resolved_mode = true;
        } else if (key == "phases") {
            base.phases = detail::scenario_number_array(value, key);
        } else if (key == "p_grid") {
            base.efficiency_grid = detail::scenario_number_array(value, key);
        } else if (key == "starts") {
            base.optimizer.starts = detail::scenario_count(value, key, 1);
        } else if (key == "max_iters") {
            base.optimizer.max_iters = detail::scenario_count(value, key, 1);
        } else if (key == "seed") {
            if (!value.is_number_integer()) {
                throw ScenarioError("seed: expected an integer");
            }
            base.optimizer.base_seed = value.get<std::uint64_t>();
        } else if (key == "simplex_tol") {
            base.optimizer.simplex_tol = detail::scenario_number(value, key);
        } else if (key == "objective_tol") {
            base.optimizer.objective_tol = detail::scenario_number(value, key);
        } else if (key == "threads") {
            if (!value.is_number_integer() || value.get<long long>() < 0) {
                throw ScenarioError("threads: expected a non-negative integer");
            }
            base.optimizer.threads = value.get<std::size_t>();
        } else if (key == "out") {
            base.csv_path = detail::scenario_string(value, key);
        } else if (key == "svg") {
            base.svg_path = detail::scenario_string(value, key);
        } else {
            throw ScenarioError(key + ": unknown key");
        }
    }
    if (saw_resolved_mode && base.scheme.kind != DetectorKind::one_nrd) {
        throw ScenarioError("resolved_mode: only meaningful with scheme \"one-nrd\"");
    }
    validate_scenario(base);
    return base;
}

/// Parses a standalone scenario document (defaults applied to absent keys).
inline ScenarioSpec parse_scenario(const std::string& text) {
    return parse_scenario_overlay(text, ScenarioSpec{});
}

/// Renders a spec as a scenario document.  parse_scenario(render_scenario(s))
/// reproduces s exactly.
inline std::string render_scenario(const ScenarioSpec& spec) {
    nlohmann::ordered_json doc;
    doc["m"] = spec.modes;
    doc["d"] = spec.num_phases;
    doc["k"] = spec.k;
    doc["scheme"] = to_string(spec.scheme);
    if (spec.scheme.kind == DetectorKind::one_nrd) {
        doc["resolved_mode"] = spec.scheme.resolved_mode;
    }
    if (spec.phases) doc["phases"] = *spec.phases;
    doc["starts"] = spec.optimizer.starts;
    doc["max_iters"] = spec.optimizer.max_iters;
    doc["seed"] = spec.optimizer.base_seed;
    doc["simplex_tol"] = spec.optimizer.simplex_tol;
    doc["objective_tol"] = spec.optimizer.objective_tol;
    doc["threads"] = spec.optimizer.threads;
    if (spec.efficiency_grid) doc["p_grid"] = *spec.efficiency_grid;
    if (spec.csv_path) doc["out"] = *spec.csv_path;
    if (spec.svg_path) doc["svg"] = *spec.svg_path;
    return doc.dump(2) + "\n";
}

/// Optimizes the scenario's device with the scenario's controls.
inline Optimum minimize_variance(const ScenarioSpec& spec) {
    validate_scenario(spec);
    return minimize_variance(spec.modes, spec.num_phases, spec.scheme, spec.optimizer);
}

}  // namespace qufti
