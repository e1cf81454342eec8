// qufti/fock_config.hpp
//
// Photon occupation vectors.  A FockConfig value lists how many photons sit
// in each of the m modes; it serves both as an input description and as a
// measurement outcome label.

#pragma once

#include <compare>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "qufti/error.hpp"

namespace qufti {

/// Occupation-number vector over the interferometer modes.
struct FockConfig {
    std::vector<int> occupations;

    FockConfig() = default;
    explicit FockConfig(std::vector<int> occ) : occupations(std::move(occ)) {
        for (int n : occupations) {
            if (n < 0) {
                throw ConfigurationError("FockConfig: negative occupation number");
            }
        }
    }
    FockConfig(std::initializer_list<int> occ) : FockConfig(std::vector<int>(occ)) {}

    std::size_t modes() const { return occupations.size(); }
    int operator[](std::size_t i) const { return occupations[i]; }

    /// Total photon number.
    int total() const { return std::accumulate(occupations.begin(), occupations.end(), 0); }

    friend bool operator==(const FockConfig&, const FockConfig&) = default;
    friend auto operator<=>(const FockConfig&, const FockConfig&) = default;
};

/// All-ones input |1,...,1> over m modes (k photons per mode if given).
inline FockConfig uniform_input(std::size_t m, int k = 1) {
    if (m == 0) {
        throw InvalidDimensionError("uniform_input: mode count must be >= 1");
    }
    if (k < 1) {
        throw InvalidDimensionError("uniform_input: photons per mode must be >= 1");
    }
    return FockConfig(std::vector<int>(m, k));
}

/// Renders e.g. "(1,0,2)".
inline std::string to_string(const FockConfig& cfg) {
    std::string out = "(";
    for (std::size_t i = 0; i < cfg.modes(); ++i) {
        if (i) out += ",";
        out += std::to_string(cfg[i]);
    }
    out += ")";
    return out;
}

}  // namespace qufti
