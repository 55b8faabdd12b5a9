#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "taspdmd/instance.hpp"

namespace taspdmd {

enum class DockMode { UnloadOnly, LoadOnly, Mixed };

inline const char* to_string(DockMode m) {
    switch (m) {
        case DockMode::UnloadOnly: return "unload";
        case DockMode::LoadOnly: return "load";
        default: return "mixed";
    }
}

inline bool mode_serves(DockMode mode, Direction dir) {
    if (mode == DockMode::Mixed) return true;
    return dir == Direction::Inbound ? mode == DockMode::UnloadOnly
                                     : mode == DockMode::LoadOnly;
}

/// Decision state: per-dock mode, truck-to-dock assignment, and the ordered
/// truck sequence at each dock. Truck/dock ids double as indices.
struct Solution {
    std::vector<DockMode> modes;            // per dock
    std::vector<int> assignment;            // truck -> dock
    std::vector<std::vector<int>> sequences;  // per dock, ordered truck ids

    bool operator==(const Solution&) const = default;

    /// Canonical encoding for dedup and deterministic tie-breaking.
    std::string encode() const {
        std::string s;
        for (DockMode m : modes) s += std::to_string(static_cast<int>(m)) + ",";
        s += "|";
        for (std::size_t k = 0; k < sequences.size(); ++k) {
            for (int t : sequences[k]) s += std::to_string(t) + ",";
            s += ";";
        }
        return s;
    }
};

struct ObjectiveVector {
    double tardiness = 0.0;  // f1, minutes
    double makespan = 0.0;   // f2, minutes
    double distance = 0.0;   // f3, pallet-meters

    bool operator==(const ObjectiveVector&) const = default;

    std::array<double, 3> as_array() const { return {tardiness, makespan, distance}; }
};

/// Pareto dominance for minimization: a <= b componentwise, at least one strict.
inline bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    const auto av = a.as_array();
    const auto bv = b.as_array();
    bool strict = false;
    for (int i = 0; i < 3; ++i) {
        if (av[i] > bv[i]) return false;
        if (av[i] < bv[i]) strict = true;
    }
    return strict;
}

struct ScalarWeights {
    double tardiness = 1.0;
    double makespan = 0.2;
    double distance = 0.05;
};

/// Weighted baseline-normalized scalarization used for the temperature
/// schedule and the scalar solution measure. Strictly monotone in each
/// component; baseline components are guarded below by 1.
inline double scalarize(const ObjectiveVector& o, const ObjectiveVector& baseline,
                        const ScalarWeights& w = {}) {
    const auto ov = o.as_array();
    const auto bv = baseline.as_array();
    const std::array<double, 3> wv = {w.tardiness, w.makespan, w.distance};
    double s = 0.0;
    for (int i = 0; i < 3; ++i) s += wv[i] * ov[i] / std::max(bv[i], 1.0);
    return s;
}

}  // namespace taspdmd
