#pragma once

#include <algorithm>
#include <vector>

#include "taspdmd/solution.hpp"

namespace taspdmd {

/// Archive of mutually non-dominating (solution, objectives) pairs.
/// Insertion keeps the invariant: dominated candidates are rejected,
/// newly dominated entries are evicted, duplicate objective vectors are
/// kept once (lowest lexicographic solution encoding wins).
class ParetoArchive {
public:
    struct Entry {
        Solution solution;
        ObjectiveVector objectives;
    };

    bool insert(Solution solution, const ObjectiveVector& objectives) {
        for (auto& e : entries_) {
            if (dominates(e.objectives, objectives)) return false;
            if (e.objectives == objectives) {
                if (solution.encode() < e.solution.encode()) e.solution = std::move(solution);
                return false;
            }
        }
        std::erase_if(entries_, [&](const Entry& e) { return dominates(objectives, e.objectives); });
        entries_.push_back({std::move(solution), objectives});
        return true;
    }

    /// True if insert() would add this point: nothing in the archive
    /// dominates or equals it.
    bool would_accept(const ObjectiveVector& objectives) const {
        for (const auto& e : entries_)
            if (dominates(e.objectives, objectives) || e.objectives == objectives) return false;
        return true;
    }

    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    /// Sorted objective vectors, the comparable "front" view.
    std::vector<ObjectiveVector> front() const {
        std::vector<ObjectiveVector> f;
        f.reserve(entries_.size());
        for (const auto& e : entries_) f.push_back(e.objectives);
        std::sort(f.begin(), f.end(), [](const ObjectiveVector& a, const ObjectiveVector& b) {
            return a.as_array() < b.as_array();
        });
        return f;
    }

private:
    std::vector<Entry> entries_;
};

}  // namespace taspdmd
