#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "taspdmd/schedule.hpp"
#include "taspdmd/solution.hpp"

namespace taspdmd {

/// Exhaustive enumeration of the exact Pareto front on tiny instances.
/// The evaluation path is an independent re-implementation of the schedule
/// decoder, so agreement doubles as a differential test of schedule_eval.
namespace oracle {

struct Limits {
    std::uint64_t max_states = 20'000'000;
};

class StateSpaceTooLarge : public std::runtime_error {
public:
    explicit StateSpaceTooLarge(std::uint64_t count)
        : std::runtime_error("state space too large: " + std::to_string(count) + " states"),
          count(count) {}
    std::uint64_t count;
};

/// Exact count of (mode vector, assignment, per-dock permutation) states.
std::uint64_t count_states(const Instance& instance);

struct FrontEntry {
    Solution solution;
    ObjectiveVector objectives;
};

/// The exact non-dominated set, deduplicated by objective vector
/// (lowest lexicographic solution encoding kept), sorted by (f1, f2, f3).
std::vector<FrontEntry> enumerate_pareto(const Instance& instance, const Limits& limits = {},
                                         const EvalOptions& options = {});

/// Independent objective evaluation (used by enumerate_pareto).
ObjectiveVector evaluate(const Instance& instance, const Solution& solution,
                         const EvalOptions& options = {});

std::string front_to_json_text(const std::vector<FrontEntry>& front);

}  // namespace oracle
}  // namespace taspdmd
