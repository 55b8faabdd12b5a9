#pragma once

#include <array>
#include <optional>
#include <string>

#include "taspdmd/rng.hpp"
#include "taspdmd/schedule.hpp"
#include "taspdmd/solution.hpp"

namespace taspdmd {

enum class DestroyPrimitive { rRd, rMxTar, rMxM };
enum class RepairPrimitive { iBck, iFwd, iSwap, iUp, iDown, iDockInsert, iBtwInsert };
enum class ComprehensivePrimitive { riInD2D, riOuD2D, riFlxD2D };

const char* to_string(DestroyPrimitive p);
const char* to_string(RepairPrimitive p);
const char* to_string(ComprehensivePrimitive p);

/// One of the 16 destroy/repair combinations. Ids are 1-based and frozen;
/// 14..16 are the comprehensive dock-to-dock swaps with no repair half.
struct LocalSearchAction {
    int id = 0;
    std::optional<DestroyPrimitive> destroy;
    std::optional<RepairPrimitive> repair;
    std::optional<ComprehensivePrimitive> comprehensive;
    std::string target;

    std::string name() const;
};

const std::array<LocalSearchAction, 16>& action_table();
const LocalSearchAction& action(int id);  // 1..16

enum class PerturbationOp { P1, P2, P3 };  // Chn2I / Chn2F / Chn2O

const char* to_string(PerturbationOp p);
DockMode perturbation_target(PerturbationOp p);

/// Shared inputs for operator application. The baseline anchors the
/// scalarized measure used by the best-position repair.
struct OperatorContext {
    const Instance& instance;
    const std::vector<std::vector<double>>& distances;
    ObjectiveVector baseline;
    EvalOptions eval{};
};

struct MoveResult {
    Solution solution;
    bool moved = true;  // false: operator was inapplicable, input returned as-is
};

struct DestroyResult {
    Solution partial;        // truck excised from its sequence, assignment retained
    int removed_truck = -1;
    int original_dock = -1;
    int original_position = -1;
};

DestroyResult destroy(const OperatorContext& ctx, const Solution& solution,
                      DestroyPrimitive primitive, Rng& rng);

MoveResult repair(const OperatorContext& ctx, const DestroyResult& partial,
                  RepairPrimitive primitive, Rng& rng);

MoveResult comprehensive(const OperatorContext& ctx, const Solution& solution,
                         ComprehensivePrimitive primitive, Rng& rng);

MoveResult apply_action(const OperatorContext& ctx, const Solution& solution,
                        const LocalSearchAction& act, Rng& rng);

MoveResult perturb(const OperatorContext& ctx, const Solution& solution,
                   PerturbationOp op, Rng& rng);

/// Weighted cargo handling distance of one truck at its assigned dock.
double truck_mu(const OperatorContext& ctx, const Solution& solution, int truck_id);

}  // namespace taspdmd
