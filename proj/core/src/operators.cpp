#include "taspdmd/operators.hpp"

#include <algorithm>
#include <cassert>
#include <limits>

namespace taspdmd {

const char* to_string(DestroyPrimitive p) {
    switch (p) {
        case DestroyPrimitive::rRd: return "rRd";
        case DestroyPrimitive::rMxTar: return "rMxTar";
        default: return "rMxM";
    }
}

const char* to_string(RepairPrimitive p) {
    switch (p) {
        case RepairPrimitive::iBck: return "iBck";
        case RepairPrimitive::iFwd: return "iFwd";
        case RepairPrimitive::iSwap: return "iSwap";
        case RepairPrimitive::iUp: return "iUp";
        case RepairPrimitive::iDown: return "iDown";
        case RepairPrimitive::iDockInsert: return "iDockInsert";
        default: return "iBtwInsert";
    }
}

const char* to_string(ComprehensivePrimitive p) {
    switch (p) {
        case ComprehensivePrimitive::riInD2D: return "riInD2D";
        case ComprehensivePrimitive::riOuD2D: return "riOuD2D";
        default: return "riFlxD2D";
    }
}

const char* to_string(PerturbationOp p) {
    switch (p) {
        case PerturbationOp::P1: return "Chn2I";
        case PerturbationOp::P2: return "Chn2F";
        default: return "Chn2O";
    }
}

DockMode perturbation_target(PerturbationOp p) {
    switch (p) {
        case PerturbationOp::P1: return DockMode::UnloadOnly;
        case PerturbationOp::P2: return DockMode::Mixed;
        default: return DockMode::LoadOnly;
    }
}

std::string LocalSearchAction::name() const {
    if (comprehensive) return to_string(*comprehensive);
    return std::string(to_string(*destroy)) + "&" + to_string(*repair);
}

const std::array<LocalSearchAction, 16>& action_table() {
    using D = DestroyPrimitive;
    using R = RepairPrimitive;
    using C = ComprehensivePrimitive;
    static const std::array<LocalSearchAction, 16> table = {{
        {1, D::rRd, R::iBck, {}, "Sequence Adjustment"},
        {2, D::rRd, R::iFwd, {}, "Sequence Adjustment"},
        {3, D::rRd, R::iSwap, {}, "Sequence & Dock Adjustment"},
        {4, D::rRd, R::iUp, {}, "Dock Adjustment"},
        {5, D::rRd, R::iDown, {}, "Dock Adjustment"},
        {6, D::rMxTar, R::iBck, {}, "Sequence Adjustment"},
        {7, D::rMxTar, R::iSwap, {}, "Distance & Dock Adjustment"},
        {8, D::rMxM, R::iSwap, {}, "Distance & Dock Adjustment"},
        {9, D::rMxM, R::iUp, {}, "Sequence & Dock Adjustment"},
        {10, D::rRd, R::iDockInsert, {}, "Sequence & Dock Adjustment"},
        {11, D::rRd, R::iBtwInsert, {}, "Sequence & Dock Adjustment"},
        {12, D::rMxTar, R::iDockInsert, {}, "Sequence & Dock Adjustment"},
        {13, D::rMxTar, R::iBtwInsert, {}, "Sequence & Dock Adjustment"},
        {14, {}, {}, C::riInD2D, "Dock Adjustment"},
        {15, {}, {}, C::riOuD2D, "Dock Adjustment"},
        {16, {}, {}, C::riFlxD2D, "Dock Adjustment"},
    }};
    return table;
}

const LocalSearchAction& action(int id) {
    if (id < 1 || id > 16) throw std::out_of_range("action id must be in 1..16");
    return action_table()[id - 1];
}

double truck_mu(const OperatorContext& ctx, const Solution& solution, int truck_id) {
    return truck_handling_distance(ctx.instance, ctx.distances, ctx.instance.trucks[truck_id],
                                   solution.assignment[truck_id]);
}

namespace {

void erase_from_sequence(Solution& s, int dock, int truck) {
    auto& seq = s.sequences[dock];
    seq.erase(std::find(seq.begin(), seq.end(), truck));
}

void insert_at(Solution& s, int truck, int dock, int pos) {
    auto& seq = s.sequences[dock];
    seq.insert(seq.begin() + pos, truck);
    s.assignment[truck] = dock;
}

int position_of(const Solution& s, int truck) {
    const auto& seq = s.sequences[s.assignment[truck]];
    return static_cast<int>(std::find(seq.begin(), seq.end(), truck) - seq.begin());
}

double scalar_of(const OperatorContext& ctx, const Solution& s) {
    return scalarize(evaluate(ctx.instance, s, ctx.eval), ctx.baseline);
}

std::vector<int> docks_with_mode(const Solution& s, DockMode mode) {
    std::vector<int> out;
    for (std::size_t k = 0; k < s.modes.size(); ++k)
        if (s.modes[k] == mode) out.push_back(static_cast<int>(k));
    return out;
}

std::vector<int> compatible_docks(const Solution& s, Direction dir) {
    std::vector<int> out;
    for (std::size_t k = 0; k < s.modes.size(); ++k)
        if (mode_serves(s.modes[k], dir)) out.push_back(static_cast<int>(k));
    return out;
}

}  // namespace

DestroyResult destroy(const OperatorContext& ctx, const Solution& solution,
                      DestroyPrimitive primitive, Rng& rng) {
    const std::size_t nt = ctx.instance.trucks.size();
    if (nt == 0) throw ValidationError("cannot destroy an empty solution");

    int chosen = -1;
    switch (primitive) {
        case DestroyPrimitive::rRd:
            chosen = static_cast<int>(rng.index(nt));
            break;
        case DestroyPrimitive::rMxTar: {
            const DecodedSchedule schedule = decode(ctx.instance, solution, ctx.eval);
            Tick best = -1;
            for (std::size_t t = 0; t < nt; ++t) {
                if (schedule.trucks[t].delay > best) {
                    best = schedule.trucks[t].delay;
                    chosen = static_cast<int>(t);
                }
            }
            break;
        }
        case DestroyPrimitive::rMxM: {
            double best = -1.0;
            for (std::size_t t = 0; t < nt; ++t) {
                const double mu = truck_mu(ctx, solution, static_cast<int>(t));
                if (mu > best) {
                    best = mu;
                    chosen = static_cast<int>(t);
                }
            }
            break;
        }
    }

    DestroyResult result;
    result.partial = solution;
    result.removed_truck = chosen;
    result.original_dock = solution.assignment[chosen];
    result.original_position = position_of(solution, chosen);
    erase_from_sequence(result.partial, result.original_dock, chosen);
    return result;
}

MoveResult repair(const OperatorContext& ctx, const DestroyResult& partial,
                  RepairPrimitive primitive, Rng& rng) {
    const int truck = partial.removed_truck;
    const Direction dir = ctx.instance.trucks[truck].direction;

    Solution restored = partial.partial;
    insert_at(restored, truck, partial.original_dock, partial.original_position);

    switch (primitive) {
        case RepairPrimitive::iBck:
        case RepairPrimitive::iFwd: {
            auto& seq = restored.sequences[partial.original_dock];
            const int pos = partial.original_position;
            if (primitive == RepairPrimitive::iBck) {
                if (pos == 0) return {restored, false};  // boundary no-op
                std::swap(seq[pos - 1], seq[pos]);
            } else {
                if (pos + 1 >= static_cast<int>(seq.size())) return {restored, false};
                std::swap(seq[pos], seq[pos + 1]);
            }
            return {restored, true};
        }
        case RepairPrimitive::iSwap: {
            std::vector<int> others;
            for (const auto& t : ctx.instance.trucks)
                if (t.id != truck && t.direction == dir) others.push_back(t.id);
            if (others.empty()) return {restored, false};
            const int other = others[rng.index(others.size())];
            const int dock_a = restored.assignment[truck];
            const int dock_b = restored.assignment[other];
            const int pos_a = position_of(restored, truck);
            const int pos_b = position_of(restored, other);
            restored.sequences[dock_a][pos_a] = other;
            restored.sequences[dock_b][pos_b] = truck;
            restored.assignment[truck] = dock_b;
            restored.assignment[other] = dock_a;
            return {restored, true};
        }
        case RepairPrimitive::iUp:
        case RepairPrimitive::iDown: {
            // Rank compatible docks by this truck's weighted handling distance;
            // "up" means the next smaller distance, "down" the next larger.
            const double here = truck_handling_distance(
                ctx.instance, ctx.distances, ctx.instance.trucks[truck], partial.original_dock);
            int target = -1;
            double target_w = 0.0;
            for (int k : compatible_docks(restored, dir)) {
                if (k == partial.original_dock) continue;
                const double w = truck_handling_distance(ctx.instance, ctx.distances,
                                                         ctx.instance.trucks[truck], k);
                if (primitive == RepairPrimitive::iUp) {
                    if (w < here && (target < 0 || w > target_w)) { target = k; target_w = w; }
                } else {
                    if (w > here && (target < 0 || w < target_w)) { target = k; target_w = w; }
                }
            }
            if (target < 0) return {restored, false};
            Solution moved = partial.partial;
            insert_at(moved, truck, target, static_cast<int>(moved.sequences[target].size()));
            return {moved, true};
        }
        case RepairPrimitive::iDockInsert: {
            const auto& base_seq = partial.partial.sequences[partial.original_dock];
            const int n_positions = static_cast<int>(base_seq.size()) + 1;
            if (n_positions == 1) return {restored, false};  // single position, nothing to try
            double best_value = scalar_of(ctx, restored);
            Solution best = restored;
            bool improved = false;
            for (int pos = 0; pos < n_positions; ++pos) {
                if (pos == partial.original_position) continue;
                Solution candidate = partial.partial;
                insert_at(candidate, truck, partial.original_dock, pos);
                const double value = scalar_of(ctx, candidate);
                if (value < best_value) {
                    best_value = value;
                    best = std::move(candidate);
                    improved = true;
                }
            }
            return {best, improved};
        }
        case RepairPrimitive::iBtwInsert: {
            std::vector<int> docks;
            for (int k : compatible_docks(restored, dir))
                if (k != partial.original_dock) docks.push_back(k);
            if (docks.empty()) return {restored, false};
            const int dock = docks[rng.index(docks.size())];
            Solution moved = partial.partial;
            const int pos = static_cast<int>(rng.index(moved.sequences[dock].size() + 1));
            insert_at(moved, truck, dock, pos);
            return {moved, true};
        }
    }
    return {restored, false};
}

MoveResult comprehensive(const OperatorContext& ctx, const Solution& solution,
                         ComprehensivePrimitive primitive, Rng& rng) {
    DockMode mode;
    switch (primitive) {
        case ComprehensivePrimitive::riInD2D: mode = DockMode::UnloadOnly; break;
        case ComprehensivePrimitive::riOuD2D: mode = DockMode::LoadOnly; break;
        default: mode = DockMode::Mixed; break;
    }
    const std::vector<int> docks = docks_with_mode(solution, mode);
    if (docks.size() < 2) return {solution, false};
    const std::size_t i = rng.index(docks.size());
    std::size_t j = rng.index(docks.size() - 1);
    if (j >= i) ++j;
    const int a = docks[i];
    const int b = docks[j];

    Solution next = solution;
    std::swap(next.sequences[a], next.sequences[b]);
    for (int t : next.sequences[a]) next.assignment[t] = a;
    for (int t : next.sequences[b]) next.assignment[t] = b;
    return {next, true};
}

MoveResult apply_action(const OperatorContext& ctx, const Solution& solution,
                        const LocalSearchAction& act, Rng& rng) {
    if (act.comprehensive) return comprehensive(ctx, solution, *act.comprehensive, rng);
    const DestroyResult partial = destroy(ctx, solution, *act.destroy, rng);
    return repair(ctx, partial, *act.repair, rng);
}

MoveResult perturb(const OperatorContext& ctx, const Solution& solution, PerturbationOp op,
                   Rng& rng) {
    const DockMode target = perturbation_target(op);
    const std::size_t nd = solution.modes.size();

    bool has_inbound = false;
    bool has_outbound = false;
    for (const auto& t : ctx.instance.trucks) {
        if (t.direction == Direction::Inbound) has_inbound = true;
        else has_outbound = true;
    }

    for (std::size_t attempt = 0; attempt < nd; ++attempt) {
        const int dock = static_cast<int>(rng.index(nd));
        if (solution.modes[dock] == target) continue;  // no-op draw, try another dock
        Solution next = solution;
        next.modes[dock] = target;

        bool unload_capable = false;
        bool load_capable = false;
        for (DockMode m : next.modes) {
            if (mode_serves(m, Direction::Inbound)) unload_capable = true;
            if (mode_serves(m, Direction::Outbound)) load_capable = true;
        }
        if ((has_inbound && !unload_capable) || (has_outbound && !load_capable)) continue;

        // Trucks stranded on a now-incompatible dock move to a random
        // compatible dock, appended at the end of its sequence.
        std::vector<int> stranded;
        for (int t : next.sequences[dock])
            if (!mode_serves(target, ctx.instance.trucks[t].direction)) stranded.push_back(t);
        for (int t : stranded) {
            erase_from_sequence(next, dock, t);
            const auto docks = compatible_docks(next, ctx.instance.trucks[t].direction);
            const int to = docks[rng.index(docks.size())];
            insert_at(next, t, to, static_cast<int>(next.sequences[to].size()));
        }
        return {next, true};
    }
    return {solution, false};
}

}  // namespace taspdmd
