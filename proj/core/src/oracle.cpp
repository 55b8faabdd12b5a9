#include "taspdmd/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace taspdmd {
namespace oracle {

namespace {

// The evaluator below deliberately re-derives every quantity from the raw
// instance data (distances included) instead of calling the schedule module,
// so the two paths can check each other.

double pallet_distance(const Instance& inst, const TruckSpec& truck, int dock) {
    double sum = 0.0;
    for (const auto& [p, n] : truck.cargo) {
        const StorageArea* area = nullptr;
        const int area_id = inst.storage.placement.at(p);
        for (const auto& a : inst.storage.areas)
            if (a.id == area_id) area = &a;
        const double dx = inst.docks[dock].x - area->x;
        const double dy = inst.docks[dock].y - area->y;
        sum += n * std::sqrt(dx * dx + dy * dy);
    }
    return sum;
}

Tick duration_ticks(const Instance& inst, const TruckSpec& truck, int dock, bool mixed,
                    const EvalOptions& options) {
    const int pallets = truck.total_pallets();
    Tick handling;
    if (options.handling_term == HandlingTerm::Multiply) {
        handling = static_cast<Tick>(pallets) * inst.unit_handle_time;
    } else {
        handling = static_cast<Tick>(
            std::llround(pallets / (static_cast<double>(inst.unit_handle_time) / kTicksPerMinute) *
                         kTicksPerMinute));
    }
    const Tick travel = static_cast<Tick>(
        std::llround(pallet_distance(inst, truck, dock) / inst.agv_speed * kTicksPerMinute));
    return handling + travel + (mixed ? inst.mixed_reaction_time : 0);
}

std::vector<int> compatible(const Instance& inst, const std::vector<DockMode>& modes,
                            Direction dir) {
    std::vector<int> out;
    for (std::size_t k = 0; k < modes.size(); ++k)
        if (mode_serves(modes[k], dir)) out.push_back(static_cast<int>(k));
    return out;
}

std::uint64_t factorial(std::size_t n) {
    std::uint64_t f = 1;
    for (std::size_t i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

ObjectiveVector evaluate(const Instance& inst, const Solution& solution,
                         const EvalOptions& options) {
    Tick total_delay = 0;
    Tick latest = 0;
    double distance = 0.0;
    for (std::size_t k = 0; k < solution.sequences.size(); ++k) {
        const bool mixed = solution.modes[k] == DockMode::Mixed;
        Tick prev_end = 0;
        for (int t : solution.sequences[k]) {
            const TruckSpec& truck = inst.trucks[t];
            const Tick start = std::max(truck.arrival, prev_end);
            const Tick end = start + duration_ticks(inst, truck, static_cast<int>(k), mixed, options);
            total_delay += std::max<Tick>(0, end - truck.due);
            latest = std::max(latest, end);
            prev_end = end;
        }
    }
    for (std::size_t t = 0; t < inst.trucks.size(); ++t)
        distance += pallet_distance(inst, inst.trucks[t], solution.assignment[t]);
    return {static_cast<double>(total_delay) / kTicksPerMinute,
            static_cast<double>(latest) / kTicksPerMinute, distance};
}

std::uint64_t count_states(const Instance& inst) {
    const int nd = inst.dock_count();
    const int nt = inst.truck_count();
    std::vector<DockMode> modes(nd, DockMode::UnloadOnly);
    std::uint64_t total = 0;

    std::vector<int> group_size(nd, 0);
    auto count_assignments = [&](auto&& self, int truck) -> std::uint64_t {
        if (truck == nt) {
            std::uint64_t perms = 1;
            for (int k = 0; k < nd; ++k) perms *= factorial(group_size[k]);
            return perms;
        }
        std::uint64_t sum = 0;
        for (int k = 0; k < nd; ++k) {
            if (!mode_serves(modes[k], inst.trucks[truck].direction)) continue;
            ++group_size[k];
            sum += self(self, truck + 1);
            --group_size[k];
        }
        return sum;
    };

    auto walk_modes = [&](auto&& self, int dock) -> void {
        if (dock == nd) {
            total += count_assignments(count_assignments, 0);
            return;
        }
        for (DockMode m : {DockMode::UnloadOnly, DockMode::LoadOnly, DockMode::Mixed}) {
            modes[dock] = m;
            self(self, dock + 1);
        }
    };
    walk_modes(walk_modes, 0);
    return total;
}

std::vector<FrontEntry> enumerate_pareto(const Instance& inst, const Limits& limits,
                                         const EvalOptions& options) {
    const std::uint64_t states = count_states(inst);
    if (states > limits.max_states) throw StateSpaceTooLarge(states);

    const int nd = inst.dock_count();
    const int nt = inst.truck_count();
    std::vector<FrontEntry> front;

    auto offer = [&](const Solution& sol) {
        const ObjectiveVector obj = oracle::evaluate(inst, sol, options);
        for (auto& e : front) {
            if (dominates(e.objectives, obj)) return;
            if (e.objectives == obj) {
                if (sol.encode() < e.solution.encode()) e.solution = sol;
                return;
            }
        }
        std::erase_if(front, [&](const FrontEntry& e) { return dominates(obj, e.objectives); });
        front.push_back({sol, obj});
    };

    Solution sol;
    sol.modes.assign(nd, DockMode::UnloadOnly);
    sol.assignment.assign(nt, -1);
    sol.sequences.assign(nd, {});

    // Per-dock truck groups for the current assignment; permuted at the leaf.
    std::vector<std::vector<int>> groups(nd);

    auto walk_permutations = [&](auto&& self, int dock) -> void {
        if (dock == nd) {
            offer(sol);
            return;
        }
        std::vector<int> perm = groups[dock];
        std::sort(perm.begin(), perm.end());
        do {
            sol.sequences[dock] = perm;
            self(self, dock + 1);
        } while (std::next_permutation(perm.begin(), perm.end()));
    };

    auto walk_assignments = [&](auto&& self, int truck) -> void {
        if (truck == nt) {
            walk_permutations(walk_permutations, 0);
            return;
        }
        for (int k = 0; k < nd; ++k) {
            if (!mode_serves(sol.modes[k], inst.trucks[truck].direction)) continue;
            groups[k].push_back(truck);
            sol.assignment[truck] = k;
            self(self, truck + 1);
            groups[k].pop_back();
        }
    };

    auto walk_modes = [&](auto&& self, int dock) -> void {
        if (dock == nd) {
            walk_assignments(walk_assignments, 0);
            return;
        }
        for (DockMode m : {DockMode::UnloadOnly, DockMode::LoadOnly, DockMode::Mixed}) {
            sol.modes[dock] = m;
            self(self, dock + 1);
        }
    };
    walk_modes(walk_modes, 0);

    std::sort(front.begin(), front.end(), [](const FrontEntry& a, const FrontEntry& b) {
        return a.objectives.as_array() < b.objectives.as_array();
    });
    return front;
}

std::string front_to_json_text(const std::vector<FrontEntry>& front) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& e : front) {
        j.push_back({{"objectives",
                      {{"tardiness", e.objectives.tardiness},
                       {"makespan", e.objectives.makespan},
                       {"distance", e.objectives.distance}}},
                     {"solution", e.solution.encode()}});
    }
    return j.dump(2) + "\n";
}

}  // namespace oracle
}  // namespace taspdmd
