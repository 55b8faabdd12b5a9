#pragma once

// Shared builders for the test suites: small hand-made instances and
// random-but-feasible solutions independent of the solver's construction.

#include <vector>

#include "taspdmd/instance.hpp"
#include "taspdmd/rng.hpp"
#include "taspdmd/solution.hpp"

namespace testutil {

using namespace taspdmd;

// One dock at the origin, one storage area per pallet type at (3, 4) + offsets
// so the first dock-to-area distance is exactly 5 meters.
inline Instance tiny_instance(int docks, std::vector<TruckSpec> trucks, double te_minutes = 2.0,
                              double v = 1.0, double tau_minutes = 0.0) {
    Instance inst;
    for (int k = 0; k < docks; ++k) inst.docks.push_back({k, 10.0 * k, 0.0});
    int types = 0;
    for (const auto& t : trucks)
        for (const auto& [p, n] : t.cargo) types = std::max(types, p + 1);
    for (int s = 0; s < std::max(types, 1); ++s) {
        inst.storage.areas.push_back({s, 3.0, 4.0 + 7.0 * s});
        inst.storage.placement[s] = s;
    }
    inst.trucks = std::move(trucks);
    inst.unit_handle_time = minutes_to_ticks(te_minutes);
    inst.agv_speed = v;
    inst.mixed_reaction_time = minutes_to_ticks(tau_minutes);
    Tick max_due = 0;
    for (const auto& t : inst.trucks) max_due = std::max(max_due, t.due);
    inst.horizon = max_due + minutes_to_ticks(1000.0);
    inst.validate();
    return inst;
}

inline TruckSpec truck(int id, Direction dir, double arrival, double due,
                       std::map<int, int> cargo = {{0, 1}}) {
    TruckSpec t;
    t.id = id;
    t.direction = dir;
    t.arrival = minutes_to_ticks(arrival);
    t.due = minutes_to_ticks(due);
    t.cargo = std::move(cargo);
    return t;
}

// Random feasible solution: draws modes until both present directions are
// covered, then assigns each truck to a uniformly random compatible dock.
inline Solution random_solution(const Instance& inst, Rng& rng) {
    const int nd = inst.dock_count();
    bool has_in = false;
    bool has_out = false;
    for (const auto& t : inst.trucks)
        (t.direction == Direction::Inbound ? has_in : has_out) = true;

    Solution sol;
    for (;;) {
        sol.modes.clear();
        bool in_ok = false;
        bool out_ok = false;
        for (int k = 0; k < nd; ++k) {
            sol.modes.push_back(static_cast<DockMode>(rng.index(3)));
            in_ok = in_ok || mode_serves(sol.modes.back(), Direction::Inbound);
            out_ok = out_ok || mode_serves(sol.modes.back(), Direction::Outbound);
        }
        if ((in_ok || !has_in) && (out_ok || !has_out)) break;
    }
    sol.assignment.assign(inst.truck_count(), -1);
    sol.sequences.assign(nd, {});
    for (int i = 0; i < inst.truck_count(); ++i) {
        std::vector<int> compatible;
        for (int k = 0; k < nd; ++k)
            if (mode_serves(sol.modes[k], inst.trucks[i].direction)) compatible.push_back(k);
        const int dock = compatible[rng.index(compatible.size())];
        sol.assignment[i] = dock;
        sol.sequences[dock].push_back(i);
    }
    for (auto& seq : sol.sequences) rng.shuffle(seq);
    for (int k = 0; k < nd; ++k)
        for (int i : sol.sequences[k]) sol.assignment[i] = k;
    return sol;
}

}  // namespace testutil
