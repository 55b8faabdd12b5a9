#pragma once

#include <string>
#include <vector>

#include "taspdmd/instance.hpp"
#include "taspdmd/solution.hpp"

namespace taspdmd {

enum class HandlingTerm {
    Multiply,  // pallets * time-per-pallet (default, dimensionally sound)
    Divide,    // pallets / time-per-pallet (literal model formula)
};

struct EvalOptions {
    HandlingTerm handling_term = HandlingTerm::Multiply;
    bool horizon_hard = false;  // promote horizon violations from warning to hard
};

struct TruckTiming {
    Tick start = 0;     // a_i
    Tick end = 0;       // e_i
    Tick delay = 0;     // max(0, e_i - d_i)
    Tick duration = 0;  // H_i
};

struct DecodedSchedule {
    std::vector<TruckTiming> trucks;  // indexed by truck id
};

enum class ViolationClass {
    DockMode,        // truck direction incompatible with dock mode
    Assignment,      // assignment/sequence inconsistency, truck missing or duplicated
    Sequence,        // malformed sequence entries
    TimeWindow,      // start before arrival
    Horizon,         // completion beyond planning horizon
};

enum class Severity { Hard, Warning };

struct Violation {
    ViolationClass cls;
    Severity severity;
    std::string message;
};

/// Service duration of one truck at one dock, in ticks:
/// pallet handling + travel of its pallets to/from storage + mixed-dock
/// reaction time. The travel term is quantized to a tick.
Tick service_duration(const Instance& instance,
                      const std::vector<std::vector<double>>& distances,
                      const TruckSpec& truck, int dock_index, DockMode mode,
                      const EvalOptions& options = {});

/// Pallet-weighted dock-to-storage distance of one truck at one dock (meters).
double truck_handling_distance(const Instance& instance,
                               const std::vector<std::vector<double>>& distances,
                               const TruckSpec& truck, int dock_index);

DecodedSchedule decode(const Instance& instance, const Solution& solution,
                       const EvalOptions& options = {});

ObjectiveVector evaluate(const Instance& instance, const Solution& solution,
                         const EvalOptions& options = {});

ObjectiveVector objectives_of(const Instance& instance, const Solution& solution,
                              const DecodedSchedule& schedule);

/// Violations are data, not errors: empty (of hard entries) means feasible.
std::vector<Violation> check_feasibility(const Instance& instance, const Solution& solution,
                                         const EvalOptions& options = {});

bool is_feasible(const Instance& instance, const Solution& solution,
                 const EvalOptions& options = {});

/// Per-dock busy-time share of the overall completion time, in [0, 1].
std::vector<double> dock_utilization(const Instance& instance, const Solution& solution,
                                     const EvalOptions& options = {});

struct GanttRecord {
    int dock = 0;
    int truck = 0;
    Direction direction = Direction::Inbound;
    double start = 0.0;  // minutes
    double end = 0.0;
    DockMode mode = DockMode::Mixed;
};

/// One record per truck, sorted by (dock, start).
std::vector<GanttRecord> gantt_export(const Instance& instance, const Solution& solution,
                                      const EvalOptions& options = {});

}  // namespace taspdmd
