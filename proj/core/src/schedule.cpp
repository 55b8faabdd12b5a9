#include "taspdmd/schedule.hpp"

#include <algorithm>

namespace taspdmd {

double truck_handling_distance(const Instance& instance,
                               const std::vector<std::vector<double>>& distances,
                               const TruckSpec& truck, int dock_index) {
    double d = 0.0;
    for (const auto& [p, n] : truck.cargo) {
        const int area_id = instance.storage.area_of(p);
        std::size_t s = 0;
        while (instance.storage.areas[s].id != area_id) ++s;  // ids need not equal indices
        d += n * distances[dock_index][s];
    }
    return d;
}

Tick service_duration(const Instance& instance,
                      const std::vector<std::vector<double>>& distances,
                      const TruckSpec& truck, int dock_index, DockMode mode,
                      const EvalOptions& options) {
    const int pallets = truck.total_pallets();
    Tick handling;
    if (options.handling_term == HandlingTerm::Multiply) {
        handling = pallets * instance.unit_handle_time;
    } else {
        handling = minutes_to_ticks(pallets / ticks_to_minutes(instance.unit_handle_time));
    }
    const double travel_minutes =
        truck_handling_distance(instance, distances, truck, dock_index) / instance.agv_speed;
    Tick h = handling + minutes_to_ticks(travel_minutes);
    if (mode == DockMode::Mixed) h += instance.mixed_reaction_time;
    return h;
}

namespace {

void require_structure(const Instance& instance, const Solution& solution) {
    const std::size_t nd = instance.docks.size();
    const std::size_t nt = instance.trucks.size();
    if (solution.modes.size() != nd || solution.assignment.size() != nt ||
        solution.sequences.size() != nd)
        throw ValidationError("solution shape does not match instance");
    std::vector<int> seen(nt, 0);
    for (std::size_t k = 0; k < nd; ++k) {
        for (int t : solution.sequences[k]) {
            if (t < 0 || static_cast<std::size_t>(t) >= nt)
                throw ValidationError("sequence references unknown truck " + std::to_string(t));
            if (++seen[t] > 1)
                throw ValidationError("truck " + std::to_string(t) + " appears in two sequence slots");
            if (solution.assignment[t] != static_cast<int>(k))
                throw ValidationError("truck " + std::to_string(t) +
                                      " sequenced at a dock other than its assignment");
        }
    }
    for (std::size_t t = 0; t < nt; ++t)
        if (!seen[t]) throw ValidationError("truck " + std::to_string(t) + " missing from sequences");
}

}  // namespace

DecodedSchedule decode(const Instance& instance, const Solution& solution,
                       const EvalOptions& options) {
    require_structure(instance, solution);
    const auto distances = distance_matrix(instance);
    DecodedSchedule schedule;
    schedule.trucks.resize(instance.trucks.size());
    for (std::size_t k = 0; k < solution.sequences.size(); ++k) {
        Tick dock_free = 0;
        for (int t : solution.sequences[k]) {
            const TruckSpec& truck = instance.trucks[t];
            TruckTiming& timing = schedule.trucks[t];
            timing.start = std::max(truck.arrival, dock_free);
            timing.duration = service_duration(instance, distances, truck, static_cast<int>(k),
                                               solution.modes[k], options);
            timing.end = timing.start + timing.duration;
            timing.delay = std::max<Tick>(0, timing.end - truck.due);
            dock_free = timing.end;
        }
    }
    return schedule;
}

ObjectiveVector objectives_of(const Instance& instance, const Solution& solution,
                              const DecodedSchedule& schedule) {
    const auto distances = distance_matrix(instance);
    ObjectiveVector o;
    Tick tardiness = 0;
    Tick makespan = 0;
    for (std::size_t t = 0; t < schedule.trucks.size(); ++t) {
        tardiness += schedule.trucks[t].delay;
        makespan = std::max(makespan, schedule.trucks[t].end);
        o.distance += truck_handling_distance(instance, distances, instance.trucks[t],
                                              solution.assignment[t]);
    }
    o.tardiness = ticks_to_minutes(tardiness);
    o.makespan = ticks_to_minutes(makespan);
    return o;
}

ObjectiveVector evaluate(const Instance& instance, const Solution& solution,
                         const EvalOptions& options) {
    return objectives_of(instance, solution, decode(instance, solution, options));
}

std::vector<Violation> check_feasibility(const Instance& instance, const Solution& solution,
                                         const EvalOptions& options) {
    std::vector<Violation> out;
    const std::size_t nd = instance.docks.size();
    const std::size_t nt = instance.trucks.size();
    if (solution.modes.size() != nd || solution.assignment.size() != nt ||
        solution.sequences.size() != nd) {
        out.push_back({ViolationClass::Assignment, Severity::Hard,
                       "solution shape does not match instance"});
        return out;
    }

    std::vector<int> seen(nt, 0);
    for (std::size_t k = 0; k < nd; ++k) {
        for (int t : solution.sequences[k]) {
            if (t < 0 || static_cast<std::size_t>(t) >= nt) {
                out.push_back({ViolationClass::Sequence, Severity::Hard,
                               "sequence at dock " + std::to_string(k) +
                                   " references unknown truck " + std::to_string(t)});
                continue;
            }
            if (++seen[t] > 1)
                out.push_back({ViolationClass::Assignment, Severity::Hard,
                               "truck " + std::to_string(t) + " sequenced more than once"});
            if (solution.assignment[t] != static_cast<int>(k))
                out.push_back({ViolationClass::Assignment, Severity::Hard,
                               "truck " + std::to_string(t) + " sequenced at dock " +
                                   std::to_string(k) + " but assigned to dock " +
                                   std::to_string(solution.assignment[t])});
        }
    }
    for (std::size_t t = 0; t < nt; ++t) {
        if (!seen[t])
            out.push_back({ViolationClass::Assignment, Severity::Hard,
                           "truck " + std::to_string(t) + " missing from all sequences"});
        const int k = solution.assignment[t];
        if (k < 0 || static_cast<std::size_t>(k) >= nd) {
            out.push_back({ViolationClass::Assignment, Severity::Hard,
                           "truck " + std::to_string(t) + " assigned to unknown dock"});
            continue;
        }
        if (!mode_serves(solution.modes[k], instance.trucks[t].direction))
            out.push_back({ViolationClass::DockMode, Severity::Hard,
                           "truck " + std::to_string(t) + " (" +
                               to_string(instance.trucks[t].direction) + ") assigned to " +
                               to_string(solution.modes[k]) + " dock " + std::to_string(k)});
    }
    if (!out.empty()) return out;  // timing checks need a structurally sound solution

    const DecodedSchedule schedule = decode(instance, solution, options);
    for (std::size_t t = 0; t < nt; ++t) {
        if (schedule.trucks[t].start < instance.trucks[t].arrival)
            out.push_back({ViolationClass::TimeWindow, Severity::Hard,
                           "truck " + std::to_string(t) + " starts before arrival"});
        if (schedule.trucks[t].end > instance.horizon)
            out.push_back({ViolationClass::Horizon,
                           options.horizon_hard ? Severity::Hard : Severity::Warning,
                           "truck " + std::to_string(t) + " completes beyond the horizon"});
    }
    return out;
}

bool is_feasible(const Instance& instance, const Solution& solution, const EvalOptions& options) {
    for (const auto& v : check_feasibility(instance, solution, options))
        if (v.severity == Severity::Hard) return false;
    return true;
}

std::vector<double> dock_utilization(const Instance& instance, const Solution& solution,
                                     const EvalOptions& options) {
    const DecodedSchedule schedule = decode(instance, solution, options);
    Tick t_max = 0;
    for (const auto& t : schedule.trucks) t_max = std::max(t_max, t.end);
    std::vector<double> u(instance.docks.size(), 0.0);
    if (t_max == 0) return u;
    for (std::size_t k = 0; k < solution.sequences.size(); ++k) {
        Tick busy = 0;
        for (int t : solution.sequences[k]) busy += schedule.trucks[t].end - schedule.trucks[t].start;
        u[k] = static_cast<double>(busy) / static_cast<double>(t_max);
    }
    return u;
}

std::vector<GanttRecord> gantt_export(const Instance& instance, const Solution& solution,
                                      const EvalOptions& options) {
    const DecodedSchedule schedule = decode(instance, solution, options);
    std::vector<GanttRecord> records;
    records.reserve(instance.trucks.size());
    for (std::size_t t = 0; t < instance.trucks.size(); ++t) {
        const int k = solution.assignment[t];
        records.push_back({k, static_cast<int>(t), instance.trucks[t].direction,
                           ticks_to_minutes(schedule.trucks[t].start),
                           ticks_to_minutes(schedule.trucks[t].end), solution.modes[k]});
    }
    std::sort(records.begin(), records.end(), [](const GanttRecord& a, const GanttRecord& b) {
        return std::tie(a.dock, a.start, a.truck) < std::tie(b.dock, b.start, b.truck);
    });
    return records;
}

}  // namespace taspdmd
