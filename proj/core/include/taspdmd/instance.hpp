#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace taspdmd {

/// Times are held as integer ticks of 0.01 minute so that schedule decoding
/// is exact and platform independent.
using Tick = std::int64_t;
inline constexpr Tick kTicksPerMinute = 100;

inline double ticks_to_minutes(Tick t) { return static_cast<double>(t) / kTicksPerMinute; }
inline Tick minutes_to_ticks(double m) { return static_cast<Tick>(std::llround(m * kTicksPerMinute)); }

enum class Direction { Inbound, Outbound };

inline const char* to_string(Direction d) {
    return d == Direction::Inbound ? "inbound" : "outbound";
}

struct TruckSpec {
    int id = 0;
    Direction direction = Direction::Inbound;
    Tick arrival = 0;
    Tick due = 0;
    std::map<int, int> cargo;  // pallet type -> pallet count

    int total_pallets() const {
        int a = 0;
        for (const auto& [p, n] : cargo) a += n;
        return a;
    }
};

struct DockSpec {
    int id = 0;
    double x = 0.0;
    double y = 0.0;
};

struct StorageArea {
    int id = 0;
    double x = 0.0;
    double y = 0.0;
};

struct StorageMap {
    std::vector<StorageArea> areas;
    std::map<int, int> placement;  // pallet type -> area id

    int area_of(int pallet_type) const {
        auto it = placement.find(pallet_type);
        if (it == placement.end())
            throw std::out_of_range("pallet type " + std::to_string(pallet_type) + " has no storage area");
        return it->second;
    }
};

class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Instance {
    std::vector<DockSpec> docks;
    std::vector<TruckSpec> trucks;
    StorageMap storage;

    Tick unit_handle_time = 0;       // minutes per pallet
    double agv_speed = 1.0;          // meters per minute
    Tick mixed_reaction_time = 0;    // switching reaction time at mixed docks
    Tick horizon = 0;                // planning horizon

    int dock_count() const { return static_cast<int>(docks.size()); }
    int truck_count() const { return static_cast<int>(trucks.size()); }

    /// Throws ValidationError naming the first violated invariant.
    void validate() const;
};

/// Euclidean dock-to-area distances, indexed [dock index][area index]
/// (indices into Instance::docks / StorageMap::areas).
std::vector<std::vector<double>> distance_matrix(const Instance& instance);

Instance load_instance(const std::string& path);
void save_instance(const Instance& instance, const std::string& path);

Instance instance_from_json_text(const std::string& text);
std::string instance_to_json_text(const Instance& instance);

struct GeneratorConfig {
    int dock_count = 3;
    int truck_count = 20;
    double inbound_fraction = 0.4;
    int pallet_type_count = 6;
    double horizon = 300.0;          // minutes
    std::uint64_t seed = 1;

    // Arrival window and service-slack bounds, minutes. Defaults are tight
    // enough that docks contend and tardiness is a live objective.
    double arrival_window_fraction = 0.5;  // arrivals uniform over [0, fraction*horizon]
    double slack_min = 30.0;
    double slack_max = 120.0;

    // Cargo size bounds.
    int max_types_per_truck = 3;
    int max_pallets_per_type = 8;

    // Layout: docks on a line, storage areas on a grid opposite them.
    double dock_spacing = 12.0;
    double area_spacing = 10.0;
    double area_offset = 30.0;  // distance from dock line to first grid row

    void validate() const;
};

Instance generate_instance(const GeneratorConfig& config);

}  // namespace taspdmd
