#include <algorithm>
#include <cmath>

#include "taspdmd/instance.hpp"
#include "taspdmd/rng.hpp"

namespace taspdmd {

void GeneratorConfig::validate() const {
    if (dock_count < 1) throw ValidationError("dock_count must be >= 1");
    if (truck_count < 1) throw ValidationError("truck_count must be >= 1");
    if (inbound_fraction <= 0.0 || inbound_fraction >= 1.0)
        throw ValidationError("inbound_fraction must be in (0, 1)");
    if (pallet_type_count < 1) throw ValidationError("pallet_type_count must be >= 1");
    if (horizon <= 0.0) throw ValidationError("horizon must be > 0");
    if (arrival_window_fraction <= 0.0 || arrival_window_fraction > 1.0)
        throw ValidationError("arrival_window_fraction must be in (0, 1]");
    if (slack_min <= 0.0 || slack_max < slack_min)
        throw ValidationError("slack bounds must satisfy 0 < slack_min <= slack_max");
    if (max_types_per_truck < 1) throw ValidationError("max_types_per_truck must be >= 1");
    if (max_pallets_per_type < 1) throw ValidationError("max_pallets_per_type must be >= 1");
    if (dock_spacing <= 0.0 || area_spacing <= 0.0 || area_offset <= 0.0)
        throw ValidationError("layout spacings must be > 0");
}

Instance generate_instance(const GeneratorConfig& config) {
    config.validate();
    Rng rng(config.seed);

    Instance inst;
    inst.unit_handle_time = minutes_to_ticks(2.0);
    inst.agv_speed = 60.0;  // meters per minute
    inst.mixed_reaction_time = minutes_to_ticks(5.0);

    // Docks on a line, storage areas on a rectangular grid opposite them.
    for (int k = 0; k < config.dock_count; ++k)
        inst.docks.push_back({k, k * config.dock_spacing, 0.0});
    const int grid_cols = std::max(1, static_cast<int>(std::ceil(std::sqrt(config.pallet_type_count))));
    for (int s = 0; s < config.pallet_type_count; ++s) {
        const int row = s / grid_cols;
        const int col = s % grid_cols;
        inst.storage.areas.push_back(
            {s, col * config.area_spacing, config.area_offset + row * config.area_spacing});
        inst.storage.placement[s] = s;  // one area per pallet type
    }

    const int inbound_count =
        static_cast<int>(std::lround(config.inbound_fraction * config.truck_count));
    const Tick arrival_span =
        minutes_to_ticks(config.arrival_window_fraction * config.horizon);
    for (int i = 0; i < config.truck_count; ++i) {
        TruckSpec t;
        t.id = i;
        t.direction = i < inbound_count ? Direction::Inbound : Direction::Outbound;
        t.arrival = rng.uniform_int(0, arrival_span);
        t.due = t.arrival + rng.uniform_int(minutes_to_ticks(config.slack_min),
                                            minutes_to_ticks(config.slack_max));
        const int n_types = static_cast<int>(
            rng.uniform_int(1, std::min(config.max_types_per_truck, config.pallet_type_count)));
        std::vector<int> types(config.pallet_type_count);
        for (int p = 0; p < config.pallet_type_count; ++p) types[p] = p;
        rng.shuffle(types);
        for (int n = 0; n < n_types; ++n)
            t.cargo[types[n]] = static_cast<int>(rng.uniform_int(1, config.max_pallets_per_type));
        inst.trucks.push_back(std::move(t));
    }

    Tick max_due = 0;
    for (const auto& t : inst.trucks) max_due = std::max(max_due, t.due);
    inst.horizon = std::max(minutes_to_ticks(config.horizon), max_due + 1);

    inst.validate();
    return inst;
}

}  // namespace taspdmd
