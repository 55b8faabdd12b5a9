#include "taspdmd/instance.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace taspdmd {

using nlohmann::json;

void Instance::validate() const {
    if (docks.empty()) throw ValidationError("instance has no docks");
    if (trucks.empty()) throw ValidationError("instance has no trucks");
    if (unit_handle_time <= 0) throw ValidationError("unit_handle_time must be > 0");
    if (agv_speed <= 0.0) throw ValidationError("agv_speed must be > 0");
    if (mixed_reaction_time < 0) throw ValidationError("mixed_reaction_time must be >= 0");

    std::set<int> dock_ids;
    for (const auto& d : docks) {
        if (!dock_ids.insert(d.id).second)
            throw ValidationError("duplicate dock id " + std::to_string(d.id));
        if (!std::isfinite(d.x) || !std::isfinite(d.y))
            throw ValidationError("dock " + std::to_string(d.id) + " has non-finite position");
    }

    std::set<int> area_ids;
    for (const auto& a : storage.areas) {
        if (!area_ids.insert(a.id).second)
            throw ValidationError("duplicate storage area id " + std::to_string(a.id));
        if (!std::isfinite(a.x) || !std::isfinite(a.y))
            throw ValidationError("storage area " + std::to_string(a.id) + " has non-finite position");
    }
    for (const auto& [p, s] : storage.placement) {
        if (!area_ids.count(s))
            throw ValidationError("pallet type " + std::to_string(p) +
                                  " placed in unknown area " + std::to_string(s));
    }

    std::set<int> truck_ids;
    Tick max_due = 0;
    for (const auto& t : trucks) {
        const std::string tag = "truck " + std::to_string(t.id);
        if (!truck_ids.insert(t.id).second) throw ValidationError("duplicate truck id " + std::to_string(t.id));
        if (t.arrival < 0) throw ValidationError(tag + ": arrival must be >= 0");
        if (t.due <= t.arrival) throw ValidationError(tag + ": due must be > arrival");
        if (t.cargo.empty()) throw ValidationError(tag + ": cargo is empty");
        for (const auto& [p, n] : t.cargo) {
            if (n < 1) throw ValidationError(tag + ": pallet count must be >= 1");
            if (!storage.placement.count(p))
                throw ValidationError(tag + ": pallet type " + std::to_string(p) +
                                      " has no storage placement");
        }
        max_due = std::max(max_due, t.due);
    }
    if (horizon <= max_due) throw ValidationError("horizon must exceed the largest due time");
}

std::vector<std::vector<double>> distance_matrix(const Instance& instance) {
    std::vector<std::vector<double>> m(instance.docks.size(),
                                       std::vector<double>(instance.storage.areas.size(), 0.0));
    for (std::size_t k = 0; k < instance.docks.size(); ++k) {
        for (std::size_t s = 0; s < instance.storage.areas.size(); ++s) {
            const double dx = instance.docks[k].x - instance.storage.areas[s].x;
            const double dy = instance.docks[k].y - instance.storage.areas[s].y;
            m[k][s] = std::sqrt(dx * dx + dy * dy);
        }
    }
    return m;
}

namespace {

// Times are serialized in minutes with at most two fractional digits, which
// the tick representation makes exact.
json ticks_to_json(Tick t) { return json(ticks_to_minutes(t)); }

Tick json_to_ticks(const json& j, const std::string& what) {
    if (!j.is_number()) throw ParseError(what + " is not a number");
    return minutes_to_ticks(j.get<double>());
}

}  // namespace

std::string instance_to_json_text(const Instance& instance) {
    json j;  // nlohmann's default object keeps keys sorted
    j["docks"] = json::array();
    for (const auto& d : instance.docks)
        j["docks"].push_back({{"id", d.id}, {"x", d.x}, {"y", d.y}});

    j["trucks"] = json::array();
    for (const auto& t : instance.trucks) {
        json cargo = json::object();
        for (const auto& [p, n] : t.cargo) cargo[std::to_string(p)] = n;
        j["trucks"].push_back({{"arrival", ticks_to_json(t.arrival)},
                               {"cargo", cargo},
                               {"direction", to_string(t.direction)},
                               {"due", ticks_to_json(t.due)},
                               {"id", t.id}});
    }

    json areas = json::array();
    for (const auto& a : instance.storage.areas)
        areas.push_back({{"id", a.id}, {"x", a.x}, {"y", a.y}});
    json placement = json::object();
    for (const auto& [p, s] : instance.storage.placement) placement[std::to_string(p)] = s;
    j["storage"] = {{"areas", areas}, {"placement", placement}};

    j["params"] = {{"agv_speed", instance.agv_speed},
                   {"horizon", ticks_to_json(instance.horizon)},
                   {"mixed_reaction_time", ticks_to_json(instance.mixed_reaction_time)},
                   {"unit_handle_time", ticks_to_json(instance.unit_handle_time)}};
    return j.dump(2) + "\n";
}

Instance instance_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed instance file: ") + e.what());
    }
    Instance inst;
    try {
        for (const auto& d : j.at("docks"))
            inst.docks.push_back({d.at("id").get<int>(), d.at("x").get<double>(), d.at("y").get<double>()});
        for (const auto& t : j.at("trucks")) {
            TruckSpec truck;
            truck.id = t.at("id").get<int>();
            const std::string dir = t.at("direction").get<std::string>();
            if (dir == "inbound") truck.direction = Direction::Inbound;
            else if (dir == "outbound") truck.direction = Direction::Outbound;
            else throw ParseError("unknown truck direction '" + dir + "'");
            truck.arrival = json_to_ticks(t.at("arrival"), "arrival");
            truck.due = json_to_ticks(t.at("due"), "due");
            for (const auto& [key, val] : t.at("cargo").items())
                truck.cargo[std::stoi(key)] = val.get<int>();
            inst.trucks.push_back(std::move(truck));
        }
        const auto& storage = j.at("storage");
        for (const auto& a : storage.at("areas"))
            inst.storage.areas.push_back(
                {a.at("id").get<int>(), a.at("x").get<double>(), a.at("y").get<double>()});
        for (const auto& [key, val] : storage.at("placement").items())
            inst.storage.placement[std::stoi(key)] = val.get<int>();
        const auto& params = j.at("params");
        inst.agv_speed = params.at("agv_speed").get<double>();
        inst.horizon = json_to_ticks(params.at("horizon"), "horizon");
        inst.mixed_reaction_time = json_to_ticks(params.at("mixed_reaction_time"), "mixed_reaction_time");
        inst.unit_handle_time = json_to_ticks(params.at("unit_handle_time"), "unit_handle_time");
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed instance file: ") + e.what());
    }
    inst.validate();
    return inst;
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open instance file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return instance_from_json_text(ss.str());
}

void save_instance(const Instance& instance, const std::string& path) {
    instance.validate();
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write instance file: " + path);
    out << instance_to_json_text(instance);
    if (!out) throw std::runtime_error("I/O failure writing " + path);
}

}  // namespace taspdmd
