#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>

#include "helpers.hpp"
#include "taspdmd/schedule.hpp"

using namespace taspdmd;
using namespace testutil;

namespace {

// 4 pallets at 2 min each = 8 min handling; distance 5 m at 5 m/min = 4 min
// travel. Service is 12 min on a non-mixed dock.
Instance single_truck_instance(double tau = 0.0) {
    return tiny_instance(1, {truck(0, Direction::Inbound, 0, 10, {{0, 4}})}, 2.0, 5.0, tau);
}

Solution single_truck_solution(DockMode mode) {
    Solution sol;
    sol.modes = {mode};
    sol.assignment = {0};
    sol.sequences = {{0}};
    return sol;
}

}  // namespace

TEST_CASE("decode of a single truck on an unload dock") {
    const Instance inst = single_truck_instance();
    const auto sched = decode(inst, single_truck_solution(DockMode::UnloadOnly));
    CHECK(sched.trucks[0].start == 0);
    CHECK(sched.trucks[0].duration == minutes_to_ticks(12.0));
    CHECK(sched.trucks[0].end == minutes_to_ticks(12.0));
    CHECK(sched.trucks[0].delay == minutes_to_ticks(2.0));
}

TEST_CASE("mixed dock adds the reaction time") {
    const Instance inst = single_truck_instance(1.0);
    const auto sched = decode(inst, single_truck_solution(DockMode::Mixed));
    CHECK(sched.trucks[0].duration == minutes_to_ticks(13.0));
    CHECK(sched.trucks[0].delay == minutes_to_ticks(3.0));
}

TEST_CASE("handling term switch divides instead of multiplying") {
    const Instance inst = single_truck_instance();
    EvalOptions opt;
    opt.handling_term = HandlingTerm::Divide;
    const auto sched = decode(inst, single_truck_solution(DockMode::UnloadOnly), opt);
    // 4 pallets / 2 min-per-pallet = 2 min handling, plus 4 min travel.
    CHECK(sched.trucks[0].duration == minutes_to_ticks(6.0));
}

TEST_CASE("queued truck starts when its predecessor finishes") {
    const Instance inst = tiny_instance(
        1,
        {truck(0, Direction::Inbound, 0, 30, {{0, 4}}),
         truck(1, Direction::Inbound, 5, 40, {{0, 2}})},
        2.0, 5.0);
    Solution sol;
    sol.modes = {DockMode::UnloadOnly};
    sol.assignment = {0, 0};
    sol.sequences = {{0, 1}};
    const auto sched = decode(inst, sol);
    CHECK(sched.trucks[1].start == sched.trucks[0].end);
}

TEST_CASE("decode agrees with an event-by-event queue simulation") {
    Rng rng(77);
    for (int trial = 0; trial < 50; ++trial) {
        GeneratorConfig g;
        g.dock_count = 1 + static_cast<int>(rng.index(3));
        g.truck_count = 2 + static_cast<int>(rng.index(8));
        g.seed = 100 + trial;
        const Instance inst = generate_instance(g);
        const Solution sol = random_solution(inst, rng);
        const auto sched = decode(inst, sol);
        const auto distances = distance_matrix(inst);
        // Replay each dock as a queue: a truck starts at the later of its
        // arrival and the dock becoming free.
        for (std::size_t k = 0; k < sol.sequences.size(); ++k) {
            Tick free_at = 0;
            for (int t : sol.sequences[k]) {
                const Tick start = std::max(inst.trucks[t].arrival, free_at);
                const Tick dur = service_duration(inst, distances, inst.trucks[t],
                                                  static_cast<int>(k), sol.modes[k]);
                CHECK(sched.trucks[t].start == start);
                CHECK(sched.trucks[t].end == start + dur);
                free_at = start + dur;
            }
        }
    }
}

TEST_CASE("decode is deterministic") {
    Rng rng(5);
    GeneratorConfig g;
    g.dock_count = 3;
    g.truck_count = 15;
    const Instance inst = generate_instance(g);
    const Solution sol = random_solution(inst, rng);
    const auto a = decode(inst, sol);
    const auto b = decode(inst, sol);
    for (std::size_t t = 0; t < a.trucks.size(); ++t) {
        CHECK(a.trucks[t].start == b.trucks[t].start);
        CHECK(a.trucks[t].end == b.trucks[t].end);
    }
}

TEST_CASE("evaluate sums the decoded schedule") {
    const Instance inst = single_truck_instance();
    const auto o = evaluate(inst, single_truck_solution(DockMode::UnloadOnly));
    CHECK(o.tardiness == doctest::Approx(2.0));
    CHECK(o.makespan == doctest::Approx(12.0));
    CHECK(o.distance == doctest::Approx(20.0));  // 4 pallets x 5 m
}

TEST_CASE("no positive delays means zero tardiness") {
    const Instance inst = tiny_instance(1, {truck(0, Direction::Inbound, 0, 100, {{0, 1}})});
    const auto o = evaluate(inst, single_truck_solution(DockMode::UnloadOnly));
    CHECK(o.tardiness == 0.0);
}

TEST_CASE("evaluate equals an independent recomputation from the decoded form") {
    Rng rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        GeneratorConfig g;
        g.dock_count = 2;
        g.truck_count = 4;
        g.seed = 500 + trial;
        const Instance inst = generate_instance(g);
        const Solution sol = random_solution(inst, rng);
        const auto o = evaluate(inst, sol);
        const auto sched = decode(inst, sol);
        const auto distances = distance_matrix(inst);
        Tick f1 = 0;
        Tick f2 = 0;
        double f3 = 0.0;
        for (std::size_t t = 0; t < sched.trucks.size(); ++t) {
            f1 += std::max<Tick>(0, sched.trucks[t].end - inst.trucks[t].due);
            f2 = std::max(f2, sched.trucks[t].end);
            f3 += truck_handling_distance(inst, distances, inst.trucks[t], sol.assignment[t]);
        }
        CHECK(o.tardiness == doctest::Approx(ticks_to_minutes(f1)));
        CHECK(o.makespan == doctest::Approx(ticks_to_minutes(f2)));
        CHECK(o.distance == doctest::Approx(f3));
    }
}

TEST_CASE("removing a truck never increases the makespan") {
    Rng rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        GeneratorConfig g;
        g.dock_count = 3;
        g.truck_count = 10;
        g.seed = 900 + trial;
        const Instance inst = generate_instance(g);
        const Solution sol = random_solution(inst, rng);
        const double full = evaluate(inst, sol).makespan;
        for (int drop = 0; drop < inst.truck_count(); ++drop) {
            // Rebuild the instance and solution without truck `drop`.
            Instance smaller = inst;
            smaller.trucks.clear();
            std::vector<int> new_id(inst.truck_count(), -1);
            for (int t = 0; t < inst.truck_count(); ++t) {
                if (t == drop) continue;
                new_id[t] = static_cast<int>(smaller.trucks.size());
                TruckSpec ts = inst.trucks[t];
                ts.id = new_id[t];
                smaller.trucks.push_back(ts);
            }
            Solution sub;
            sub.modes = sol.modes;
            sub.assignment.assign(smaller.truck_count(), -1);
            sub.sequences.assign(sol.sequences.size(), {});
            for (std::size_t k = 0; k < sol.sequences.size(); ++k)
                for (int t : sol.sequences[k]) {
                    if (t == drop) continue;
                    sub.assignment[new_id[t]] = static_cast<int>(k);
                    sub.sequences[k].push_back(new_id[t]);
                }
            CHECK(evaluate(smaller, sub).makespan <= full + 1e-9);
        }
    }
}

TEST_CASE("feasibility violations name the offending structure") {
    const Instance inst = tiny_instance(
        2, {truck(0, Direction::Inbound, 0, 30), truck(1, Direction::Outbound, 0, 30)});

    Solution ok;
    ok.modes = {DockMode::UnloadOnly, DockMode::LoadOnly};
    ok.assignment = {0, 1};
    ok.sequences = {{0}, {1}};
    CHECK(check_feasibility(inst, ok).empty());
    CHECK(is_feasible(inst, ok));

    SUBCASE("inbound truck on a load-only dock") {
        Solution bad = ok;
        bad.assignment[0] = 1;
        bad.sequences = {{}, {0, 1}};
        bad.modes = {DockMode::UnloadOnly, DockMode::LoadOnly};
        const auto v = check_feasibility(inst, bad);
        REQUIRE(!v.empty());
        const bool mode_violation = std::any_of(v.begin(), v.end(), [](const Violation& x) {
            return x.cls == ViolationClass::DockMode && x.severity == Severity::Hard;
        });
        CHECK(mode_violation);
    }

    SUBCASE("truck present in two sequences") {
        Solution bad = ok;
        bad.sequences = {{0}, {0, 1}};
        const auto v = check_feasibility(inst, bad);
        REQUIRE(!v.empty());
        const bool dup = std::any_of(v.begin(), v.end(), [](const Violation& x) {
            return x.cls == ViolationClass::Assignment;
        });
        CHECK(dup);
    }

    SUBCASE("horizon excess is a warning by default and hard on request") {
        Instance tight = inst;
        tight.horizon = 1;
        const auto v = check_feasibility(tight, ok);
        REQUIRE(!v.empty());
        for (const auto& x : v) {
            CHECK(x.cls == ViolationClass::Horizon);
            CHECK(x.severity == Severity::Warning);
        }
        CHECK(is_feasible(tight, ok));
        EvalOptions hard;
        hard.horizon_hard = true;
        CHECK(!is_feasible(tight, ok, hard));
    }
}

TEST_CASE("dominance relation") {
    const ObjectiveVector a{1, 2, 3};
    const ObjectiveVector b{0, 2, 3};
    const ObjectiveVector c{0, 5, 3};
    CHECK(!dominates(a, a));
    CHECK(dominates(b, a));
    CHECK(!dominates(a, b));
    CHECK(!dominates(c, a));
    CHECK(!dominates(a, c));
}

TEST_CASE("dominance is irreflexive, asymmetric, and transitive") {
    Rng rng(3);
    std::vector<ObjectiveVector> pts;
    for (int i = 0; i < 40; ++i)
        pts.push_back({rng.index(4) * 1.0, rng.index(4) * 1.0, rng.index(4) * 1.0});
    for (const auto& x : pts) CHECK(!dominates(x, x));
    for (const auto& x : pts)
        for (const auto& y : pts)
            if (dominates(x, y)) CHECK(!dominates(y, x));
    for (const auto& x : pts)
        for (const auto& y : pts)
            for (const auto& z : pts)
                if (dominates(x, y) && dominates(y, z)) CHECK(dominates(x, z));
}

TEST_CASE("scalarize basics") {
    const ObjectiveVector base{10, 20, 30};
    CHECK(scalarize(base, base) == doctest::Approx(1.25));
    CHECK(scalarize({0, 0, 0}, base) == doctest::Approx(0.0));
    const double full = scalarize({10, 20, 30}, base);
    const double half_f1 = scalarize({5, 20, 30}, base);
    CHECK(half_f1 < full);
    // Baseline components below 1 are clamped so the ratio stays bounded.
    CHECK(scalarize({1, 0, 0}, {0, 0, 0}) == doctest::Approx(1.0));
}

TEST_CASE("dock utilization") {
    // Two back-to-back trucks fill the dock from 0 to T_max.
    const Instance inst = tiny_instance(
        2,
        {truck(0, Direction::Inbound, 0, 100, {{0, 4}}),
         truck(1, Direction::Inbound, 0, 100, {{0, 4}})},
        2.0, 5.0);
    Solution sol;
    sol.modes = {DockMode::UnloadOnly, DockMode::UnloadOnly};
    sol.assignment = {0, 0};
    sol.sequences = {{0, 1}, {}};
    const auto u = dock_utilization(inst, sol);
    CHECK(u[0] == doctest::Approx(1.0));
    CHECK(u[1] == doctest::Approx(0.0));  // idle dock
    for (double x : u) {
        CHECK(x >= 0.0);
        CHECK(x <= 1.0);
    }
}

TEST_CASE("gantt export shape") {
    Rng rng(8);
    GeneratorConfig g;
    g.dock_count = 3;
    g.truck_count = 12;
    const Instance inst = generate_instance(g);
    const Solution sol = random_solution(inst, rng);
    const auto records = gantt_export(inst, sol);
    CHECK(records.size() == static_cast<std::size_t>(inst.truck_count()));
    for (std::size_t i = 1; i < records.size(); ++i) {
        CHECK(std::tie(records[i - 1].dock, records[i - 1].start) <=
              std::tie(records[i].dock, records[i].start));
        // No overlap within one dock.
        if (records[i - 1].dock == records[i].dock)
            CHECK(records[i - 1].end <= records[i].start + 1e-9);
    }

    const Instance one = tiny_instance(1, {truck(0, Direction::Inbound, 0, 10)});
    Solution s1;
    s1.modes = {DockMode::Mixed};
    s1.assignment = {0};
    s1.sequences = {{0}};
    CHECK(gantt_export(one, s1).size() == 1);
}
