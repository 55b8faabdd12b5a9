#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <vector>

#include "helpers.hpp"
#include "taspdmd/operators.hpp"

using namespace taspdmd;
using namespace testutil;

namespace {

OperatorContext make_ctx(const Instance& inst, const std::vector<std::vector<double>>& distances) {
    ObjectiveVector baseline{100.0, 100.0, 100.0};
    return OperatorContext{inst, distances, baseline};
}

std::vector<int> truck_multiset(const Solution& s) {
    std::vector<int> out;
    for (const auto& seq : s.sequences) out.insert(out.end(), seq.begin(), seq.end());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("the sixteen actions are frozen to their pairings") {
    const auto& table = action_table();
    REQUIRE(table.size() == 16);
    for (int i = 0; i < 16; ++i) CHECK(table[i].id == i + 1);
    CHECK(action(1).name() == "rRd&iBck");
    CHECK(action(2).name() == "rRd&iFwd");
    CHECK(action(3).name() == "rRd&iSwap");
    CHECK(action(4).name() == "rRd&iUp");
    CHECK(action(5).name() == "rRd&iDown");
    CHECK(action(6).name() == "rMxTar&iBck");
    CHECK(action(9).name() == "rMxM&iUp");
    CHECK(action(10).name() == "rRd&iDockInsert");
    CHECK(action(11).name() == "rRd&iBtwInsert");
    CHECK(action(13).name() == "rMxTar&iBtwInsert");
    CHECK(action(14).name() == "riInD2D");
    CHECK(action(15).name() == "riOuD2D");
    CHECK(action(16).name() == "riFlxD2D");
    CHECK_THROWS(action(0));
    CHECK_THROWS(action(17));
}

TEST_CASE("perturbation targets") {
    CHECK(perturbation_target(PerturbationOp::P1) == DockMode::UnloadOnly);
    CHECK(perturbation_target(PerturbationOp::P2) == DockMode::Mixed);
    CHECK(perturbation_target(PerturbationOp::P3) == DockMode::LoadOnly);
    CHECK(std::string(to_string(PerturbationOp::P1)) == "Chn2I");
    CHECK(std::string(to_string(PerturbationOp::P2)) == "Chn2F");
    CHECK(std::string(to_string(PerturbationOp::P3)) == "Chn2O");
}

TEST_CASE("random destroy on a one-truck solution removes that truck") {
    const Instance inst = tiny_instance(1, {truck(0, Direction::Inbound, 0, 10)});
    const auto distances = distance_matrix(inst);
    auto ctx = make_ctx(inst, distances);
    Solution sol;
    sol.modes = {DockMode::Mixed};
    sol.assignment = {0};
    sol.sequences = {{0}};
    Rng rng(1);
    const auto d = destroy(ctx, sol, DestroyPrimitive::rRd, rng);
    CHECK(d.removed_truck == 0);
    CHECK(d.partial.sequences[0].empty());
}

TEST_CASE("max-tardiness destroy removes the strict argmax") {
    // Truck 1 has a hopeless due date, truck 0 an easy one.
    const Instance inst = tiny_instance(
        1,
        {truck(0, Direction::Inbound, 0, 100, {{0, 1}}),
         truck(1, Direction::Inbound, 0, 5, {{0, 4}})},
        2.0, 5.0);
    const auto distances = distance_matrix(inst);
    auto ctx = make_ctx(inst, distances);
    Solution sol;
    sol.modes = {DockMode::UnloadOnly};
    sol.assignment = {0, 0};
    sol.sequences = {{0, 1}};
    Rng rng(1);
    CHECK(destroy(ctx, sol, DestroyPrimitive::rMxTar, rng).removed_truck == 1);
}

TEST_CASE("max-distance destroy equals the brute-force argmax of mu") {
    Rng rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        GeneratorConfig g;
        g.dock_count = 3;
        g.truck_count = 10;
        g.seed = 200 + trial;
        const Instance inst = generate_instance(g);
        const auto distances = distance_matrix(inst);
        auto ctx = make_ctx(inst, distances);
        const Solution sol = random_solution(inst, rng);
        Rng op_rng(trial);
        const int removed = destroy(ctx, sol, DestroyPrimitive::rMxM, op_rng).removed_truck;
        // Independent recomputation of each truck's weighted handling distance.
        int expect = 0;
        double best = -1.0;
        for (int t = 0; t < inst.truck_count(); ++t) {
            double mu = 0.0;
            for (const auto& [p, n] : inst.trucks[t].cargo)
                mu += n * distances[sol.assignment[t]][inst.storage.area_of(p)];
            if (mu > best) {  // ties keep the lowest id
                best = mu;
                expect = t;
            }
        }
        CHECK(removed == expect);
    }
}

TEST_CASE("swap-backward at the sequence head is a flagged no-op") {
    const Instance inst = tiny_instance(
        1, {truck(0, Direction::Inbound, 0, 30), truck(1, Direction::Inbound, 0, 30)});
    const auto distances = distance_matrix(inst);
    auto ctx = make_ctx(inst, distances);
    Solution sol;
    sol.modes = {DockMode::UnloadOnly};
    sol.assignment = {0, 0};
    sol.sequences = {{0, 1}};
    DestroyResult d;
    d.partial = sol;
    d.removed_truck = 0;
    d.original_dock = 0;
    d.original_position = 0;
    d.partial.sequences[0] = {1};
    Rng rng(1);
    const auto r = repair(ctx, d, RepairPrimitive::iBck, rng);
    CHECK(!r.moved);
    CHECK(r.solution == sol);
    // And the tail boundary for the forward swap.
    DestroyResult d2 = d;
    d2.removed_truck = 1;
    d2.original_position = 1;
    d2.partial.sequences[0] = {0};
    const auto r2 = repair(ctx, d2, RepairPrimitive::iFwd, rng);
    CHECK(!r2.moved);
    CHECK(r2.solution == sol);
}

TEST_CASE("best-position reinsertion on a one-truck dock changes nothing") {
    const Instance inst = tiny_instance(1, {truck(0, Direction::Inbound, 0, 10)});
    const auto distances = distance_matrix(inst);
    auto ctx = make_ctx(inst, distances);
    Solution sol;
    sol.modes = {DockMode::UnloadOnly};
    sol.assignment = {0};
    sol.sequences = {{0}};
    Rng rng(1);
    const auto res = apply_action(ctx, sol, action(10), rng);
    CHECK(res.solution == sol);
}

TEST_CASE("best-position reinsertion never worsens the scalarized objective") {
    Rng rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        GeneratorConfig g;
        g.dock_count = 2;
        g.truck_count = 8;
        g.seed = 300 + trial;
        const Instance inst = generate_instance(g);
        const auto distances = distance_matrix(inst);
        auto ctx = make_ctx(inst, distances);
        const Solution sol = random_solution(inst, rng);
        const double before = scalarize(evaluate(inst, sol), ctx.baseline);
        Rng op_rng(trial);
        const auto res = apply_action(ctx, sol, action(10), op_rng);  // rRd & iDockInsert
        const double after = scalarize(evaluate(inst, res.solution), ctx.baseline);
        CHECK(after <= before + 1e-9);
    }
}

TEST_CASE("rank-up reinsertion picks the next better dock by handling distance") {
    Rng rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        GeneratorConfig g;
        g.dock_count = 4;
        g.truck_count = 8;
        g.seed = 400 + trial;
        const Instance inst = generate_instance(g);
        const auto distances = distance_matrix(inst);
        auto ctx = make_ctx(inst, distances);
        const Solution sol = random_solution(inst, rng);
        Rng op_rng(trial);
        const auto d = destroy(ctx, sol, DestroyPrimitive::rMxM, op_rng);
        const int t = d.removed_truck;
        const double mu_before = truck_mu(ctx, sol, t);
        const auto res = repair(ctx, d, RepairPrimitive::iUp, op_rng);
        if (!res.moved) {
            // No compatible dock with a strictly smaller distance exists.
            for (std::size_t k = 0; k < sol.modes.size(); ++k) {
                if (static_cast<int>(k) == d.original_dock) continue;
                if (!mode_serves(sol.modes[k], inst.trucks[t].direction)) continue;
                double mu_k = 0.0;
                for (const auto& [p, n] : inst.trucks[t].cargo)
                    mu_k += n * distances[k][inst.storage.area_of(p)];
                CHECK(mu_k >= mu_before);
            }
            continue;
        }
        const double mu_after = truck_mu(ctx, res.solution, t);
        CHECK(mu_after < mu_before);
        // Next-better rank: no other compatible dock sits strictly between.
        for (std::size_t k = 0; k < sol.modes.size(); ++k) {
            if (static_cast<int>(k) == d.original_dock) continue;
            if (!mode_serves(sol.modes[k], inst.trucks[t].direction)) continue;
            double mu_k = 0.0;
            for (const auto& [p, n] : inst.trucks[t].cargo)
                mu_k += n * distances[k][inst.storage.area_of(p)];
            CHECK(!(mu_k > mu_after && mu_k < mu_before));
        }
        // Appended at the end of the target dock's sequence.
        CHECK(res.solution.sequences[res.solution.assignment[t]].back() == t);
    }
}

TEST_CASE("dock-to-dock swap exchanges whole sequences") {
    const Instance inst = tiny_instance(
        2,
        {truck(0, Direction::Inbound, 0, 30), truck(1, Direction::Inbound, 0, 30),
         truck(2, Direction::Inbound, 0, 30)});
    const auto distances = distance_matrix(inst);
    auto ctx = make_ctx(inst, distances);
    Solution sol;
    sol.modes = {DockMode::UnloadOnly, DockMode::UnloadOnly};
    sol.assignment = {0, 0, 1};
    sol.sequences = {{0, 1}, {2}};
    Rng rng(1);
    const auto res = comprehensive(ctx, sol, ComprehensivePrimitive::riInD2D, rng);
    CHECK(res.moved);
    CHECK(res.solution.sequences[0] == std::vector<int>{2});
    CHECK(res.solution.sequences[1] == std::vector<int>{0, 1});
    CHECK(res.solution.assignment == std::vector<int>{1, 1, 0});
    // The distance objective of the swapped assignment re-evaluates consistently.
    const auto o = evaluate(inst, res.solution);
    double f3 = 0.0;
    for (int t = 0; t < 3; ++t)
        for (const auto& [p, n] : inst.trucks[t].cargo)
            f3 += n * distances[res.solution.assignment[t]][inst.storage.area_of(p)];
    CHECK(o.distance == doctest::Approx(f3));
}

TEST_CASE("dock-to-dock swap with one qualifying dock is inapplicable") {
    const Instance inst = tiny_instance(
        2, {truck(0, Direction::Inbound, 0, 30), truck(1, Direction::Outbound, 0, 30)});
    const auto distances = distance_matrix(inst);
    auto ctx = make_ctx(inst, distances);
    Solution sol;
    sol.modes = {DockMode::UnloadOnly, DockMode::LoadOnly};
    sol.assignment = {0, 1};
    sol.sequences = {{0}, {1}};
    Rng rng(1);
    const auto res = comprehensive(ctx, sol, ComprehensivePrimitive::riInD2D, rng);
    CHECK(!res.moved);
    CHECK(res.solution == sol);
}

TEST_CASE("actions on a one-truck instance hit their boundary no-ops") {
    const Instance inst = tiny_instance(1, {truck(0, Direction::Inbound, 0, 10)});
    const auto distances = distance_matrix(inst);
    auto ctx = make_ctx(inst, distances);
    Solution sol;
    sol.modes = {DockMode::Mixed};
    sol.assignment = {0};
    sol.sequences = {{0}};
    Rng rng(1);
    const auto res = apply_action(ctx, sol, action(2), rng);  // rRd & iFwd
    CHECK(res.solution == sol);
    CHECK(!res.moved);
}

TEST_CASE("perturbation to mixed on an all-mixed solution keeps the modes") {
    const Instance inst = tiny_instance(
        2, {truck(0, Direction::Inbound, 0, 30), truck(1, Direction::Outbound, 0, 30)});
    const auto distances = distance_matrix(inst);
    auto ctx = make_ctx(inst, distances);
    Solution sol;
    sol.modes = {DockMode::Mixed, DockMode::Mixed};
    sol.assignment = {0, 1};
    sol.sequences = {{0}, {1}};
    Rng rng(1);
    const auto res = perturb(ctx, sol, PerturbationOp::P2, rng);
    CHECK(res.solution.modes == sol.modes);
}

TEST_CASE("perturbation never removes the last capable dock") {
    const Instance inst = tiny_instance(
        2, {truck(0, Direction::Inbound, 0, 30), truck(1, Direction::Outbound, 0, 30)});
    const auto distances = distance_matrix(inst);
    auto ctx = make_ctx(inst, distances);
    Solution sol;
    sol.modes = {DockMode::UnloadOnly, DockMode::LoadOnly};
    sol.assignment = {0, 1};
    sol.sequences = {{0}, {1}};
    // P1 would have to convert the only load-capable dock; it must refuse.
    for (int seed = 0; seed < 20; ++seed) {
        Rng rng(seed);
        const auto res = perturb(ctx, sol, PerturbationOp::P1, rng);
        CHECK(!res.moved);
        CHECK(res.solution == sol);
    }
}

TEST_CASE("perturbation reassigns stranded trucks to capable docks") {
    Rng rng(47);
    for (int trial = 0; trial < 60; ++trial) {
        GeneratorConfig g;
        g.dock_count = 3;
        g.truck_count = 10;
        g.seed = 600 + trial;
        const Instance inst = generate_instance(g);
        const auto distances = distance_matrix(inst);
        auto ctx = make_ctx(inst, distances);
        const Solution sol = random_solution(inst, rng);
        Rng op_rng(trial);
        const auto res =
            perturb(ctx, sol, static_cast<PerturbationOp>(trial % 3), op_rng);
        const auto violations = check_feasibility(inst, res.solution);
        for (const auto& v : violations) CHECK(v.severity != Severity::Hard);
    }
}

TEST_CASE("operators conserve trucks, keep feasibility, and are deterministic") {
    Rng rng(55);
    for (int trial = 0; trial < 120; ++trial) {
        GeneratorConfig g;
        g.dock_count = 2 + static_cast<int>(rng.index(3));
        g.truck_count = 5 + static_cast<int>(rng.index(10));
        g.seed = 700 + trial;
        const Instance inst = generate_instance(g);
        const auto distances = distance_matrix(inst);
        auto ctx = make_ctx(inst, distances);
        const Solution sol = random_solution(inst, rng);
        const auto trucks_before = truck_multiset(sol);
        for (int id = 1; id <= 16; ++id) {
            Rng a(1000 + trial * 16 + id);
            Rng b(1000 + trial * 16 + id);
            const auto r1 = apply_action(ctx, sol, action(id), a);
            const auto r2 = apply_action(ctx, sol, action(id), b);
            CHECK(r1.solution == r2.solution);  // same seed, same move
            CHECK(truck_multiset(r1.solution) == trucks_before);
            for (const auto& v : check_feasibility(inst, r1.solution))
                CHECK(v.severity != Severity::Hard);
        }
    }
}
