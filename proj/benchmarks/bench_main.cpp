// Microbenchmarks for the hot paths: schedule decoding, objective
// evaluation, operator application, and short solver runs.

#include <benchmark/benchmark.h>

#include "taspdmd/operators.hpp"
#include "taspdmd/rng.hpp"
#include "taspdmd/schedule.hpp"
#include "taspdmd/solver.hpp"

using namespace taspdmd;

namespace {

Instance make_instance(int docks, int trucks) {
    GeneratorConfig g;
    g.dock_count = docks;
    g.truck_count = trucks;
    g.seed = 1;
    return generate_instance(g);
}

Solution seed_solution(const Instance& inst) {
    Rng rng(2);
    return initial_solution(inst, Strategy::Adaptive, rng);
}

void BM_decode(benchmark::State& state) {
    const Instance inst = make_instance(static_cast<int>(state.range(0)),
                                        static_cast<int>(state.range(1)));
    const Solution sol = seed_solution(inst);
    for (auto _ : state) benchmark::DoNotOptimize(decode(inst, sol));
}
BENCHMARK(BM_decode)->Args({3, 20})->Args({5, 50})->Args({10, 200});

void BM_evaluate(benchmark::State& state) {
    const Instance inst = make_instance(static_cast<int>(state.range(0)),
                                        static_cast<int>(state.range(1)));
    const Solution sol = seed_solution(inst);
    for (auto _ : state) benchmark::DoNotOptimize(evaluate(inst, sol));
}
BENCHMARK(BM_evaluate)->Args({3, 20})->Args({5, 50})->Args({10, 200});

void BM_apply_action(benchmark::State& state) {
    const Instance inst = make_instance(5, 50);
    const auto distances = distance_matrix(inst);
    const Solution sol = seed_solution(inst);
    const OperatorContext ctx{inst, distances, evaluate(inst, sol)};
    const auto& act = action(static_cast<int>(state.range(0)));
    Rng rng(3);
    for (auto _ : state) benchmark::DoNotOptimize(apply_action(ctx, sol, act, rng));
}
BENCHMARK(BM_apply_action)->DenseRange(1, 16);

void BM_solve(benchmark::State& state) {
    const Instance inst = make_instance(static_cast<int>(state.range(0)),
                                        static_cast<int>(state.range(1)));
    SolverConfig c;
    c.outer_iterations = 50;
    c.learning_loop = 50;
    for (auto _ : state) benchmark::DoNotOptimize(solve(inst, c));
}
BENCHMARK(BM_solve)->Args({3, 20})->Args({5, 50});

}  // namespace

BENCHMARK_MAIN();
