#include "taspdmd/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "json.hpp"
#include "taspdmd/metrics.hpp"

namespace taspdmd {

using nlohmann::json;

const char* to_string(Variant v) {
    switch (v) {
        case Variant::QALNS: return "QALNS";
        case Variant::RLNS: return "RLNS";
        case Variant::SALNS: return "SALNS";
        default: return "FixedAction";
    }
}

const char* to_string(Strategy s) {
    switch (s) {
        case Strategy::Adaptive: return "Adaptive";
        case Strategy::Fix: return "Fix";
        default: return "Mix";
    }
}

const char* to_string(AcceptDecision d) {
    switch (d) {
        case AcceptDecision::NewGlobalBest: return "NewGlobalBest";
        case AcceptDecision::NewLocalBest: return "NewLocalBest";
        case AcceptDecision::ArchiveAdd: return "ArchiveAdd";
        case AcceptDecision::MetropolisAccept: return "MetropolisAccept";
        default: return "Reject";
    }
}

void SolverConfig::validate() const {
    if (epsilon < 0.0 || epsilon > 1.0) throw ValidationError("epsilon must be in [0, 1]");
    if (epsilon_decay <= 0.0 || epsilon_decay > 1.0)
        throw ValidationError("epsilon_decay must be in (0, 1]");
    if (learning_rate <= 0.0 || learning_rate > 1.0)
        throw ValidationError("learning_rate must be in (0, 1]");
    if (discount < 0.0 || discount > 1.0) throw ValidationError("discount must be in [0, 1]");
    if (non_improve_limit < 1) throw ValidationError("non_improve_limit must be >= 1");
    if (global_weight < 0.0 || global_weight > 1.0)
        throw ValidationError("global_weight must be in [0, 1]");
    if (outer_iterations < 1) throw ValidationError("outer_iterations must be >= 1");
    if (learning_loop > outer_iterations)
        throw ValidationError("learning_loop must not exceed outer_iterations");
    if (reward_norm < 0.0) throw ValidationError("reward_norm must be >= 0");
    if (temp_scale <= 0.0) throw ValidationError("temp_scale must be > 0");
    if (cooling_rate <= 0.0 || cooling_rate > 1.0)
        throw ValidationError("cooling_rate must be in (0, 1]");
    if (action_set.empty()) throw ValidationError("action_set must not be empty");
    for (int a : action_set)
        if (a < 1 || a > 16) throw ValidationError("action ids must be in 1..16");
    if (fixed_action < 1 || fixed_action > 16)
        throw ValidationError("fixed_action must be in 1..16");
}

double calculate_reward(const EpisodeStats& stats, int iteration, const SolverConfig& config) {
    auto ratio = [&](double prev, double now) {
        if (prev == 0.0) return 0.0;
        const double raw = config.literal_reward_sign ? (now - prev) / prev : (prev - now) / prev;
        return std::max(raw, 0.0);
    };
    const double d_global = ratio(stats.r_best_prev, stats.r_best);
    const double d_local = ratio(stats.r_prev, stats.r);
    const bool improved = d_global > 0.0 || d_local > 0.0;

    if (config.reward_mode == RewardMode::ZeroOne) return improved ? 1.0 : 0.0;

    const double d_improvement =
        config.global_weight * d_global + (1.0 - config.global_weight) * d_local;
    const double scale = iteration / config.effective_reward_norm();
    if (improved) return d_improvement * scale;

    // Opportunity cost: the best weighted improvement any unselected action
    // has achieved so far.
    double oc = 0.0;
    for (std::size_t a = 0; a < stats.best_improvement.size(); ++a)
        if (static_cast<int>(a) != stats.action_index)
            oc = std::max(oc, stats.best_improvement[a]);
    return (d_improvement - oc) * scale;
}

int q_step(QTable& table, double reward, bool improved, Rng& rng, const SolverConfig& config) {
    const int next_state = improved ? 1 : 0;
    const auto& next_row = table.values[next_state];
    const double best_next = *std::max_element(next_row.begin(), next_row.end());
    double& q = table.values[table.state][table.last_action];
    q += config.learning_rate * (reward + config.discount * best_next - q);
    table.state = next_state;
    table.epsilon *= config.epsilon_decay;

    int next_action;
    if (rng.uniform01() >= table.epsilon) {
        int best = 0;
        for (std::size_t i = 1; i < next_row.size(); ++i)
            if (next_row[i] > next_row[best]) best = static_cast<int>(i);
        next_action = best;  // ties break to the lowest action id by scan order
    } else {
        next_action = static_cast<int>(rng.index(table.actions.size()));
    }
    table.last_action = next_action;
    return next_action;
}

AcceptDecision accept(const ObjectiveVector& candidate, const ObjectiveVector& current,
                      const ObjectiveVector& global_best, const ParetoArchive& archive,
                      const ObjectiveVector& baseline, double temperature, Rng& rng,
                      const ScalarWeights& weights) {
    if (dominates(candidate, global_best)) return AcceptDecision::NewGlobalBest;
    if (dominates(candidate, current)) return AcceptDecision::NewLocalBest;
    if (!dominates(global_best, candidate) && candidate != global_best &&
        archive.would_accept(candidate))
        return AcceptDecision::ArchiveAdd;
    const double delta = scalarize(candidate, baseline, weights) -
                         scalarize(current, baseline, weights);
    const double p = std::exp(-std::max(0.0, delta) / std::max(temperature, 1e-12));
    return rng.uniform01() < p ? AcceptDecision::MetropolisAccept : AcceptDecision::Reject;
}

double initial_temperature(const ObjectiveVector& objectives, const ObjectiveVector& baseline,
                           double temp_scale, const ScalarWeights& weights) {
    return temp_scale * scalarize(objectives, baseline, weights) / std::log(2.0);
}

Solution initial_solution(const Instance& instance, Strategy strategy, Rng& rng,
                          const EvalOptions& eval) {
    const int nd = instance.dock_count();
    int inbound = 0;
    int outbound = 0;
    for (const auto& t : instance.trucks)
        (t.direction == Direction::Inbound ? inbound : outbound)++;
    const double share = static_cast<double>(inbound) / instance.truck_count();

    Solution sol;
    sol.modes.assign(nd, DockMode::Mixed);
    sol.assignment.assign(instance.truck_count(), -1);
    sol.sequences.assign(nd, {});

    switch (strategy) {
        case Strategy::Mix:
            break;  // all docks mixed
        case Strategy::Fix: {
            int unload = static_cast<int>(std::lround(nd * share));
            if (inbound > 0) unload = std::max(unload, 1);
            if (outbound > 0) unload = std::min(unload, nd - 1);
            if ((inbound > 0 && unload < 1) || (outbound > 0 && unload > nd - 1))
                throw ValidationError("Fix strategy cannot cover both directions with " +
                                      std::to_string(nd) + " dock(s)");
            // Unloading docks at alternating positions: even slots first.
            sol.modes.assign(nd, DockMode::LoadOnly);
            int placed = 0;
            for (int pass = 0; pass < 2 && placed < unload; ++pass)
                for (int k = pass; k < nd && placed < unload; k += 2) {
                    sol.modes[k] = DockMode::UnloadOnly;
                    ++placed;
                }
            break;
        }
        case Strategy::Adaptive: {
            const int n_unload = static_cast<int>(std::floor(nd * share));
            const int n_load = static_cast<int>(std::floor(nd * (1.0 - share)));
            sol.modes.assign(nd, DockMode::Mixed);
            for (int k = 0; k < n_unload; ++k) sol.modes[k] = DockMode::UnloadOnly;
            for (int k = 0; k < n_load; ++k) sol.modes[nd - 1 - k] = DockMode::LoadOnly;
            const bool any_mixed = n_unload + n_load < nd;
            if (!any_mixed) {
                if (inbound > 0 && n_unload == 0) sol.modes[0] = DockMode::UnloadOnly;
                if (outbound > 0 && n_load == 0) sol.modes[nd - 1] = DockMode::LoadOnly;
            }
            break;
        }
    }
    (void)rng;

    // Greedy construction: trucks by ascending arrival, each to the
    // compatible dock that finishes it earliest.
    const auto distances = distance_matrix(instance);
    std::vector<int> order(instance.truck_count());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::tie(instance.trucks[a].arrival, a) < std::tie(instance.trucks[b].arrival, b);
    });
    std::vector<Tick> dock_free(nd, 0);
    for (int t : order) {
        const TruckSpec& truck = instance.trucks[t];
        int best_dock = -1;
        Tick best_end = 0;
        for (int k = 0; k < nd; ++k) {
            if (!mode_serves(sol.modes[k], truck.direction)) continue;
            const Tick end = std::max(truck.arrival, dock_free[k]) +
                             service_duration(instance, distances, truck, k, sol.modes[k], eval);
            if (best_dock < 0 || end < best_end) {
                best_dock = k;
                best_end = end;
            }
        }
        if (best_dock < 0)
            throw ValidationError("no capable dock for truck " + std::to_string(t));
        sol.assignment[t] = best_dock;
        sol.sequences[best_dock].push_back(t);
        dock_free[best_dock] = best_end;
    }
    return sol;
}

namespace {

struct SegmentScores {
    std::vector<double> weights;
    std::vector<double> score;
    std::vector<int> uses;
    double reaction = 0.8;

    explicit SegmentScores(std::size_t n)
        : weights(n, 1.0 / n), score(n, 0.0), uses(n, 0) {}

    void settle() {
        for (std::size_t i = 0; i < weights.size(); ++i)
            if (uses[i] > 0)
                weights[i] = (1.0 - reaction) * weights[i] + reaction * score[i] / uses[i];
        double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
        if (sum <= 0.0) {
            std::fill(weights.begin(), weights.end(), 1.0 / weights.size());
        } else {
            for (double& w : weights) w /= sum;
        }
        std::fill(score.begin(), score.end(), 0.0);
        std::fill(uses.begin(), uses.end(), 0);
    }

    int roulette(Rng& rng) const {
        const double x = rng.uniform01() * std::accumulate(weights.begin(), weights.end(), 0.0);
        double acc = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            acc += weights[i];
            if (x < acc) return static_cast<int>(i);
        }
        return static_cast<int>(weights.size()) - 1;
    }
};

}  // namespace

RunReport solve(const Instance& instance, const SolverConfig& config) {
    config.validate();
    instance.validate();
    const auto t0 = std::chrono::steady_clock::now();

    std::vector<int> actions = config.action_set;
    if (config.variant == Variant::FixedAction) actions = {config.fixed_action};
    const std::size_t na = actions.size();

    Rng rng(config.seed);
    const auto distances = distance_matrix(instance);

    Solution chi = initial_solution(instance, config.strategy, rng, config.eval);
    const ObjectiveVector baseline = evaluate(instance, chi, config.eval);

    OperatorContext ctx{instance, distances, baseline, config.eval};

    Solution chi_star = chi;
    ObjectiveVector obj_chi = baseline;
    ObjectiveVector obj_star = baseline;

    ParetoArchive archive;
    archive.insert(chi, baseline);

    QTable qtable(actions, config.epsilon);
    SegmentScores segment(na);
    EpisodeStats stats;
    stats.best_improvement.assign(na, 0.0);
    stats.global_improvement_total.assign(na, 0.0);
    stats.success_count.assign(na, 0);

    int action_index = static_cast<int>(rng.index(na));
    int pending_action = action_index;
    int iterations_to_best = 0;
    double seconds_to_best = 0.0;

    RunReport report;
    report.config = config;
    report.trace.reserve(config.outer_iterations);

    for (int e = 1; e <= config.outer_iterations; ++e) {
        switch (config.variant) {
            case Variant::RLNS:
                action_index = static_cast<int>(rng.index(na));
                break;
            case Variant::FixedAction:
                action_index = 0;
                break;
            case Variant::SALNS:
                action_index = segment.roulette(rng);
                break;
            case Variant::QALNS:
                action_index = e <= config.learning_loop ? static_cast<int>(rng.index(na))
                                                         : pending_action;
                break;
        }
        const LocalSearchAction& act = action(actions[action_index]);

        stats.action_index = action_index;
        stats.r_prev = scalarize(obj_chi, baseline, config.weights);
        stats.r_best_prev = scalarize(obj_star, baseline, config.weights);
        stats.r = stats.r_prev;
        stats.r_best = stats.r_best_prev;

        double temperature =
            initial_temperature(obj_chi, baseline, config.temp_scale, config.weights);
        int non_improve = 0;
        while (non_improve < config.non_improve_limit) {
            MoveResult move = apply_action(ctx, chi, act, rng);
            if (!move.moved) {
                ++non_improve;
                temperature *= config.cooling_rate;
                continue;
            }
            const ObjectiveVector obj = evaluate(instance, move.solution, config.eval);
            const AcceptDecision decision = accept(obj, obj_chi, obj_star, archive, baseline,
                                                   temperature, rng, config.weights);
            switch (decision) {
                case AcceptDecision::NewGlobalBest:
                    chi_star = move.solution;
                    obj_star = obj;
                    archive.insert(std::move(move.solution), obj);
                    stats.r_best =
                        std::min(stats.r_best, scalarize(obj, baseline, config.weights));
                    iterations_to_best = e;
                    seconds_to_best =
                        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                            .count();
                    segment.score[action_index] += 5.0;
                    break;
                case AcceptDecision::NewLocalBest:
                    archive.insert(move.solution, obj);
                    chi = std::move(move.solution);
                    obj_chi = obj;
                    stats.r = std::min(stats.r, scalarize(obj, baseline, config.weights));
                    segment.score[action_index] += 2.0;
                    break;
                case AcceptDecision::ArchiveAdd:
                    archive.insert(std::move(move.solution), obj);
                    break;
                case AcceptDecision::MetropolisAccept:
                    chi = std::move(move.solution);
                    obj_chi = obj;
                    ++non_improve;
                    segment.score[action_index] += 1.0;
                    break;
                case AcceptDecision::Reject:
                    ++non_improve;
                    break;
            }
            temperature *= config.cooling_rate;
        }
        ++segment.uses[action_index];

        const double reward = calculate_reward(stats, e, config);
        const bool improved_global = stats.r_best < stats.r_best_prev;

        // Episode bookkeeping for the opportunity cost and the RI metric.
        const double d_global =
            stats.r_best_prev > 0.0
                ? std::max((stats.r_best_prev - stats.r_best) / stats.r_best_prev, 0.0)
                : 0.0;
        const double d_local =
            stats.r_prev > 0.0 ? std::max((stats.r_prev - stats.r) / stats.r_prev, 0.0) : 0.0;
        const double d_improvement =
            config.global_weight * d_global + (1.0 - config.global_weight) * d_local;
        stats.best_improvement[action_index] =
            std::max(stats.best_improvement[action_index], d_improvement);
        stats.global_improvement_total[action_index] += d_global;
        if (d_improvement > 0.0) ++stats.success_count[action_index];

        if (config.variant == Variant::QALNS && e >= config.learning_loop) {
            qtable.last_action = action_index;
            pending_action = q_step(qtable, reward, improved_global, rng, config);
        }
        if (config.variant == Variant::SALNS && e % config.learning_loop == 0) segment.settle();

        report.trace.push_back({e, act.id, reward,
                                config.variant == Variant::QALNS ? qtable.state : 0, obj_star,
                                scalarize(obj_star, baseline, config.weights), temperature,
                                static_cast<int>(archive.size())});

        if (config.strategy == Strategy::Adaptive) {
            PerturbationOp p;
            switch (config.perturbation) {
                case PerturbationPolicy::P1: p = PerturbationOp::P1; break;
                case PerturbationPolicy::P2: p = PerturbationOp::P2; break;
                case PerturbationPolicy::P3: p = PerturbationOp::P3; break;
                default:
                    p = static_cast<PerturbationOp>(rng.index(3));
                    break;
            }
            const Solution& base =
                config.restart_from_archive
                    ? archive.entries()[rng.index(archive.size())].solution
                    : chi_star;
            chi = perturb(ctx, base, p, rng).solution;
        } else {
            chi = chi_star;
        }
        obj_chi = evaluate(instance, chi, config.eval);
        // The restart point is a visited solution like any other; offer it
        // to the archive (and the global best) instead of discarding it.
        if (dominates(obj_chi, obj_star)) {
            chi_star = chi;
            obj_star = obj_chi;
            iterations_to_best = e;
            seconds_to_best =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }
        archive.insert(chi, obj_chi);
    }

    report.best_solution = chi_star;
    report.best_objectives = obj_star;
    report.archive = archive.entries();
    report.iterations_to_best = iterations_to_best;
    report.seconds_to_best = seconds_to_best;
    const auto ri = metrics::relative_improvement(stats.global_improvement_total,
                                                  stats.success_count);
    report.action_relative_improvement = ri.percent;
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

namespace {

json solution_to_json(const Solution& s) {
    json j;
    j["modes"] = json::array();
    for (DockMode m : s.modes) j["modes"].push_back(to_string(m));
    j["assignment"] = s.assignment;
    j["sequences"] = s.sequences;
    return j;
}

json objectives_to_json(const ObjectiveVector& o) {
    return {{"tardiness", o.tardiness}, {"makespan", o.makespan}, {"distance", o.distance}};
}

}  // namespace

std::string solver_config_to_json_text(const SolverConfig& c) {
    json j;
    j["temp_scale"] = c.temp_scale;
    j["epsilon"] = c.epsilon;
    j["epsilon_decay"] = c.epsilon_decay;
    j["learning_rate"] = c.learning_rate;
    j["discount"] = c.discount;
    j["non_improve_limit"] = c.non_improve_limit;
    j["global_weight"] = c.global_weight;
    j["learning_loop"] = c.learning_loop;
    j["outer_iterations"] = c.outer_iterations;
    j["reward_norm"] = c.reward_norm;
    j["action_set"] = c.action_set;
    switch (c.perturbation) {
        case PerturbationPolicy::P1: j["perturbation"] = "P1"; break;
        case PerturbationPolicy::P2: j["perturbation"] = "P2"; break;
        case PerturbationPolicy::P3: j["perturbation"] = "P3"; break;
        default: j["perturbation"] = "uniform"; break;
    }
    j["reward_mode"] = c.reward_mode == RewardMode::ZeroOne ? "zero_one" : "value_based";
    j["variant"] = to_string(c.variant);
    j["fixed_action"] = c.fixed_action;
    j["strategy"] = to_string(c.strategy);
    j["cooling_rate"] = c.cooling_rate;
    j["seed"] = c.seed;
    j["handling_term"] =
        c.eval.handling_term == HandlingTerm::Multiply ? "multiply" : "divide";
    j["literal_reward_sign"] = c.literal_reward_sign;
    j["restart_from_archive"] = c.restart_from_archive;
    return j.dump(2) + "\n";
}

SolverConfig solver_config_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed config: ") + e.what());
    }
    SolverConfig c;
    auto get = [&](const char* key, auto& field) {
        if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("temp_scale", c.temp_scale);
    get("epsilon", c.epsilon);
    get("epsilon_decay", c.epsilon_decay);
    get("learning_rate", c.learning_rate);
    get("discount", c.discount);
    get("non_improve_limit", c.non_improve_limit);
    get("global_weight", c.global_weight);
    get("learning_loop", c.learning_loop);
    get("outer_iterations", c.outer_iterations);
    get("reward_norm", c.reward_norm);
    get("action_set", c.action_set);
    get("fixed_action", c.fixed_action);
    get("cooling_rate", c.cooling_rate);
    get("seed", c.seed);
    get("literal_reward_sign", c.literal_reward_sign);
    get("restart_from_archive", c.restart_from_archive);
    if (j.contains("perturbation")) {
        const std::string p = j.at("perturbation").get<std::string>();
        if (p == "P1") c.perturbation = PerturbationPolicy::P1;
        else if (p == "P2") c.perturbation = PerturbationPolicy::P2;
        else if (p == "P3") c.perturbation = PerturbationPolicy::P3;
        else if (p == "uniform") c.perturbation = PerturbationPolicy::Uniform;
        else throw ParseError("unknown perturbation policy '" + p + "'");
    }
    if (j.contains("reward_mode")) {
        const std::string m = j.at("reward_mode").get<std::string>();
        if (m == "value_based") c.reward_mode = RewardMode::ValueBased;
        else if (m == "zero_one") c.reward_mode = RewardMode::ZeroOne;
        else throw ParseError("unknown reward_mode '" + m + "'");
    }
    if (j.contains("variant")) {
        const std::string v = j.at("variant").get<std::string>();
        if (v == "QALNS") c.variant = Variant::QALNS;
        else if (v == "RLNS") c.variant = Variant::RLNS;
        else if (v == "SALNS") c.variant = Variant::SALNS;
        else if (v == "FixedAction") c.variant = Variant::FixedAction;
        else throw ParseError("unknown variant '" + v + "'");
    }
    if (j.contains("strategy")) {
        const std::string s = j.at("strategy").get<std::string>();
        if (s == "Adaptive") c.strategy = Strategy::Adaptive;
        else if (s == "Fix") c.strategy = Strategy::Fix;
        else if (s == "Mix") c.strategy = Strategy::Mix;
        else throw ParseError("unknown strategy '" + s + "'");
    }
    if (j.contains("handling_term")) {
        const std::string h = j.at("handling_term").get<std::string>();
        if (h == "multiply") c.eval.handling_term = HandlingTerm::Multiply;
        else if (h == "divide") c.eval.handling_term = HandlingTerm::Divide;
        else throw ParseError("unknown handling_term '" + h + "'");
    }
    c.validate();
    return c;
}

std::string run_report_to_json_text(const RunReport& r) {
    json j;
    j["instance"] = r.instance_id;
    j["config"] = json::parse(solver_config_to_json_text(r.config));
    j["best"] = {{"objectives", objectives_to_json(r.best_objectives)},
                 {"solution", solution_to_json(r.best_solution)}};
    j["archive"] = json::array();
    for (const auto& e : r.archive)
        j["archive"].push_back({{"objectives", objectives_to_json(e.objectives)},
                                {"solution", solution_to_json(e.solution)}});
    j["iterations_to_best"] = r.iterations_to_best;
    j["action_relative_improvement"] = r.action_relative_improvement;
    j["trace"] = json::array();
    for (const auto& t : r.trace)
        j["trace"].push_back({{"iteration", t.iteration},
                              {"action", t.action},
                              {"reward", t.reward},
                              {"state", t.state},
                              {"best", objectives_to_json(t.best)},
                              {"best_scalar", t.best_scalar},
                              {"temperature", t.temperature},
                              {"archive_size", t.archive_size}});
    return j.dump(2) + "\n";
}

std::string run_report_csv_header() {
    return "instance,variant,strategy,seed,tardiness,makespan,distance,wall_seconds,"
           "iterations_to_best\n";
}

std::string run_report_csv_row(const RunReport& r) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%s,%s,%s,%llu,%.2f,%.2f,%.6f,%.3f,%d\n",
                  r.instance_id.c_str(), to_string(r.config.variant),
                  to_string(r.config.strategy),
                  static_cast<unsigned long long>(r.config.seed), r.best_objectives.tardiness,
                  r.best_objectives.makespan, r.best_objectives.distance, r.wall_seconds,
                  r.iterations_to_best);
    return buf;
}

}  // namespace taspdmd
