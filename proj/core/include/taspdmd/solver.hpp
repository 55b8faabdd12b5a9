#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "taspdmd/operators.hpp"
#include "taspdmd/pareto.hpp"
#include "taspdmd/rng.hpp"

namespace taspdmd {

enum class Variant { QALNS, RLNS, SALNS, FixedAction };
enum class Strategy { Adaptive, Fix, Mix };
enum class RewardMode { ValueBased, ZeroOne };
enum class PerturbationPolicy { P1, P2, P3, Uniform };

const char* to_string(Variant v);
const char* to_string(Strategy s);

struct SolverConfig {
    double temp_scale = 0.2;      // temperature scale (distinct from the dock reaction time)
    double epsilon = 1.0;
    double epsilon_decay = 0.99;
    double learning_rate = 0.5;
    double discount = 0.7;
    int non_improve_limit = 20;
    double global_weight = 0.8;
    int learning_loop = 200;      // L: uniform action draws before the Q-table takes over
    int outer_iterations = 400;   // E
    double reward_norm = 0.0;     // C; 0 means "default to E"
    std::vector<int> action_set = {2, 9, 11};
    PerturbationPolicy perturbation = PerturbationPolicy::P1;
    RewardMode reward_mode = RewardMode::ValueBased;
    Variant variant = Variant::QALNS;
    int fixed_action = 1;         // used when variant == FixedAction
    Strategy strategy = Strategy::Adaptive;
    double cooling_rate = 0.99;
    std::uint64_t seed = 1;
    ScalarWeights weights{};
    EvalOptions eval{};

    // Printed-formula compatibility switch for the reward ratios; the default
    // measures improvement as (prev - new)/prev under minimization.
    bool literal_reward_sign = false;

    // Restart each outer iteration by perturbing a uniformly drawn archive
    // entry instead of the single global best. Off by default; with a
    // one-entry archive the two are identical. Perturbing only the global
    // best can never reach dock mode combinations that differ from it in
    // more than one dock, so small multi-dock fronts stay partially
    // unexplored; drawing from the archive removes that blind spot.
    bool restart_from_archive = false;

    double effective_reward_norm() const {
        return reward_norm > 0.0 ? reward_norm : static_cast<double>(outer_iterations);
    }

    void validate() const;  // throws ValidationError
};

SolverConfig solver_config_from_json_text(const std::string& text);
std::string solver_config_to_json_text(const SolverConfig& config);

/// 2-state credit table over the configured action set, plus the
/// epsilon-greedy exploration state.
struct QTable {
    std::vector<int> actions;             // frozen copy of the action set (ids)
    std::vector<std::vector<double>> values;  // [state 0..1][action index]
    int state = 0;
    int last_action = 0;  // index into actions; the action being credited
    double epsilon = 1.0;

    explicit QTable(std::vector<int> action_ids, double epsilon0)
        : actions(std::move(action_ids)),
          values(2, std::vector<double>(actions.size(), 0.0)),
          epsilon(epsilon0) {}
};

/// Scalarized observations of one inner-loop episode plus the per-action
/// history needed for the opportunity-cost penalty and the RI metric.
struct EpisodeStats {
    double r_prev = 0.0;        // local measure entering the episode
    double r_best_prev = 0.0;   // global measure entering the episode
    double r = 0.0;             // best local measure during the episode
    double r_best = 0.0;        // best global measure during the episode
    int action_index = 0;       // index into the action set
    std::vector<double> best_improvement;  // per action, historical max weighted improvement
    std::vector<double> global_improvement_total;  // GI(a)
    std::vector<int> success_count;                // S(a)
};

double calculate_reward(const EpisodeStats& stats, int iteration, const SolverConfig& config);

/// Q-table update + epsilon-greedy selection for the next episode.
/// Returns the index (into the action set) of the next action.
int q_step(QTable& table, double reward, bool improved, Rng& rng, const SolverConfig& config);

enum class AcceptDecision { NewGlobalBest, NewLocalBest, ArchiveAdd, MetropolisAccept, Reject };

const char* to_string(AcceptDecision d);

/// Acceptance ladder, tested in order: dominates the global best, dominates
/// the current solution, archivable (mutually non-dominating with the global
/// best and new to the archive), Metropolis, reject. Requiring archive
/// novelty keeps the inner loop finite: once a plateau's incomparable points
/// are archived, repeats fall through to the counting branches.
AcceptDecision accept(const ObjectiveVector& candidate, const ObjectiveVector& current,
                      const ObjectiveVector& global_best, const ParetoArchive& archive,
                      const ObjectiveVector& baseline, double temperature, Rng& rng,
                      const ScalarWeights& weights = {});

Solution initial_solution(const Instance& instance, Strategy strategy, Rng& rng,
                          const EvalOptions& eval = {});

double initial_temperature(const ObjectiveVector& objectives, const ObjectiveVector& baseline,
                           double temp_scale, const ScalarWeights& weights = {});

struct TraceEntry {
    int iteration = 0;       // outer iteration, 1-based
    int action = 0;          // action id applied this episode (op1..op16)
    double reward = 0.0;
    int state = 0;           // Q state after the episode
    ObjectiveVector best;    // global best objectives after the episode
    double best_scalar = 0.0;
    double temperature = 0.0;  // temperature at episode end
    int archive_size = 0;
};

struct RunReport {
    std::string instance_id;
    SolverConfig config;
    Solution best_solution;
    ObjectiveVector best_objectives;
    std::vector<ParetoArchive::Entry> archive;
    std::vector<TraceEntry> trace;
    std::vector<double> action_relative_improvement;  // per action-set entry, percent
    int iterations_to_best = 0;
    double wall_seconds = 0.0;      // measured; excluded from the serialized report
    double seconds_to_best = 0.0;   // wall clock when the final best was first reached
};

/// Full JSON serialization of a report. Deterministic for a given
/// (instance, config): timing is deliberately left out.
std::string run_report_to_json_text(const RunReport& report);

std::string run_report_csv_header();
std::string run_report_csv_row(const RunReport& report);

RunReport solve(const Instance& instance, const SolverConfig& config);

}  // namespace taspdmd
