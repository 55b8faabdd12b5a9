// Command-line harness: instance generation, solving, operator filtering,
// benchmark comparison, strategy comparison, parameter sweeps, and report
// merging. Run cells are independent and dispatched over a worker pool;
// every cell is deterministic given its seed.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "taspdmd/instance.hpp"
#include "taspdmd/metrics.hpp"
#include "taspdmd/oracle.hpp"
#include "taspdmd/schedule.hpp"
#include "taspdmd/solver.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace taspdmd;

namespace {

struct GlobalOpts {
    std::uint64_t seed = 1;
    int workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    std::string out_dir = ".";
    std::string format = "csv";
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

// A summary table written as CSV or JSON depending on --format. Cells are
// preformatted strings so both encodings are byte-stable.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void write(const fs::path& stem, const std::string& format) const {
        if (format == "json") {
            json j = json::array();
            for (const auto& r : rows) {
                json row;
                for (std::size_t i = 0; i < header.size(); ++i) row[header[i]] = r[i];
                j.push_back(row);
            }
            write_file(stem.string() + ".json", j.dump(2) + "\n");
        } else {
            std::string text;
            for (std::size_t i = 0; i < header.size(); ++i)
                text += (i ? "," : "") + header[i];
            text += "\n";
            for (const auto& r : rows) {
                for (std::size_t i = 0; i < r.size(); ++i) text += (i ? "," : "") + r[i];
                text += "\n";
            }
            write_file(stem.string() + ".csv", text);
        }
    }
};

std::string fmt(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

void run_cells(int workers, std::vector<std::function<void()>>& cells) {
    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::vector<std::string> errors;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            try {
                cells[i]();
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(err_mutex);
                errors.emplace_back(e.what());
            }
        }
    };
    std::vector<std::thread> pool;
    const int n = std::clamp<int>(workers, 1, static_cast<int>(cells.size()) + 1);
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (!errors.empty()) throw std::runtime_error("run cell failed: " + errors.front());
}

std::vector<std::pair<std::string, Instance>> load_suite(const std::string& path) {
    std::vector<std::pair<std::string, Instance>> suite;
    if (fs::is_directory(path)) {
        std::vector<fs::path> files;
        for (const auto& e : fs::directory_iterator(path))
            if (e.path().extension() == ".json") files.push_back(e.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) suite.emplace_back(f.stem().string(), load_instance(f.string()));
    } else {
        suite.emplace_back(fs::path(path).stem().string(), load_instance(path));
    }
    if (suite.empty()) throw ValidationError("no instances found at " + path);
    return suite;
}

GeneratorConfig generator_config_from_json(const json& j) {
    GeneratorConfig c;
    if (j.contains("dock_count")) c.dock_count = j["dock_count"].get<int>();
    if (j.contains("truck_count")) c.truck_count = j["truck_count"].get<int>();
    if (j.contains("inbound_fraction")) c.inbound_fraction = j["inbound_fraction"].get<double>();
    if (j.contains("pallet_type_count")) c.pallet_type_count = j["pallet_type_count"].get<int>();
    if (j.contains("horizon")) c.horizon = j["horizon"].get<double>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("arrival_window_fraction"))
        c.arrival_window_fraction = j["arrival_window_fraction"].get<double>();
    if (j.contains("slack_min")) c.slack_min = j["slack_min"].get<double>();
    if (j.contains("slack_max")) c.slack_max = j["slack_max"].get<double>();
    if (j.contains("max_types_per_truck")) c.max_types_per_truck = j["max_types_per_truck"].get<int>();
    if (j.contains("max_pallets_per_type"))
        c.max_pallets_per_type = j["max_pallets_per_type"].get<int>();
    if (j.contains("dock_spacing")) c.dock_spacing = j["dock_spacing"].get<double>();
    if (j.contains("area_spacing")) c.area_spacing = j["area_spacing"].get<double>();
    if (j.contains("area_offset")) c.area_offset = j["area_offset"].get<double>();
    return c;
}

// Shrinking the iteration budget must also shrink the uniform warmup phase
// or the config fails validation.
void apply_iterations(SolverConfig& c, int iterations) {
    c.outer_iterations = iterations;
    c.learning_loop = std::min(c.learning_loop, iterations);
}

Variant variant_from_string(const std::string& s) {
    if (s == "qalns") return Variant::QALNS;
    if (s == "rlns") return Variant::RLNS;
    if (s == "salns") return Variant::SALNS;
    if (s.rfind("fixed", 0) == 0) return Variant::FixedAction;
    throw ValidationError("unknown variant: " + s);
}

// Saturating upper bound on the exhaustive state count: mode combinations
// times assignments times all per-dock orderings. Used to decide whether the
// exact front is worth attempting before the oracle's own precise count.
std::uint64_t state_upper_bound(const Instance& inst, std::uint64_t cap) {
    const auto sat_mul = [cap](std::uint64_t a, std::uint64_t b) {
        if (a == 0 || b == 0) return std::uint64_t{0};
        if (a > cap / b) return cap + 1;
        return a * b;
    };
    std::uint64_t ub = 1;
    for (int k = 0; k < inst.dock_count(); ++k) ub = sat_mul(ub, 3);
    for (int t = 0; t < inst.truck_count(); ++t)
        ub = sat_mul(ub, static_cast<std::uint64_t>(inst.dock_count()));
    for (int t = 2; t <= inst.truck_count(); ++t)
        ub = sat_mul(ub, static_cast<std::uint64_t>(t));
    return ub;
}

std::vector<ObjectiveVector> nondominated(std::vector<ObjectiveVector> pts) {
    std::sort(pts.begin(), pts.end(), [](const ObjectiveVector& a, const ObjectiveVector& b) {
        return a.as_array() < b.as_array();
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<ObjectiveVector> out;
    for (const auto& p : pts) {
        bool dom = false;
        for (const auto& q : pts)
            if (dominates(q, p)) { dom = true; break; }
        if (!dom) out.push_back(p);
    }
    return out;
}

// ---------------------------------------------------------------- gen

int cmd_gen(const GlobalOpts& g, const std::string& config_path, const std::string& out_name) {
    if (!config_path.empty()) {
        GeneratorConfig c = generator_config_from_json(json::parse(read_file(config_path)));
        c.validate();
        const Instance inst = generate_instance(c);
        const fs::path out = fs::path(g.out_dir) / (out_name.empty() ? "instance.json" : out_name);
        save_instance(inst, out.string());
        load_instance(out.string()).validate();
        std::cout << "wrote " << out.string() << "\n";
        return 0;
    }
    // Default ten-scale suite.
    static constexpr std::pair<int, int> kScales[] = {{3, 20}, {4, 30}, {5, 50},  {6, 60},
                                                      {7, 70}, {8, 100}, {8, 130}, {9, 160},
                                                      {9, 180}, {10, 200}};
    for (std::size_t i = 0; i < std::size(kScales); ++i) {
        GeneratorConfig c;
        c.dock_count = kScales[i].first;
        c.truck_count = kScales[i].second;
        c.seed = g.seed + i;
        c.validate();
        const Instance inst = generate_instance(c);
        char name[32];
        std::snprintf(name, sizeof(name), "instance_%02zu.json", i + 1);
        const fs::path out = fs::path(g.out_dir) / name;
        save_instance(inst, out.string());
        load_instance(out.string()).validate();
        std::cout << "wrote " << out.string() << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------- solve

int cmd_solve(const GlobalOpts& g, const std::string& instance_path,
              const std::string& config_path, const std::string& out_name, bool seed_given) {
    const Instance inst = load_instance(instance_path);
    inst.validate();
    SolverConfig config;
    if (!config_path.empty()) config = solver_config_from_json_text(read_file(config_path));
    if (seed_given) config.seed = g.seed;
    RunReport report = solve(inst, config);
    report.instance_id = fs::path(instance_path).stem().string();
    const std::string stem = out_name.empty() ? "report" : out_name;
    write_file(fs::path(g.out_dir) / (stem + ".json"), run_report_to_json_text(report));
    write_file(fs::path(g.out_dir) / (stem + ".csv"),
               run_report_csv_header() + run_report_csv_row(report));
    std::cout << "best: tardiness=" << report.best_objectives.tardiness
              << " makespan=" << report.best_objectives.makespan
              << " distance=" << report.best_objectives.distance << "\n";
    return 0;
}

// ---------------------------------------------------------------- filter-ops

// Dominance on the prioritized objectives: a tie on tardiness falls through
// to makespan, then to distance.
metrics::DominanceMatrix layered_dominance(const std::vector<std::string>& labels,
                                           const std::array<std::vector<std::vector<double>>, 3>& s,
                                           double alpha) {
    metrics::DominanceMatrix m0 = metrics::dominance_matrix(labels, s[0], alpha);
    metrics::DominanceMatrix m1 = metrics::dominance_matrix(labels, s[1], alpha);
    metrics::DominanceMatrix m2 = metrics::dominance_matrix(labels, s[2], alpha);
    const std::size_t n = labels.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (m0.zeta[i][j] == 0) m0.zeta[i][j] = m1.zeta[i][j];
            if (m0.zeta[i][j] == 0) m0.zeta[i][j] = m2.zeta[i][j];
        }
    for (std::size_t i = 0; i < n; ++i) {
        m0.wins[i] = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (m0.zeta[i][j] == 1) ++m0.wins[i];
        m0.ratio[i] = static_cast<double>(m0.wins[i]) / static_cast<double>(n);
    }
    return m0;
}

int cmd_filter_ops(const GlobalOpts& g, const std::string& suite_path, int repeats,
                   int iterations, double threshold) {
    const auto suite = load_suite(suite_path);
    const int kOps = 16;

    // Phase one: each local search action in isolation.
    std::array<std::vector<std::vector<double>>, 3> samples;
    for (auto& s : samples) s.assign(kOps, std::vector<double>(suite.size() * repeats, 0.0));
    std::vector<std::function<void()>> cells;
    for (int op = 0; op < kOps; ++op)
        for (std::size_t si = 0; si < suite.size(); ++si)
            for (int r = 0; r < repeats; ++r)
                cells.push_back([&, op, si, r] {
                    SolverConfig c;
                    c.variant = Variant::FixedAction;
                    c.fixed_action = op + 1;
                    c.action_set = {op + 1};
                    apply_iterations(c, iterations);
                    c.seed = g.seed + static_cast<std::uint64_t>(r);
                    const RunReport rep = solve(suite[si].second, c);
                    const std::size_t col = si * repeats + r;
                    samples[0][op][col] = rep.best_objectives.tardiness;
                    samples[1][op][col] = rep.best_objectives.makespan;
                    samples[2][op][col] = rep.best_objectives.distance;
                });
    run_cells(g.workers, cells);

    std::vector<std::string> labels;
    for (int op = 1; op <= kOps; ++op) labels.push_back(action(op).name());
    const metrics::DominanceMatrix m = layered_dominance(labels, samples, 0.05);
    std::vector<int> kept = metrics::filter_by_ratio(m, threshold);
    std::vector<int> kept_ids;
    for (int i : kept) kept_ids.push_back(i + 1);
    if (kept_ids.empty())
        for (int op = 1; op <= kOps; ++op) kept_ids.push_back(op);

    // Matrix CSV is always emitted; assertions downstream rely on its shape.
    std::string csv = "op";
    for (const auto& l : labels) csv += "," + l;
    csv += ",wins,ratio\n";
    for (int i = 0; i < kOps; ++i) {
        csv += labels[i];
        for (int j = 0; j < kOps; ++j) csv += "," + std::to_string(m.zeta[i][j]);
        csv += "," + std::to_string(m.wins[i]) + "," + fmt(m.ratio[i]) + "\n";
    }
    write_file(fs::path(g.out_dir) / "dominance_matrix.csv", csv);

    // Phase two: perturbation comparison with the retained action set.
    const std::vector<PerturbationPolicy> policies = {PerturbationPolicy::P1,
                                                      PerturbationPolicy::P2,
                                                      PerturbationPolicy::P3};
    const std::vector<std::string> pol_names = {"P1", "P2", "P3"};
    std::vector<std::vector<double>> pol_samples(policies.size(),
                                                 std::vector<double>(suite.size() * repeats, 0.0));
    cells.clear();
    for (std::size_t p = 0; p < policies.size(); ++p)
        for (std::size_t si = 0; si < suite.size(); ++si)
            for (int r = 0; r < repeats; ++r)
                cells.push_back([&, p, si, r] {
                    SolverConfig c;
                    c.action_set = kept_ids;
                    c.perturbation = policies[p];
                    apply_iterations(c, iterations);
                    c.seed = g.seed + static_cast<std::uint64_t>(r);
                    pol_samples[p][si * repeats + r] = solve(suite[si].second, c).best_objectives.tardiness;
                });
    run_cells(g.workers, cells);

    json out;
    out["labels"] = labels;
    out["ratio"] = m.ratio;
    out["filtered_actions"] = kept_ids;
    out["perturbation"] = json::array();
    for (std::size_t i = 0; i < policies.size(); ++i)
        for (std::size_t j = i + 1; j < policies.size(); ++j) {
            const auto w = metrics::wilcoxon_signed_rank(pol_samples[i], pol_samples[j]);
            out["perturbation"].push_back({{"a", pol_names[i]},
                                           {"b", pol_names[j]},
                                           {"p", w.p},
                                           {"verdict", metrics::to_string(w.verdict)}});
        }
    write_file(fs::path(g.out_dir) / "filter_ops.json", out.dump(2) + "\n");
    std::cout << "retained actions:";
    for (int id : kept_ids) std::cout << " " << id;
    std::cout << "\n";
    return 0;
}

// ---------------------------------------------------------------- bench

int cmd_bench(const GlobalOpts& g, const std::string& suite_path,
              const std::string& variants_arg, int repeats, int iterations) {
    const auto suite = load_suite(suite_path);
    std::vector<std::string> variant_names;
    {
        std::stringstream ss(variants_arg);
        std::string tok;
        while (std::getline(ss, tok, ',')) variant_names.push_back(tok);
    }
    for (const auto& v : variant_names) variant_from_string(v);  // fail fast

    struct Cell {
        ObjectiveVector best;
        double seconds_to_best = 0.0;
        std::vector<ObjectiveVector> front;
    };
    std::vector<std::vector<std::vector<Cell>>> results(
        suite.size(), std::vector<std::vector<Cell>>(variant_names.size(),
                                                     std::vector<Cell>(repeats)));
    std::vector<std::function<void()>> cells;
    for (std::size_t si = 0; si < suite.size(); ++si)
        for (std::size_t vi = 0; vi < variant_names.size(); ++vi)
            for (int r = 0; r < repeats; ++r)
                cells.push_back([&, si, vi, r] {
                    SolverConfig c;
                    c.variant = variant_from_string(variant_names[vi]);
                    if (c.variant == Variant::FixedAction) {
                        const std::string& s = variant_names[vi];
                        c.fixed_action = std::stoi(s.substr(5));
                        c.action_set = {c.fixed_action};
                    }
                    apply_iterations(c, iterations);
                    c.seed = g.seed + static_cast<std::uint64_t>(r);
                    const RunReport rep = solve(suite[si].second, c);
                    Cell& cell = results[si][vi][r];
                    cell.best = rep.best_objectives;
                    cell.seconds_to_best = rep.seconds_to_best;
                    for (const auto& e : rep.archive) cell.front.push_back(e.objectives);
                });
    run_cells(g.workers, cells);

    Table table;
    table.header = {"instance", "variant", "AvS", "BS", "T"};
    std::map<std::string, std::array<double, 3>> averages;  // variant -> sums
    for (std::size_t si = 0; si < suite.size(); ++si) {
        double best_f1 = std::numeric_limits<double>::infinity();
        for (const auto& per_variant : results[si])
            for (const auto& cell : per_variant) best_f1 = std::min(best_f1, cell.best.tardiness);
        for (std::size_t vi = 0; vi < variant_names.size(); ++vi) {
            std::vector<double> f1s;
            double t_sum = 0.0;
            for (const auto& cell : results[si][vi]) {
                f1s.push_back(cell.best.tardiness);
                t_sum += cell.seconds_to_best;
            }
            const auto rpds = metrics::rpd(f1s, best_f1);
            double avs = 0.0, bs = std::numeric_limits<double>::infinity();
            for (double v : rpds.values) {
                avs += v;
                bs = std::min(bs, v);
            }
            avs /= rpds.values.size();
            const double t = t_sum / repeats;
            table.rows.push_back({suite[si].first, variant_names[vi], fmt(avs, 2), fmt(bs, 2),
                                  fmt(t, 3)});
            auto& a = averages[variant_names[vi]];
            a[0] += avs;
            a[1] += bs;
            a[2] += t;
        }
    }
    for (const auto& v : variant_names) {
        const auto& a = averages[v];
        const double n = static_cast<double>(suite.size());
        table.rows.push_back({"Average", v, fmt(a[0] / n, 2), fmt(a[1] / n, 2), fmt(a[2] / n, 3)});
    }
    table.write(fs::path(g.out_dir) / "bench", g.format);

    // Front quality: pairwise QALNS vs RLNS plus the exact front where the
    // state space is small enough to enumerate.
    const auto index_of = [&](const std::string& name) -> int {
        for (std::size_t i = 0; i < variant_names.size(); ++i)
            if (variant_names[i] == name) return static_cast<int>(i);
        return -1;
    };
    const int qi = index_of("qalns");
    const int ri = index_of("rlns");
    Table fronts;
    fronts.header = {"instance", "nr_qalns", "nr_rlns", "hv_qalns", "hv_rlns", "hcc_qalns",
                     "hcc_rlns", "nr_qalns_vs_oracle"};
    if (qi >= 0 && ri >= 0) {
        for (std::size_t si = 0; si < suite.size(); ++si) {
            auto pooled = [&](int vi) {
                std::vector<ObjectiveVector> pts;
                for (const auto& cell : results[si][vi])
                    pts.insert(pts.end(), cell.front.begin(), cell.front.end());
                return nondominated(std::move(pts));
            };
            metrics::FrontSet fq{"qalns", pooled(qi)};
            metrics::FrontSet fr{"rlns", pooled(ri)};
            const auto nr = metrics::nondominance_ratio(fq, fr);
            const auto hv = metrics::normalized_hypervolume(fq, fr);
            std::string nr_oracle = "";
            const oracle::Limits limits;
            if (state_upper_bound(suite[si].second, limits.max_states) <= limits.max_states) {
                try {
                    const auto exact = oracle::enumerate_pareto(suite[si].second, limits);
                    metrics::FrontSet fe{"oracle", {}};
                    for (const auto& e : exact) fe.points.push_back(e.objectives);
                    nr_oracle = fmt(metrics::nondominance_ratio(fq, fe).nr_b);
                } catch (const oracle::StateSpaceTooLarge&) {
                }
            }
            fronts.rows.push_back({suite[si].first, fmt(nr.nr_b), fmt(nr.nr_c), fmt(hv.hv_b),
                                   fmt(hv.hv_c), fmt(metrics::hcc(fq)), fmt(metrics::hcc(fr)),
                                   nr_oracle});
        }
        fronts.write(fs::path(g.out_dir) / "bench_fronts", g.format);
    }
    std::cout << "bench complete: " << suite.size() << " instances x " << variant_names.size()
              << " variants x " << repeats << " runs\n";
    return 0;
}

// ---------------------------------------------------------------- strategy

int cmd_strategy(const GlobalOpts& g, const std::string& suite_path, int repeats,
                 int iterations) {
    const auto suite = load_suite(suite_path);
    const std::vector<Strategy> strategies = {Strategy::Adaptive, Strategy::Fix, Strategy::Mix};

    struct Cell {
        ObjectiveVector best;
        double mean_util = 0.0;
        double mixed_share = 0.0;
        std::string gantt;
    };
    std::vector<std::vector<std::vector<Cell>>> results(
        suite.size(),
        std::vector<std::vector<Cell>>(strategies.size(), std::vector<Cell>(repeats)));
    std::vector<std::function<void()>> cells;
    for (std::size_t si = 0; si < suite.size(); ++si)
        for (std::size_t sti = 0; sti < strategies.size(); ++sti)
            for (int r = 0; r < repeats; ++r)
                cells.push_back([&, si, sti, r] {
                    SolverConfig c;
                    c.strategy = strategies[sti];
                    apply_iterations(c, iterations);
                    c.seed = g.seed + static_cast<std::uint64_t>(r);
                    const RunReport rep = solve(suite[si].second, c);
                    Cell& cell = results[si][sti][r];
                    cell.best = rep.best_objectives;
                    const auto util = dock_utilization(suite[si].second, rep.best_solution);
                    for (double u : util) cell.mean_util += u;
                    cell.mean_util /= util.size();
                    int mixed = 0;
                    for (DockMode m : rep.best_solution.modes)
                        if (m == DockMode::Mixed) ++mixed;
                    cell.mixed_share =
                        static_cast<double>(mixed) / rep.best_solution.modes.size();
                    json gantt = json::array();
                    for (const auto& rec : gantt_export(suite[si].second, rep.best_solution))
                        gantt.push_back({{"dock", rec.dock},
                                         {"truck", rec.truck},
                                         {"direction", to_string(rec.direction)},
                                         {"start", rec.start},
                                         {"end", rec.end},
                                         {"mode", to_string(rec.mode)}});
                    cell.gantt = gantt.dump(2) + "\n";
                });
    run_cells(g.workers, cells);

    Table table;
    table.header = {"instance", "strategy", "seed", "tardiness", "makespan", "distance",
                    "norm_tardiness", "norm_makespan", "norm_distance", "mean_utilization",
                    "mixed_share"};
    for (std::size_t si = 0; si < suite.size(); ++si) {
        // Min-max scale each objective across every run of this instance.
        std::array<double, 3> lo, hi;
        lo.fill(std::numeric_limits<double>::infinity());
        hi.fill(-std::numeric_limits<double>::infinity());
        for (const auto& per_strategy : results[si])
            for (const auto& cell : per_strategy)
                for (int d = 0; d < 3; ++d) {
                    lo[d] = std::min(lo[d], cell.best.as_array()[d]);
                    hi[d] = std::max(hi[d], cell.best.as_array()[d]);
                }
        auto norm = [&](double v, int d) {
            return hi[d] > lo[d] ? (v - lo[d]) / (hi[d] - lo[d]) : 0.0;
        };
        for (std::size_t sti = 0; sti < strategies.size(); ++sti)
            for (int r = 0; r < repeats; ++r) {
                const Cell& cell = results[si][sti][r];
                const auto o = cell.best.as_array();
                table.rows.push_back(
                    {suite[si].first, to_string(strategies[sti]),
                     std::to_string(g.seed + static_cast<std::uint64_t>(r)), fmt(o[0], 2),
                     fmt(o[1], 2), fmt(o[2], 2), fmt(norm(o[0], 0)), fmt(norm(o[1], 1)),
                     fmt(norm(o[2], 2)), fmt(cell.mean_util), fmt(cell.mixed_share)});
                const std::string name = suite[si].first + "_" +
                                         to_string(strategies[sti]) + "_" + std::to_string(r) +
                                         ".json";
                write_file(fs::path(g.out_dir) / "gantt" / name, cell.gantt);
            }
    }
    table.write(fs::path(g.out_dir) / "strategy", g.format);
    std::cout << "strategy comparison complete\n";
    return 0;
}

// ---------------------------------------------------------------- sweep

using ParamSetter = std::function<void(SolverConfig&, const json&)>;

const std::map<std::string, ParamSetter>& param_setters() {
    static const std::map<std::string, ParamSetter> setters = {
        {"temp_scale", [](SolverConfig& c, const json& v) { c.temp_scale = v.get<double>(); }},
        {"epsilon", [](SolverConfig& c, const json& v) { c.epsilon = v.get<double>(); }},
        {"epsilon_decay",
         [](SolverConfig& c, const json& v) { c.epsilon_decay = v.get<double>(); }},
        {"learning_rate",
         [](SolverConfig& c, const json& v) { c.learning_rate = v.get<double>(); }},
        {"discount", [](SolverConfig& c, const json& v) { c.discount = v.get<double>(); }},
        {"non_improve_limit",
         [](SolverConfig& c, const json& v) { c.non_improve_limit = v.get<int>(); }},
        {"global_weight",
         [](SolverConfig& c, const json& v) { c.global_weight = v.get<double>(); }},
        {"learning_loop", [](SolverConfig& c, const json& v) { c.learning_loop = v.get<int>(); }},
        {"outer_iterations",
         [](SolverConfig& c, const json& v) { c.outer_iterations = v.get<int>(); }},
        {"reward_norm", [](SolverConfig& c, const json& v) { c.reward_norm = v.get<double>(); }},
        {"cooling_rate", [](SolverConfig& c, const json& v) { c.cooling_rate = v.get<double>(); }},
    };
    return setters;
}

int cmd_sweep(const GlobalOpts& g, const std::string& instance_path, const std::string& grid_path,
              bool factorial, int repeats) {
    const Instance inst = load_instance(instance_path);
    inst.validate();
    const json grid = json::parse(read_file(grid_path));
    std::vector<std::pair<std::string, std::vector<json>>> params;
    for (const auto& [key, values] : grid.items()) {
        if (!param_setters().count(key)) throw ValidationError("unknown sweep parameter: " + key);
        params.emplace_back(key, std::vector<json>(values.begin(), values.end()));
    }
    if (params.empty()) throw ValidationError("empty sweep grid");

    struct SweepCell {
        std::string label;
        SolverConfig config;
        std::array<double, 3> mean{};
    };
    std::vector<SweepCell> sweep;
    if (factorial) {
        std::vector<std::size_t> idx(params.size(), 0);
        for (;;) {
            SweepCell cell;
            for (std::size_t p = 0; p < params.size(); ++p) {
                const json& v = params[p].second[idx[p]];
                param_setters().at(params[p].first)(cell.config, v);
                cell.label += (p ? ";" : "") + params[p].first + "=" + v.dump();
            }
            sweep.push_back(cell);
            std::size_t p = 0;
            while (p < params.size() && ++idx[p] == params[p].second.size()) idx[p++] = 0;
            if (p == params.size()) break;
        }
    } else {
        for (const auto& [key, values] : params)
            for (const json& v : values) {
                SweepCell cell;
                param_setters().at(key)(cell.config, v);
                cell.label = key + "=" + v.dump();
                sweep.push_back(cell);
            }
    }

    std::vector<std::function<void()>> cells;
    for (auto& cell : sweep)
        cells.push_back([&, g] {
            std::array<double, 3> sum{};
            for (int r = 0; r < repeats; ++r) {
                SolverConfig c = cell.config;
                c.seed = g.seed + static_cast<std::uint64_t>(r);
                const auto o = solve(inst, c).best_objectives.as_array();
                for (int d = 0; d < 3; ++d) sum[d] += o[d];
            }
            for (int d = 0; d < 3; ++d) cell.mean[d] = sum[d] / repeats;
        });
    run_cells(g.workers, cells);

    Table table;
    table.header = {"cell", "tardiness", "makespan", "distance"};
    for (const auto& cell : sweep)
        table.rows.push_back({cell.label, fmt(cell.mean[0], 2), fmt(cell.mean[1], 2),
                              fmt(cell.mean[2], 2)});
    table.write(fs::path(g.out_dir) / "sweep", g.format);
    std::cout << sweep.size() << " sweep cells\n";
    return 0;
}

// ---------------------------------------------------------------- report

int cmd_report(const GlobalOpts& g, const std::string& in_path, const std::string& out_name) {
    std::vector<fs::path> files;
    if (fs::is_directory(in_path)) {
        for (const auto& e : fs::directory_iterator(in_path))
            if (e.path().extension() == ".json") files.push_back(e.path());
        std::sort(files.begin(), files.end());
    } else {
        files.emplace_back(in_path);
    }
    if (files.empty()) throw ValidationError("no report files at " + in_path);

    std::string csv = run_report_csv_header();
    for (const auto& f : files) {
        const json j = json::parse(read_file(f.string()));
        if (!j.contains("best") || !j.contains("config")) continue;
        const json& obj = j["best"]["objectives"];
        char buf[256];
        std::snprintf(buf, sizeof(buf), "%s,%s,%s,%llu,%.2f,%.2f,%.6f,%.3f,%d\n",
                      j.value("instance", f.stem().string()).c_str(),
                      j["config"].value("variant", "QALNS").c_str(),
                      j["config"].value("strategy", "Adaptive").c_str(),
                      static_cast<unsigned long long>(j["config"].value("seed", 0ull)),
                      obj.value("tardiness", 0.0), obj.value("makespan", 0.0),
                      obj.value("distance", 0.0), 0.0, j.value("iterations_to_best", 0));
        csv += buf;
    }
    write_file(fs::path(g.out_dir) / (out_name.empty() ? "summary.csv" : out_name), csv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"TASP-DMD solver and experiment harness"};
    app.require_subcommand(1);

    GlobalOpts g;
    auto* seed_opt = app.add_option("--seed", g.seed, "Base RNG seed");
    app.add_option("--workers", g.workers, "Worker threads for run cells");
    app.add_option("--out-dir", g.out_dir, "Output directory");
    app.add_option("--format", g.format, "Summary table format")
        ->check(CLI::IsMember({"csv", "json"}));

    std::string gen_config, gen_out;
    auto* gen = app.add_subcommand("gen", "Generate test instances");
    gen->add_option("--config", gen_config, "GeneratorConfig JSON (omit for the ten-scale suite)");
    gen->add_option("--out", gen_out, "Output file name for a single instance");

    std::string solve_instance, solve_config, solve_out;
    auto* solve_cmd = app.add_subcommand("solve", "Solve one instance");
    solve_cmd->add_option("--instance", solve_instance, "Instance JSON")->required();
    solve_cmd->add_option("--config", solve_config, "SolverConfig JSON");
    solve_cmd->add_option("--out", solve_out, "Report file stem");

    std::string fo_suite;
    int fo_repeats = 10, fo_iters = 400;
    double fo_threshold = 0.4;
    auto* fo = app.add_subcommand("filter-ops", "Operator filtering experiment");
    fo->add_option("--suite", fo_suite, "Instance file or directory")->required();
    fo->add_option("--repeats", fo_repeats, "Runs per cell");
    fo->add_option("--iterations", fo_iters, "Outer iterations per run");
    fo->add_option("--threshold", fo_threshold, "Dominance ratio cutoff");

    std::string bench_suite, bench_variants = "qalns,rlns,salns";
    int bench_repeats = 10, bench_iters = 400;
    auto* bench = app.add_subcommand("bench", "Variant comparison experiment");
    bench->add_option("--suite", bench_suite, "Instance file or directory")->required();
    bench->add_option("--variants", bench_variants, "Comma list: qalns,rlns,salns,fixedN");
    bench->add_option("--repeats", bench_repeats, "Runs per cell");
    bench->add_option("--iterations", bench_iters, "Outer iterations per run");

    std::string strat_suite;
    int strat_repeats = 10, strat_iters = 400;
    auto* strat = app.add_subcommand("strategy", "Dock mode strategy comparison");
    strat->add_option("--suite", strat_suite, "Instance file or directory")->required();
    strat->add_option("--repeats", strat_repeats, "Runs per cell");
    strat->add_option("--iterations", strat_iters, "Outer iterations per run");

    std::string sweep_instance, sweep_grid;
    bool sweep_factorial = false;
    int sweep_repeats = 1;
    auto* sweep = app.add_subcommand("sweep", "Parameter sensitivity sweep");
    sweep->add_option("--instance", sweep_instance, "Instance JSON")->required();
    sweep->add_option("--grid", sweep_grid, "Grid JSON: {\"param\": [values]}")->required();
    sweep->add_flag("--factorial", sweep_factorial, "Full factorial instead of one-at-a-time");
    sweep->add_option("--repeats", sweep_repeats, "Runs per cell (mean reported)");

    std::string report_in, report_out;
    auto* report = app.add_subcommand("report", "Merge run reports into a CSV summary");
    report->add_option("--in", report_in, "Report file or directory")->required();
    report->add_option("--out", report_out, "Output file name");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*gen) return cmd_gen(g, gen_config, gen_out);
        if (*solve_cmd)
            return cmd_solve(g, solve_instance, solve_config, solve_out, seed_opt->count() > 0);
        if (*fo) return cmd_filter_ops(g, fo_suite, fo_repeats, fo_iters, fo_threshold);
        if (*bench) return cmd_bench(g, bench_suite, bench_variants, bench_repeats, bench_iters);
        if (*strat) return cmd_strategy(g, strat_suite, strat_repeats, strat_iters);
        if (*sweep) return cmd_sweep(g, sweep_instance, sweep_grid, sweep_factorial, sweep_repeats);
        if (*report) return cmd_report(g, report_in, report_out);
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 1;
}
