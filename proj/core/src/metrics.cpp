#include "taspdmd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "json.hpp"

namespace taspdmd {
namespace metrics {

RpdResult rpd(const std::vector<double>& tardiness, double best) {
    RpdResult out;
    if (best <= 0.0) {
        best = 0.01;  // one tick
        out.best_was_guarded = true;
    }
    out.values.reserve(tardiness.size());
    // The guard floors the observations too, so a value equal to the true
    // (zero) best still reads as 0%.
    for (double r : tardiness) out.values.push_back((std::max(r, best) - best) / best * 100.0);
    return out;
}

NrResult nondominance_ratio(const FrontSet& b, const FrontSet& c) {
    struct Point {
        ObjectiveVector v;
        bool in_b = false;
        bool in_c = false;
    };
    std::vector<Point> points;
    auto add = [&](const ObjectiveVector& v, bool from_b) {
        for (auto& p : points) {
            if (p.v == v) {
                (from_b ? p.in_b : p.in_c) = true;
                return;
            }
        }
        Point p{v};
        (from_b ? p.in_b : p.in_c) = true;
        points.push_back(p);
    };
    for (const auto& v : b.points) add(v, true);
    for (const auto& v : c.points) add(v, false);

    int nd_total = 0, nd_b = 0, nd_c = 0;
    for (const auto& p : points) {
        bool dominated = false;
        for (const auto& q : points)
            if (dominates(q.v, p.v)) { dominated = true; break; }
        if (dominated) continue;
        ++nd_total;
        if (p.in_b) ++nd_b;
        if (p.in_c) ++nd_c;
    }
    if (nd_total == 0) return {};
    return {static_cast<double>(nd_b) / nd_total, static_cast<double>(nd_c) / nd_total};
}

double hypervolume(const FrontSet& front, const ObjectiveVector& reference) {
    std::vector<std::array<double, 3>> pts;
    for (const auto& p : front.points) {
        const auto a = p.as_array();
        const auto r = reference.as_array();
        if (a[0] <= r[0] && a[1] <= r[1] && a[2] <= r[2]) pts.push_back(a);
        // points beyond the reference contribute nothing; drop them
    }
    if (pts.empty()) return 0.0;

    // Sweep the third objective: between consecutive z-levels the dominated
    // region is a union of 2-D rectangles whose area comes from the (x, y)
    // staircase of all points at or below the slab.
    std::vector<double> zs;
    for (const auto& p : pts) zs.push_back(p[2]);
    zs.push_back(reference.distance);
    std::sort(zs.begin(), zs.end());
    zs.erase(std::unique(zs.begin(), zs.end()), zs.end());

    // Staircase over distinct x with the running minimum y: sort by x, keep
    // the best (lowest) y seen so far, sum rectangles up to the reference.
    auto area_at = [&](double z) {
        std::vector<std::array<double, 2>> xy;
        for (const auto& p : pts)
            if (p[2] <= z) xy.push_back({p[0], p[1]});
        if (xy.empty()) return 0.0;
        std::sort(xy.begin(), xy.end());
        double area = 0.0;
        double prev_x = xy[0][0];
        double cur_y = xy[0][1];
        for (std::size_t i = 1; i < xy.size(); ++i) {
            if (xy[i][1] >= cur_y) continue;  // dominated in this slab
            area += (xy[i][0] - prev_x) * (reference.makespan - cur_y);
            prev_x = xy[i][0];
            cur_y = xy[i][1];
        }
        area += (reference.tardiness - prev_x) * (reference.makespan - cur_y);
        return area;
    };

    double volume = 0.0;
    for (std::size_t i = 0; i + 1 < zs.size(); ++i)
        volume += area_at(zs[i]) * (zs[i + 1] - zs[i]);
    return volume;
}

namespace {

std::array<double, 2> minmax_of(const std::vector<ObjectiveVector>& pts, int dim) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& p : pts) {
        lo = std::min(lo, p.as_array()[dim]);
        hi = std::max(hi, p.as_array()[dim]);
    }
    return {lo, hi};
}

ObjectiveVector normalize_point(const ObjectiveVector& p,
                                const std::array<std::array<double, 2>, 3>& ranges) {
    auto scale = [&](double v, int d) {
        const double span = ranges[d][1] - ranges[d][0];
        return span > 0.0 ? (v - ranges[d][0]) / span : 0.0;
    };
    return {scale(p.tardiness, 0), scale(p.makespan, 1), scale(p.distance, 2)};
}

}  // namespace

NormalizedHv normalized_hypervolume(const FrontSet& b, const FrontSet& c) {
    std::vector<ObjectiveVector> all = b.points;
    all.insert(all.end(), c.points.begin(), c.points.end());
    const std::array<std::array<double, 2>, 3> ranges = {minmax_of(all, 0), minmax_of(all, 1),
                                                         minmax_of(all, 2)};
    const ObjectiveVector ref{1.1, 1.1, 1.1};
    FrontSet nb{b.label, {}}, nc{c.label, {}};
    for (const auto& p : b.points) nb.points.push_back(normalize_point(p, ranges));
    for (const auto& p : c.points) nc.points.push_back(normalize_point(p, ranges));
    return {hypervolume(nb, ref), hypervolume(nc, ref)};
}

double hcc(const FrontSet& front) {
    const std::size_t n = front.points.size();
    if (n <= 1) return 0.0;
    const std::array<std::array<double, 2>, 3> ranges = {
        minmax_of(front.points, 0), minmax_of(front.points, 1), minmax_of(front.points, 2)};
    std::vector<std::array<double, 3>> pts;
    for (const auto& p : front.points)
        pts.push_back(normalize_point(p, ranges).as_array());

    // Single-linkage merge distances equal the MST edge weights (Prim).
    std::vector<double> dist(n, std::numeric_limits<double>::infinity());
    std::vector<bool> used(n, false);
    dist[0] = 0.0;
    double total = 0.0;
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t best = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!used[i] && (best == n || dist[i] < dist[best])) best = i;
        used[best] = true;
        total += dist[best];
        for (std::size_t i = 0; i < n; ++i) {
            if (used[i]) continue;
            double d2 = 0.0;
            for (int d = 0; d < 3; ++d) {
                const double diff = pts[best][d] - pts[i][d];
                d2 += diff * diff;
            }
            dist[i] = std::min(dist[i], std::sqrt(d2));
        }
    }
    return total;
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::AWins: return "A_wins";
        case Verdict::BWins: return "B_wins";
        default: return "tie";
    }
}

WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& a, const std::vector<double>& b,
                                    double alpha) {
    if (a.size() != b.size()) throw std::invalid_argument("paired samples differ in length");
    std::vector<double> diffs;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        if (d != 0.0) diffs.push_back(d);
    }
    const std::size_t n = diffs.size();
    WilcoxonResult out;
    if (n < 6) {
        out.too_few_pairs = true;
        return out;
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return std::fabs(diffs[i]) < std::fabs(diffs[j]);
    });
    std::vector<double> rank(n, 0.0);
    double tie_correction = 0.0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && std::fabs(diffs[order[j]]) == std::fabs(diffs[order[i]])) ++j;
        const double mid = (i + 1 + j) / 2.0;  // average of ranks i+1 .. j
        for (std::size_t k = i; k < j; ++k) rank[order[k]] = mid;
        const double t = static_cast<double>(j - i);
        tie_correction += t * t * t - t;
        i = j;
    }

    double w_plus = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        if (diffs[i] > 0.0) w_plus += rank[i];
    out.statistic = w_plus;

    const double nn = static_cast<double>(n);
    const double mean = nn * (nn + 1.0) / 4.0;
    const double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie_correction / 48.0;
    if (var <= 0.0) return out;
    const double diff = w_plus - mean;
    const double cc = diff > 0 ? -0.5 : (diff < 0 ? 0.5 : 0.0);
    const double z = (diff + cc) / std::sqrt(var);
    out.p = std::min(1.0, std::erfc(std::fabs(z) / std::sqrt(2.0)));
    if (out.p < alpha) {
        // Lower values are better: if positive differences (a > b) carry the
        // larger rank mass, b is the better sample.
        out.verdict = w_plus > mean ? Verdict::BWins : Verdict::AWins;
    }
    return out;
}

DominanceMatrix dominance_matrix(const std::vector<std::string>& labels,
                                 const std::vector<std::vector<double>>& samples,
                                 double alpha) {
    const std::size_t n = samples.size();
    if (n < 2) throw std::invalid_argument("dominance matrix needs at least two operators");
    DominanceMatrix m;
    m.labels = labels;
    m.zeta.assign(n, std::vector<int>(n, 0));
    m.wins.assign(n, 0);
    m.ratio.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const WilcoxonResult w = wilcoxon_signed_rank(samples[i], samples[j], alpha);
            int z = 0;
            if (w.verdict == Verdict::AWins) z = 1;
            else if (w.verdict == Verdict::BWins) z = -1;
            m.zeta[i][j] = z;
            m.zeta[j][i] = -z;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            if (m.zeta[i][j] == 1) ++m.wins[i];
        m.ratio[i] = static_cast<double>(m.wins[i]) / static_cast<double>(n);
    }
    return m;
}

std::vector<int> filter_by_ratio(const DominanceMatrix& m, double threshold) {
    std::vector<int> out;
    for (std::size_t i = 0; i < m.ratio.size(); ++i)
        if (m.ratio[i] >= threshold) out.push_back(static_cast<int>(i));
    return out;
}

RelativeImprovementResult relative_improvement(const std::vector<double>& global_improvement,
                                               const std::vector<int>& success_count) {
    const std::size_t n = global_improvement.size();
    std::vector<double> r(n, 0.0);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (success_count[i] > 0) r[i] = global_improvement[i] / success_count[i];
        sum += r[i];
    }
    RelativeImprovementResult out;
    out.percent.assign(n, 0.0);
    if (sum <= 0.0) {
        out.all_zero = true;
        return out;
    }
    for (std::size_t i = 0; i < n; ++i) out.percent[i] = r[i] / sum * 100.0;
    return out;
}

std::string dominance_matrix_to_json_text(const DominanceMatrix& m) {
    nlohmann::json j;
    j["labels"] = m.labels;
    j["zeta"] = m.zeta;
    j["wins"] = m.wins;
    j["ratio"] = m.ratio;
    return j.dump(2) + "\n";
}

}  // namespace metrics
}  // namespace taspdmd
