#pragma once

#include <string>
#include <vector>

#include "taspdmd/solution.hpp"

namespace taspdmd {
namespace metrics {

struct FrontSet {
    std::string label;
    std::vector<ObjectiveVector> points;
};

/// Relative percentage deviation from the best tardiness. A non-positive
/// best is replaced by one tick and flagged.
struct RpdResult {
    std::vector<double> values;  // percent
    bool best_was_guarded = false;
};
RpdResult rpd(const std::vector<double>& tardiness, double best);

/// Non-dominance ratios of two fronts against their combined front.
/// Shared points credit both sides.
struct NrResult {
    double nr_b = 0.0;
    double nr_c = 0.0;
};
NrResult nondominance_ratio(const FrontSet& b, const FrontSet& c);

/// Exact 3-D hypervolume of the region dominated by `front` and bounded by
/// `reference` (minimization). Points beyond the reference are clipped out.
double hypervolume(const FrontSet& front, const ObjectiveVector& reference);

/// Min-max normalizes both fronts against their combined ranges and scores
/// each with reference (1.1, 1.1, 1.1).
struct NormalizedHv {
    double hv_b = 0.0;
    double hv_c = 0.0;
};
NormalizedHv normalized_hypervolume(const FrontSet& b, const FrontSet& c);

/// Sum of single-linkage merge distances over min-max-normalized objectives.
double hcc(const FrontSet& front);

enum class Verdict { AWins, BWins, Tie };

const char* to_string(Verdict v);

/// Two-sided Wilcoxon signed-rank test, normal approximation with tie and
/// continuity corrections. Lower values are better; the verdict direction
/// follows the signed-rank sums.
struct WilcoxonResult {
    double statistic = 0.0;  // W+ (sum of positive-difference ranks)
    double p = 1.0;
    Verdict verdict = Verdict::Tie;
    bool too_few_pairs = false;
};
WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& a, const std::vector<double>& b,
                                    double alpha = 0.05);

struct DominanceMatrix {
    std::vector<std::string> labels;
    std::vector<std::vector<int>> zeta;  // antisymmetric, {-1,0,1}
    std::vector<int> wins;               // C_i
    std::vector<double> ratio;           // Z_i = C_i / n
};

/// Pairwise Wilcoxon comparisons on paired per-operator samples
/// (prioritized objective, lower is better).
DominanceMatrix dominance_matrix(const std::vector<std::string>& labels,
                                 const std::vector<std::vector<double>>& samples,
                                 double alpha = 0.05);

std::vector<int> filter_by_ratio(const DominanceMatrix& m, double threshold = 0.4);

/// RI(a): per-action share of average improvement per successful application.
struct RelativeImprovementResult {
    std::vector<double> percent;
    bool all_zero = false;
};
RelativeImprovementResult relative_improvement(const std::vector<double>& global_improvement,
                                               const std::vector<int>& success_count);

std::string dominance_matrix_to_json_text(const DominanceMatrix& m);

}  // namespace metrics
}  // namespace taspdmd
