#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "morl/rank_stats.hpp"
#include "morl/types.hpp"

namespace morl {

// One algorithm's evaluation outcome: (conditioning weight, induced return)
// pairs, one per evaluation batch. Non-conditioned algorithms still carry
// the weights they were paired with; their returns are simply
// weight-independent.
struct SolutionSet {
    std::string algorithm;
    std::vector<WeightVector> weights;
    std::vector<ObjectiveVector> returns;

    std::size_t size() const { return returns.size(); }
    std::size_t dim() const { return returns.empty() ? 0 : returns.front().dim(); }
};

struct ParetoFront {
    std::vector<ObjectiveVector> points;
};

// Per-objective (min, max) pairs used for min-max normalization.
struct NormalizationRange {
    std::vector<double> min;
    std::vector<double> max;
    std::size_t dim() const { return min.size(); }
};

enum class RankMethod { spearman, kendall };

// Per-objective rank correlation between conditioning weights and induced
// returns, plus the aggregate (sum of the defined coefficients).
struct ControllabilityReport {
    std::vector<RankCorrelation> per_objective;
    double aggregate = 0.0;
};

struct CosineStats {
    std::optional<double> mean;
    std::optional<double> stddev;   // population std, matching mean +/- std reporting
    std::size_t skipped = 0;        // zero-norm pairs excluded from the stats
};

// True iff a is at least as good as b everywhere and strictly better
// somewhere. Equality is not dominance.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

// All points not dominated by any other; duplicates of a retained point
// collapse to one.
ParetoFront pareto_filter(const std::vector<ObjectiveVector>& points);

// Exact hypervolume of the union of boxes [ref, v]. D=2 uses a sorted
// sweep; D>=3 slices recursively over the last objective. Points not above
// the reference in some coordinate are clipped to it (zero-extent boxes
// contribute nothing).
double hypervolume(const ParetoFront& front, const ObjectiveVector& ref);

// Dedicated 2-D sweep, exposed so the recursive slicer can be checked
// against it on shared inputs.
double hypervolume_2d_sweep(const std::vector<ObjectiveVector>& points,
                            const ObjectiveVector& ref);

// Mean squared gap between per-objective sorted front values; 0 for a
// singleton front.
double sparsity(const ParetoFront& front);

// Mean over weights of the best scalarized solution: the utility an ideal
// selector would extract from the set.
double expected_utility(const std::vector<ObjectiveVector>& solutions,
                        const std::vector<WeightVector>& weights);

// Per-weight utilities max_v v.w, one entry per weight (used for the
// mean +/- std presentation of expected utility).
std::vector<double> utility_per_weight(const std::vector<ObjectiveVector>& solutions,
                                       const std::vector<WeightVector>& weights);

// Mean and population std of cos(w, v) over the pairs; zero-norm returns
// are skipped and counted. All pairs zero-norm yields empty stats.
CosineStats cosine_alignment(const SolutionSet& pairs);

// Rank correlation between W^d and V^d for every objective d, on raw
// returns. Undefined coefficients are carried as empty markers and omitted
// from the aggregate; the report never fails as a whole.
ControllabilityReport controllability(const SolutionSet& set, RankMethod method);

// Per-objective extrema over the union of all returns across algorithms.
NormalizationRange minmax_range(const std::vector<SolutionSet>& sets);

// (v - min) / (max - min) per objective; degenerate objectives (max == min)
// map to 0.
ObjectiveVector normalize(const ObjectiveVector& v, const NormalizationRange& range);
SolutionSet normalize(const SolutionSet& set, const NormalizationRange& range);

// Per-objective minimum over all (already normalized) returns, pushed a
// fixed offset further out in every coordinate.
ObjectiveVector nadir_reference(const std::vector<SolutionSet>& normalized_sets,
                                double offset = 0.1);

// SolutionSet CSV: header `algorithm,batch,w_0..w_{D-1},v_0..v_{D-1}`, one
// row per evaluation batch. Doubles round-trip exactly.
void write_solution_set_csv(std::ostream& os, const SolutionSet& set);
SolutionSet read_solution_set_csv(std::istream& is);

}  // namespace morl
