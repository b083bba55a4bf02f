#pragma once

#include <optional>
#include <vector>

namespace morl {

// One rank-correlation result. `value` and `p_value` are empty when the
// coefficient is undefined (zero rank variance in either input), in which
// case the objective is omitted from aggregates.
struct RankCorrelation {
    std::optional<double> value;
    std::optional<double> p_value;
    bool defined() const { return value.has_value(); }
};

// 1-based ranks; tied values receive the mean of the ranks they span.
std::vector<double> average_ranks(const std::vector<double>& values);

// Spearman's rho: Pearson correlation of average ranks. Two-sided p-value
// from t = rho * sqrt((n-2) / (1-rho^2)) against Student's t with n-2
// degrees of freedom; |rho| = 1 maps to p = 0. Requires n >= 3.
RankCorrelation spearman(const std::vector<double>& x, const std::vector<double>& y);

// Kendall's tau-b (tie-corrected) with a two-sided p-value from the normal
// approximation to the concordance count. Requires n >= 3.
RankCorrelation kendall_tau(const std::vector<double>& x, const std::vector<double>& y);

// Survival function helpers exposed for testing against frozen references.
double student_t_sf(double t, double dof);   // P(T > t)
double normal_sf(double z);                  // P(Z > z)

}  // namespace morl
