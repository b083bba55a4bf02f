#include "morl/simplex.hpp"

#include <limits>
#include <stdexcept>

namespace morl {

WeightVector sample_simplex_uniform(RngStream& rng, std::size_t dim) {
    if (dim == 0) throw std::invalid_argument("sample_simplex_uniform: D must be >= 1");
    if (dim == 1) return WeightVector({1.0});
    std::vector<double> w(dim);
    double sum = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
        w[d] = rng.exponential();
        sum += w[d];
    }
    if (sum <= 0.0) {  // all draws hit exactly zero; fall back to the centroid
        for (auto& x : w) x = 1.0 / static_cast<double>(dim);
        return WeightVector(std::move(w));
    }
    for (auto& x : w) x /= sum;
    return WeightVector(std::move(w));
}

std::uint64_t simplex_lattice_count(std::size_t dim, std::uint64_t granularity) {
    // C(H + D - 1, D - 1), saturating at uint64 max.
    std::uint64_t result = 1;
    for (std::size_t i = 1; i < dim; ++i) {
        const std::uint64_t num = granularity + static_cast<std::uint64_t>(i);
        if (result > std::numeric_limits<std::uint64_t>::max() / num)
            return std::numeric_limits<std::uint64_t>::max();
        result = result * num / static_cast<std::uint64_t>(i);
    }
    return result;
}

namespace {

void enumerate_compositions(std::size_t dim, std::uint64_t remaining,
                            std::vector<std::uint64_t>& partial,
                            std::uint64_t granularity,
                            std::vector<WeightVector>& out) {
    if (partial.size() + 1 == dim) {
        partial.push_back(remaining);
        std::vector<double> w(dim);
        for (std::size_t d = 0; d < dim; ++d)
            w[d] = static_cast<double>(partial[d]) / static_cast<double>(granularity);
        out.push_back(WeightVector(std::move(w)));
        partial.pop_back();
        return;
    }
    for (std::uint64_t h = remaining + 1; h-- > 0;) {
        partial.push_back(h);
        enumerate_compositions(dim, remaining - h, partial, granularity, out);
        partial.pop_back();
    }
}

}  // namespace

std::vector<WeightVector> simplex_lattice(std::size_t dim, std::size_t n_target) {
    if (dim == 0) throw std::invalid_argument("simplex_lattice: D must be >= 1");
    if (n_target == 0) throw std::invalid_argument("simplex_lattice: n_target must be >= 1");
    if (dim == 1) return {WeightVector({1.0})};  // every granularity has 1 point

    const std::uint64_t target = n_target;
    std::uint64_t best_h = 1;
    std::uint64_t best_gap = simplex_lattice_count(dim, 1) > target
                                 ? simplex_lattice_count(dim, 1) - target
                                 : target - simplex_lattice_count(dim, 1);
    for (std::uint64_t h = 2;; ++h) {
        const std::uint64_t count = simplex_lattice_count(dim, h);
        const std::uint64_t gap = count > target ? count - target : target - count;
        if (gap < best_gap) {
            best_gap = gap;
            best_h = h;
        }
        if (count >= target) break;  // counts only grow from here
    }

    std::vector<WeightVector> out;
    std::vector<std::uint64_t> partial;
    // Descending first coordinate with descending recursion yields
    // lexicographically descending points.
    enumerate_compositions(dim, best_h, partial, best_h, out);
    return out;
}

}  // namespace morl
