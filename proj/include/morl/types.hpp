#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace morl {

// A point in R^D: one reward, return or value estimate per objective.
// Entries must be finite; the objective order is fixed per environment.
struct ObjectiveVector {
    std::vector<double> values;

    ObjectiveVector() = default;
    explicit ObjectiveVector(std::vector<double> v) : values(std::move(v)) {
        for (double x : values) {
            if (!std::isfinite(x))
                throw std::invalid_argument("ObjectiveVector: non-finite entry");
        }
        if (values.empty())
            throw std::invalid_argument("ObjectiveVector: dimension must be >= 1");
    }

    std::size_t dim() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
    double& operator[](std::size_t i) { return values[i]; }
    bool operator==(const ObjectiveVector& o) const { return values == o.values; }
};

// A point on the (D-1)-simplex: nonnegative weights summing to 1.
struct WeightVector {
    std::vector<double> weights;

    WeightVector() = default;
    explicit WeightVector(std::vector<double> w) : weights(std::move(w)) {
        if (weights.empty())
            throw std::invalid_argument("WeightVector: dimension must be >= 1");
        double sum = 0.0;
        for (double x : weights) {
            if (!(x >= 0.0))
                throw std::invalid_argument("WeightVector: negative or NaN entry");
            sum += x;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw std::invalid_argument("WeightVector: entries sum to " +
                                        std::to_string(sum) + ", expected 1");
    }

    std::size_t dim() const { return weights.size(); }
    double operator[](std::size_t i) const { return weights[i]; }
    bool operator==(const WeightVector& o) const { return weights == o.weights; }
};

struct DiscountSpec {
    double gamma = 0.99;

    DiscountSpec() = default;
    explicit DiscountSpec(double g) : gamma(g) {
        if (!(g >= 0.0 && g < 1.0))
            throw std::invalid_argument("DiscountSpec: gamma must be in [0,1)");
    }
};

// w . v, the scalar utility of v under linear preference w.
inline double scalarize(const ObjectiveVector& v, const WeightVector& w) {
    if (v.dim() != w.dim())
        throw std::invalid_argument("scalarize: dimension mismatch (" +
                                    std::to_string(v.dim()) + " vs " +
                                    std::to_string(w.dim()) + ")");
    double s = 0.0;
    for (std::size_t d = 0; d < v.dim(); ++d) s += v.values[d] * w.weights[d];
    return s;
}

// Sum_t gamma^t r_t, accumulated back-to-front (Horner) so that long
// episodes with gamma close to 1 do not lose the small tail terms.
inline ObjectiveVector discounted_return(const std::vector<ObjectiveVector>& rewards,
                                         const DiscountSpec& spec) {
    if (rewards.empty())
        throw std::invalid_argument("discounted_return: empty reward sequence");
    const std::size_t dim = rewards.front().dim();
    std::vector<double> acc(dim, 0.0);
    for (auto it = rewards.rbegin(); it != rewards.rend(); ++it) {
        if (it->dim() != dim)
            throw std::invalid_argument("discounted_return: inconsistent dimensions");
        for (std::size_t d = 0; d < dim; ++d)
            acc[d] = it->values[d] + spec.gamma * acc[d];
    }
    return ObjectiveVector(std::move(acc));
}

}  // namespace morl
