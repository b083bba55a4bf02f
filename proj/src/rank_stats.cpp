#include "morl/rank_stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace morl {

namespace {

// Regularized incomplete beta I_x(a, b) via the standard continued-fraction
// expansion (Lentz). Accurate to ~1e-14 for the argument ranges used by the
// t-distribution tail.
double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3.0e-16;
    constexpr double kFpMin = 1.0e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kFpMin) d = kFpMin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return h;
}

double inc_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * betacf(a, b, x) / a;
    return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

void check_pair(const std::vector<double>& x, const std::vector<double>& y, const char* who) {
    if (x.size() != y.size())
        throw std::invalid_argument(std::string(who) + ": length mismatch (" +
                                    std::to_string(x.size()) + " vs " +
                                    std::to_string(y.size()) + ")");
    if (x.size() < 3)
        throw std::invalid_argument(std::string(who) + ": need at least 3 samples");
}

}  // namespace

double student_t_sf(double t, double dof) {
    if (t < 0.0) return 1.0 - student_t_sf(-t, dof);
    const double x = dof / (dof + t * t);
    return 0.5 * inc_beta(0.5 * dof, 0.5, x);
}

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

std::vector<double> average_ranks(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("average_ranks: empty input");
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double shared = 0.5 * static_cast<double>(i + j) + 1.0;  // mean of ranks i+1..j+1
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
        i = j + 1;
    }
    return ranks;
}

RankCorrelation spearman(const std::vector<double>& x, const std::vector<double>& y) {
    check_pair(x, y, "spearman");
    const std::vector<double> rx = average_ranks(x);
    const std::vector<double> ry = average_ranks(y);
    const double mx = mean_of(rx);
    const double my = mean_of(ry);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        const double dx = rx[i] - mx;
        const double dy = ry[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) return {};  // zero rank variance: undefined
    double rho = sxy / std::sqrt(sxx * syy);
    rho = std::clamp(rho, -1.0, 1.0);

    const double n = static_cast<double>(x.size());
    double p;
    if (std::abs(rho) >= 1.0) {
        p = 0.0;
    } else {
        const double t = rho * std::sqrt((n - 2.0) / (1.0 - rho * rho));
        p = 2.0 * student_t_sf(std::abs(t), n - 2.0);
    }
    return {rho, std::min(p, 1.0)};
}

RankCorrelation kendall_tau(const std::vector<double>& x, const std::vector<double>& y) {
    check_pair(x, y, "kendall_tau");
    const std::size_t n = x.size();

    long long concordant_minus_discordant = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = x[i] - x[j];
            const double dy = y[i] - y[j];
            const double prod = dx * dy;
            if (prod > 0.0)
                ++concordant_minus_discordant;
            else if (prod < 0.0)
                --concordant_minus_discordant;
        }
    }

    // Tie-group sizes in each variable.
    auto tie_groups = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        std::vector<long long> groups;
        std::size_t i = 0;
        while (i < v.size()) {
            std::size_t j = i;
            while (j + 1 < v.size() && v[j + 1] == v[i]) ++j;
            if (j > i) groups.push_back(static_cast<long long>(j - i + 1));
            i = j + 1;
        }
        return groups;
    };
    const auto tx = tie_groups(x);
    const auto ty = tie_groups(y);

    const double nn = static_cast<double>(n);
    const double n0 = nn * (nn - 1.0) / 2.0;
    double n1 = 0.0, n2 = 0.0;
    double vt = 0.0, vu = 0.0;     // sum t(t-1)(2t+5)
    double t1x = 0.0, t1y = 0.0;   // sum t(t-1)(t-2)
    double t2x = 0.0, t2y = 0.0;   // sum t(t-1)
    for (long long t : tx) {
        const double td = static_cast<double>(t);
        n1 += td * (td - 1.0) / 2.0;
        vt += td * (td - 1.0) * (2.0 * td + 5.0);
        t1x += td * (td - 1.0) * (td - 2.0);
        t2x += td * (td - 1.0);
    }
    for (long long t : ty) {
        const double td = static_cast<double>(t);
        n2 += td * (td - 1.0) / 2.0;
        vu += td * (td - 1.0) * (2.0 * td + 5.0);
        t1y += td * (td - 1.0) * (td - 2.0);
        t2y += td * (td - 1.0);
    }

    const double denom = std::sqrt((n0 - n1) * (n0 - n2));
    if (denom <= 0.0) return {};  // one variable fully tied: undefined
    double tau = static_cast<double>(concordant_minus_discordant) / denom;
    tau = std::clamp(tau, -1.0, 1.0);

    // Normal approximation to C - D with tie corrections.
    double var = (nn * (nn - 1.0) * (2.0 * nn + 5.0) - vt - vu) / 18.0;
    if (n > 2) var += t1x * t1y / (9.0 * nn * (nn - 1.0) * (nn - 2.0));
    var += t2x * t2y / (2.0 * nn * (nn - 1.0));
    if (var <= 0.0) return {tau, 1.0};
    const double z = static_cast<double>(concordant_minus_discordant) / std::sqrt(var);
    const double p = std::min(1.0, 2.0 * normal_sf(std::abs(z)));
    return {tau, p};
}

}  // namespace morl
