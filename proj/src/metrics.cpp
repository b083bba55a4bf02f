#include "morl/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace morl {

namespace {

void check_same_dim(std::size_t a, std::size_t b, const char* who) {
    if (a != b)
        throw std::invalid_argument(std::string(who) + ": dimension mismatch (" +
                                    std::to_string(a) + " vs " + std::to_string(b) + ")");
}

}  // namespace

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    check_same_dim(a.dim(), b.dim(), "dominates");
    bool strictly_better = false;
    for (std::size_t d = 0; d < a.dim(); ++d) {
        if (a.values[d] < b.values[d]) return false;
        if (a.values[d] > b.values[d]) strictly_better = true;
    }
    return strictly_better;
}

ParetoFront pareto_filter(const std::vector<ObjectiveVector>& points) {
    if (points.empty()) throw std::invalid_argument("pareto_filter: empty input");
    const std::size_t dim = points.front().dim();
    for (const auto& p : points) check_same_dim(p.dim(), dim, "pareto_filter");

    // Sort lexicographically descending: a point can only be dominated by
    // one at or before it, so a single pass against the running front
    // suffices. Duplicates land adjacent and collapse.
    std::vector<const ObjectiveVector*> sorted;
    sorted.reserve(points.size());
    for (const auto& p : points) sorted.push_back(&p);
    std::sort(sorted.begin(), sorted.end(),
              [](const ObjectiveVector* a, const ObjectiveVector* b) {
                  return a->values > b->values;
              });

    ParetoFront front;
    for (const ObjectiveVector* p : sorted) {
        bool keep = true;
        for (const auto& f : front.points) {
            if (f.values == p->values || dominates(f, *p)) {
                keep = false;
                break;
            }
        }
        if (keep) front.points.push_back(*p);
    }
    return front;
}

double hypervolume_2d_sweep(const std::vector<ObjectiveVector>& points,
                            const ObjectiveVector& ref) {
    // Clip at the reference, sort by x descending, sweep accumulating the
    // strictly-new y extent of each column.
    std::vector<std::pair<double, double>> pts;
    pts.reserve(points.size());
    for (const auto& p : points)
        pts.emplace_back(std::max(p.values[0], ref.values[0]),
                         std::max(p.values[1], ref.values[1]));
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second > b.second;
    });
    double volume = 0.0;
    double best_y = ref.values[1];
    for (const auto& [x, y] : pts) {
        if (y > best_y) {
            volume += (x - ref.values[0]) * (y - best_y);
            best_y = y;
        }
    }
    return volume;
}

namespace {

// Recursive objective slicing: integrate the (d-1)-dimensional volume of
// the cross-section over the last coordinate.
double hv_recursive(std::vector<ObjectiveVector> points, const ObjectiveVector& ref,
                    std::size_t dim) {
    if (points.empty()) return 0.0;
    if (dim == 1) {
        double best = ref.values[0];
        for (const auto& p : points) best = std::max(best, p.values[0]);
        return best - ref.values[0];
    }
    if (dim == 2) {
        std::vector<ObjectiveVector> flat;
        flat.reserve(points.size());
        for (const auto& p : points)
            flat.push_back(ObjectiveVector({p.values[0], p.values[1]}));
        return hypervolume_2d_sweep(flat, ObjectiveVector({ref.values[0], ref.values[1]}));
    }

    const std::size_t last = dim - 1;
    std::sort(points.begin(), points.end(),
              [last](const ObjectiveVector& a, const ObjectiveVector& b) {
                  return a.values[last] > b.values[last];
              });

    std::vector<double> sub_ref(ref.values.begin(), ref.values.begin() + last);
    const ObjectiveVector sub_ref_vec{std::vector<double>(sub_ref)};

    double volume = 0.0;
    std::vector<ObjectiveVector> active;
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::vector<double> proj(points[i].values.begin(), points[i].values.begin() + last);
        active.push_back(ObjectiveVector(std::move(proj)));
        const double level_hi = points[i].values[last];
        const double level_lo =
            (i + 1 < points.size()) ? points[i + 1].values[last] : ref.values[last];
        const double thickness = level_hi - level_lo;
        if (thickness > 0.0)
            volume += thickness * hv_recursive(active, sub_ref_vec, last);
    }
    return volume;
}

}  // namespace

double hypervolume(const ParetoFront& front, const ObjectiveVector& ref) {
    if (front.points.empty()) return 0.0;
    const std::size_t dim = ref.dim();
    std::vector<ObjectiveVector> clipped;
    clipped.reserve(front.points.size());
    for (const auto& p : front.points) {
        check_same_dim(p.dim(), dim, "hypervolume");
        std::vector<double> c(dim);
        for (std::size_t d = 0; d < dim; ++d) c[d] = std::max(p.values[d], ref.values[d]);
        clipped.push_back(ObjectiveVector(std::move(c)));
    }
    return hv_recursive(std::move(clipped), ref, dim);
}

double sparsity(const ParetoFront& front) {
    if (front.points.empty()) throw std::invalid_argument("sparsity: empty front");
    const std::size_t n = front.points.size();
    if (n == 1) return 0.0;
    const std::size_t dim = front.points.front().dim();
    double sum = 0.0;
    std::vector<double> column(n);
    for (std::size_t d = 0; d < dim; ++d) {
        for (std::size_t i = 0; i < n; ++i) column[i] = front.points[i].values[d];
        std::sort(column.begin(), column.end());
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const double gap = column[i + 1] - column[i];
            sum += gap * gap;
        }
    }
    return sum / static_cast<double>(n - 1);
}

std::vector<double> utility_per_weight(const std::vector<ObjectiveVector>& solutions,
                                       const std::vector<WeightVector>& weights) {
    if (solutions.empty() || weights.empty())
        throw std::invalid_argument("expected_utility: empty solutions or weights");
    std::vector<double> out;
    out.reserve(weights.size());
    for (const auto& w : weights) {
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& v : solutions) best = std::max(best, scalarize(v, w));
        out.push_back(best);
    }
    return out;
}

double expected_utility(const std::vector<ObjectiveVector>& solutions,
                        const std::vector<WeightVector>& weights) {
    const std::vector<double> utilities = utility_per_weight(solutions, weights);
    double sum = 0.0;
    for (double u : utilities) sum += u;
    return sum / static_cast<double>(utilities.size());
}

CosineStats cosine_alignment(const SolutionSet& pairs) {
    if (pairs.size() == 0)
        throw std::invalid_argument("cosine_alignment: empty solution set");
    std::vector<double> sims;
    CosineStats stats;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& w = pairs.weights[i];
        const auto& v = pairs.returns[i];
        check_same_dim(w.dim(), v.dim(), "cosine_alignment");
        double wn = 0.0, vn = 0.0, dot = 0.0;
        for (std::size_t d = 0; d < v.dim(); ++d) {
            wn += w.weights[d] * w.weights[d];
            vn += v.values[d] * v.values[d];
            dot += w.weights[d] * v.values[d];
        }
        if (vn <= 0.0 || wn <= 0.0) {
            ++stats.skipped;
            continue;
        }
        sims.push_back(dot / (std::sqrt(wn) * std::sqrt(vn)));
    }
    if (sims.empty()) return stats;
    double mean = 0.0;
    for (double s : sims) mean += s;
    mean /= static_cast<double>(sims.size());
    double var = 0.0;
    for (double s : sims) var += (s - mean) * (s - mean);
    var /= static_cast<double>(sims.size());
    stats.mean = mean;
    stats.stddev = std::sqrt(var);
    return stats;
}

ControllabilityReport controllability(const SolutionSet& set, RankMethod method) {
    if (set.size() < 3)
        throw std::invalid_argument("controllability: need at least 3 entries");
    const std::size_t dim = set.dim();
    ControllabilityReport report;
    report.per_objective.resize(dim);
    for (std::size_t d = 0; d < dim; ++d) {
        std::vector<double> wd(set.size()), vd(set.size());
        for (std::size_t i = 0; i < set.size(); ++i) {
            wd[i] = set.weights[i][d];
            vd[i] = set.returns[i][d];
        }
        report.per_objective[d] =
            method == RankMethod::spearman ? spearman(wd, vd) : kendall_tau(wd, vd);
        if (report.per_objective[d].defined())
            report.aggregate += *report.per_objective[d].value;
    }
    return report;
}

NormalizationRange minmax_range(const std::vector<SolutionSet>& sets) {
    if (sets.empty()) throw std::invalid_argument("minmax_range: no solution sets");
    std::size_t dim = 0;
    for (const auto& s : sets)
        if (s.size() > 0) dim = s.dim();
    if (dim == 0) throw std::invalid_argument("minmax_range: all sets empty");
    NormalizationRange range;
    range.min.assign(dim, std::numeric_limits<double>::infinity());
    range.max.assign(dim, -std::numeric_limits<double>::infinity());
    for (const auto& s : sets) {
        for (const auto& v : s.returns) {
            check_same_dim(v.dim(), dim, "minmax_range");
            for (std::size_t d = 0; d < dim; ++d) {
                range.min[d] = std::min(range.min[d], v.values[d]);
                range.max[d] = std::max(range.max[d], v.values[d]);
            }
        }
    }
    return range;
}

ObjectiveVector normalize(const ObjectiveVector& v, const NormalizationRange& range) {
    check_same_dim(v.dim(), range.dim(), "normalize");
    std::vector<double> out(v.dim());
    for (std::size_t d = 0; d < v.dim(); ++d) {
        const double span = range.max[d] - range.min[d];
        out[d] = span > 0.0 ? (v.values[d] - range.min[d]) / span : 0.0;
    }
    return ObjectiveVector(std::move(out));
}

SolutionSet normalize(const SolutionSet& set, const NormalizationRange& range) {
    SolutionSet out;
    out.algorithm = set.algorithm;
    out.weights = set.weights;
    out.returns.reserve(set.size());
    for (const auto& v : set.returns) out.returns.push_back(normalize(v, range));
    return out;
}

ObjectiveVector nadir_reference(const std::vector<SolutionSet>& normalized_sets,
                                double offset) {
    const NormalizationRange range = minmax_range(normalized_sets);
    std::vector<double> ref(range.dim());
    for (std::size_t d = 0; d < range.dim(); ++d) ref[d] = range.min[d] - offset;
    return ObjectiveVector(std::move(ref));
}

namespace {

std::string format_double(double x) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x,
                                   std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    for (auto& f : fields) {
        while (!f.empty() && f.front() == ' ') f.erase(f.begin());
        while (!f.empty() && f.back() == ' ') f.pop_back();
    }
    return fields;
}

double parse_double(const std::string& s) {
    double value = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw std::runtime_error("CSV: bad numeric field '" + s + "'");
    return value;
}

}  // namespace

void write_solution_set_csv(std::ostream& os, const SolutionSet& set) {
    const std::size_t dim = set.dim();
    os << "algorithm,batch";
    for (std::size_t d = 0; d < dim; ++d) os << ",w_" << d;
    for (std::size_t d = 0; d < dim; ++d) os << ",v_" << d;
    os << "\n";
    for (std::size_t i = 0; i < set.size(); ++i) {
        os << set.algorithm << ',' << i;
        for (std::size_t d = 0; d < dim; ++d) os << ',' << format_double(set.weights[i][d]);
        for (std::size_t d = 0; d < dim; ++d) os << ',' << format_double(set.returns[i][d]);
        os << "\n";
    }
}

SolutionSet read_solution_set_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("SolutionSet CSV: empty file");
    const auto header = split_csv_row(line);
    if (header.size() < 4 || header[0] != "algorithm" || header[1] != "batch")
        throw std::runtime_error("SolutionSet CSV: unexpected header");
    if ((header.size() - 2) % 2 != 0)
        throw std::runtime_error("SolutionSet CSV: weight/return columns unbalanced");
    const std::size_t dim = (header.size() - 2) / 2;

    SolutionSet set;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_row(line);
        if (fields.size() != header.size())
            throw std::runtime_error("SolutionSet CSV: row width mismatch");
        if (set.returns.empty())
            set.algorithm = fields[0];
        else if (set.algorithm != fields[0])
            throw std::runtime_error("SolutionSet CSV: mixed algorithm ids in one file");
        std::vector<double> w(dim), v(dim);
        for (std::size_t d = 0; d < dim; ++d) w[d] = parse_double(fields[2 + d]);
        for (std::size_t d = 0; d < dim; ++d) v[d] = parse_double(fields[2 + dim + d]);
        set.weights.push_back(WeightVector(std::move(w)));
        set.returns.push_back(ObjectiveVector(std::move(v)));
    }
    if (set.returns.empty()) throw std::runtime_error("SolutionSet CSV: no rows");
    return set;
}

}  // namespace morl
