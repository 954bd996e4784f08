#include "gcw/eval.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace gcw {

namespace {

/// Contingency table between learned clusters (rows) and true categories
/// (columns), both compressed to dense ids in increasing order.
struct Contingency {
    std::vector<std::size_t> cluster_ids;
    std::vector<std::size_t> category_ids;
    std::vector<std::vector<std::uint64_t>> counts;
    std::vector<std::uint64_t> row_totals;
    std::vector<std::uint64_t> col_totals;
    std::uint64_t n = 0;
};

std::vector<std::size_t> dense_ids(std::span<const std::size_t> values, std::vector<std::size_t>& out) {
    std::vector<std::size_t> ids(values.begin(), values.end());
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    out.resize(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        out[i] = static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), values[i]) - ids.begin());
    return ids;
}

Contingency tabulate(std::span<const std::size_t> assignments, std::span<const std::size_t> truth) {
    if (assignments.size() != truth.size())
        throw std::invalid_argument("eval: assignments and truth differ in length");
    if (assignments.empty())
        throw std::invalid_argument("eval: no points");
    Contingency c;
    std::vector<std::size_t> a, t;
    c.cluster_ids = dense_ids(assignments, a);
    c.category_ids = dense_ids(truth, t);
    c.counts.assign(c.cluster_ids.size(), std::vector<std::uint64_t>(c.category_ids.size(), 0));
    c.row_totals.assign(c.cluster_ids.size(), 0);
    c.col_totals.assign(c.category_ids.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        ++c.counts[a[i]][t[i]];
        ++c.row_totals[a[i]];
        ++c.col_totals[t[i]];
    }
    c.n = a.size();
    return c;
}

std::uint64_t pairs(std::uint64_t m) { return m < 2 ? 0 : m * (m - 1) / 2; }

struct PairCounts {
    std::uint64_t same_both = 0;      // same category, same cluster
    std::uint64_t same_category = 0;
    std::uint64_t same_cluster = 0;
    std::uint64_t total = 0;
};

PairCounts count_pairs(const Contingency& c) {
    PairCounts p;
    for (const auto& row : c.counts)
        for (std::uint64_t v : row)
            p.same_both += pairs(v);
    for (std::uint64_t v : c.col_totals)
        p.same_category += pairs(v);
    for (std::uint64_t v : c.row_totals)
        p.same_cluster += pairs(v);
    p.total = pairs(c.n);
    return p;
}

double percent(std::uint64_t num, std::uint64_t den) {
    return 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

double error_rate(std::span<const std::size_t> assignments, std::span<const std::size_t> truth) {
    const Contingency c = tabulate(assignments, truth);
    std::uint64_t correct = 0;
    for (const auto& row : c.counts)
        correct += *std::max_element(row.begin(), row.end());
    return percent(c.n - correct, c.n);
}

double true_association_rate(std::span<const std::size_t> assignments,
                             std::span<const std::size_t> truth) {
    const PairCounts p = count_pairs(tabulate(assignments, truth));
    if (p.same_category == 0)
        throw std::invalid_argument("eval: no pair of points shares a true category");
    return percent(p.same_both, p.same_category);
}

double false_association_rate(std::span<const std::size_t> assignments,
                              std::span<const std::size_t> truth) {
    const PairCounts p = count_pairs(tabulate(assignments, truth));
    const std::uint64_t cross = p.total - p.same_category;
    if (cross == 0)
        throw std::invalid_argument("eval: no pair of points spans two true categories");
    return percent(p.same_cluster - p.same_both, cross);
}

EvalReport evaluate(std::span<const std::size_t> assignments, std::span<const std::size_t> truth) {
    const Contingency c = tabulate(assignments, truth);
    const PairCounts p = count_pairs(c);
    EvalReport r;
    r.n = c.n;
    r.k_learned = c.cluster_ids.size();
    r.k_true = c.category_ids.size();

    std::uint64_t correct = 0;
    for (std::size_t a = 0; a < c.counts.size(); ++a) {
        const auto& row = c.counts[a];
        // max_element returns the first maximum: ties go to the smaller category.
        const auto best = static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin());
        correct += row[best];
        r.label_map.emplace_back(c.cluster_ids[a], c.category_ids[best]);
    }
    r.error_rate = percent(c.n - correct, c.n);
    r.true_association = p.same_category ? percent(p.same_both, p.same_category) : 0.0;
    const std::uint64_t cross = p.total - p.same_category;
    r.false_association = cross ? percent(p.same_cluster - p.same_both, cross) : 0.0;
    return r;
}

}  // namespace gcw
