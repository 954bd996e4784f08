#include "gcw/kmedoids.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "gcw/parallel.hpp"
#include "gcw/rng.hpp"

namespace gcw {

namespace {

void check_medoids(const DistanceMatrix& d, std::span<const std::size_t> medoids) {
    if (medoids.empty())
        throw std::invalid_argument("k-medoids: no medoids");
    std::vector<bool> seen(d.n(), false);
    for (std::size_t m : medoids) {
        if (m >= d.n())
            throw std::invalid_argument("k-medoids: medoid index " + std::to_string(m) + " out of range");
        if (seen[m])
            throw std::invalid_argument("k-medoids: duplicate medoid " + std::to_string(m));
        seen[m] = true;
    }
}

/// Uniform sample of k distinct indices from [0, n) (partial Fisher-Yates).
std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k, Rng& rng) {
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i)
        pool[i] = i;
    for (std::size_t i = 0; i < k; ++i)
        std::swap(pool[i], pool[i + rng.below(n - i)]);
    pool.resize(k);
    return pool;
}

/// Moves the medoid of every empty cluster to the non-medoid point farthest
/// from it, then reassigns. Stops when no cluster is empty or no candidate
/// point remains (all remaining points coincide with medoids).
void repair_empty_clusters(const DistanceMatrix& d, std::vector<std::size_t>& medoids,
                           std::vector<std::size_t>& assignments) {
    const std::size_t k = medoids.size();
    for (std::size_t attempt = 0; attempt < k; ++attempt) {
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t a : assignments)
            ++counts[a];
        bool changed = false;
        for (std::size_t j = 0; j < k; ++j) {
            if (counts[j] != 0)
                continue;
            std::size_t best = d.n();
            double best_dist = 0.0;
            for (std::size_t i = 0; i < d.n(); ++i) {
                if (std::find(medoids.begin(), medoids.end(), i) != medoids.end())
                    continue;
                if (d(i, medoids[j]) > best_dist) {
                    best_dist = d(i, medoids[j]);
                    best = i;
                }
            }
            if (best == d.n())
                continue;
            medoids[j] = best;
            changed = true;
        }
        if (!changed)
            return;
        assignments = assign(d, medoids);
    }
}

}  // namespace

std::vector<std::size_t> assign(const DistanceMatrix& d, std::span<const std::size_t> medoids) {
    check_medoids(d, medoids);
    std::vector<std::size_t> out(d.n());
    std::vector<std::size_t> own(d.n(), medoids.size());
    for (std::size_t j = 0; j < medoids.size(); ++j)
        own[medoids[j]] = j;
    for (std::size_t i = 0; i < d.n(); ++i) {
        // A medoid stays in its own cluster even when it coincides with another.
        if (own[i] < medoids.size()) {
            out[i] = own[i];
            continue;
        }
        std::size_t best = 0;
        double best_dist = d(i, medoids[0]);
        for (std::size_t j = 1; j < medoids.size(); ++j) {
            const double v = d(i, medoids[j]);
            if (v < best_dist) {
                best_dist = v;
                best = j;
            }
        }
        out[i] = best;
    }
    return out;
}

std::vector<std::size_t> update_medoids(const DistanceMatrix& d,
                                        std::span<const std::size_t> assignments,
                                        std::span<const std::size_t> current) {
    if (assignments.size() != d.n())
        throw std::invalid_argument("update_medoids: assignment count differs from n");
    const std::size_t k = current.size();
    std::vector<std::vector<std::size_t>> members(k);
    for (std::size_t i = 0; i < assignments.size(); ++i) {
        if (assignments[i] >= k)
            throw std::invalid_argument("update_medoids: cluster index out of range");
        members[assignments[i]].push_back(i);
    }

    std::vector<std::size_t> out(current.begin(), current.end());
    for (std::size_t j = 0; j < k; ++j) {
        if (members[j].empty())
            continue;
        double best_cost = std::numeric_limits<double>::infinity();
        for (std::size_t c : members[j]) {  // ascending, so ties keep the lower index
            double cost = 0.0;
            for (std::size_t i : members[j])
                cost += d(i, c);
            if (cost < best_cost) {
                best_cost = cost;
                out[j] = c;
            }
        }
    }
    return out;
}

double clustering_objective(const DistanceMatrix& d, std::span<const std::size_t> medoids,
                            std::span<const std::size_t> assignments) {
    double total = 0.0;
    for (std::size_t i = 0; i < assignments.size(); ++i)
        total += d(i, medoids[assignments[i]]);
    return total;
}

ClusteringResult kmedoids(const DistanceMatrix& d, std::size_t k, std::uint64_t seed,
                          std::vector<double>* trace) {
    if (k < 1 || k > d.n())
        throw std::invalid_argument("k-medoids: k must be in [1, n], got k=" + std::to_string(k) +
                                    " for n=" + std::to_string(d.n()));
    Rng rng(seed);
    ClusteringResult r;
    r.seed = seed;
    r.medoids = sample_without_replacement(d.n(), k, rng);

    std::vector<std::size_t> previous;
    while (true) {
        r.assignments = assign(d, r.medoids);
        repair_empty_clusters(d, r.medoids, r.assignments);
        if (trace)
            trace->push_back(clustering_objective(d, r.medoids, r.assignments));
        if (r.assignments == previous)
            break;
        if (r.iterations == kMaxKMedoidsIterations) {
            r.hit_iteration_cap = true;
            break;
        }
        ++r.iterations;
        previous = r.assignments;
        r.medoids = update_medoids(d, r.assignments, r.medoids);
        if (trace)
            trace->push_back(clustering_objective(d, r.medoids, r.assignments));
    }
    r.objective = clustering_objective(d, r.medoids, r.assignments);
    return r;
}

RestartSummary kmedoids_restarts_summary(const DistanceMatrix& d, std::size_t k,
                                         std::size_t n_restarts, std::uint64_t seed, int threads) {
    if (n_restarts < 1)
        throw std::invalid_argument("k-medoids: n_restarts must be >= 1");
    if (k < 1 || k > d.n())
        throw std::invalid_argument("k-medoids: k must be in [1, n], got k=" + std::to_string(k) +
                                    " for n=" + std::to_string(d.n()));

    std::vector<ClusteringResult> runs(n_restarts);
    parallel_for(n_restarts, threads, [&](std::size_t r) { runs[r] = kmedoids(d, k, seed + r); });

    RestartSummary s;
    s.restarts = n_restarts;
    s.objective_min = s.objective_max = runs[0].objective;
    double sum = 0.0;
    for (std::size_t r = 0; r < n_restarts; ++r) {
        const double obj = runs[r].objective;
        sum += obj;
        s.objective_max = std::max(s.objective_max, obj);
        if (obj < runs[s.best_restart].objective)
            s.best_restart = r;
        if (runs[r].hit_iteration_cap)
            ++s.cap_hits;
    }
    s.objective_min = runs[s.best_restart].objective;
    s.objective_mean = sum / static_cast<double>(n_restarts);
    s.best = std::move(runs[s.best_restart]);
    return s;
}

ClusteringResult kmedoids_restarts(const DistanceMatrix& d, std::size_t k, std::size_t n_restarts,
                                   std::uint64_t seed, int threads) {
    return kmedoids_restarts_summary(d, k, n_restarts, seed, threads).best;
}

}  // namespace gcw
