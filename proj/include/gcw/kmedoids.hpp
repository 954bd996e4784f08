#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gcw/distance_matrix.hpp"

namespace gcw {

inline constexpr int kMaxKMedoidsIterations = 200;

struct ClusteringResult {
    std::vector<std::size_t> medoids;
    std::vector<std::size_t> assignments;  // cluster index per point
    double objective = 0.0;
    int iterations = 0;
    std::uint64_t seed = 0;
    bool hit_iteration_cap = false;
};

/// Nearest medoid per point; ties go to the lower cluster index.
/// Throws std::invalid_argument on duplicate or out-of-range medoids.
std::vector<std::size_t> assign(const DistanceMatrix& d, std::span<const std::size_t> medoids);

/// For each cluster, the member with the smallest summed distance to the
/// other members (ties to the lower point index). An empty cluster keeps
/// its current medoid.
std::vector<std::size_t> update_medoids(const DistanceMatrix& d,
                                        std::span<const std::size_t> assignments,
                                        std::span<const std::size_t> current);

/// Sum over points of the distance to their assigned medoid.
double clustering_objective(const DistanceMatrix& d, std::span<const std::size_t> medoids,
                            std::span<const std::size_t> assignments);

/// Alternating assign / update k-medoids from seeded random medoids, run
/// until the assignments stop changing (at most kMaxKMedoidsIterations
/// rounds). If `trace` is given, the objective after every assign and
/// update step is appended to it.
ClusteringResult kmedoids(const DistanceMatrix& d, std::size_t k, std::uint64_t seed,
                          std::vector<double>* trace = nullptr);

struct RestartSummary {
    ClusteringResult best;
    std::size_t best_restart = 0;
    std::size_t restarts = 0;
    std::size_t cap_hits = 0;
    double objective_min = 0.0;
    double objective_mean = 0.0;
    double objective_max = 0.0;
};

/// Runs kmedoids with seeds seed, seed+1, ..., seed+n_restarts-1 and keeps
/// the lowest objective (earliest restart on ties). Parallel over restarts;
/// the result equals the sequential one.
RestartSummary kmedoids_restarts_summary(const DistanceMatrix& d, std::size_t k,
                                         std::size_t n_restarts, std::uint64_t seed,
                                         int threads = 0);

ClusteringResult kmedoids_restarts(const DistanceMatrix& d, std::size_t k, std::size_t n_restarts,
                                   std::uint64_t seed, int threads = 0);

}  // namespace gcw
