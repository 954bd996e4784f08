#pragma once

#include <cstddef>
#include <vector>

#include "gcw/cwssim.hpp"
#include "gcw/dataset.hpp"
#include "gcw/distance_matrix.hpp"

namespace gcw {

struct Edge {
    std::size_t to;
    double weight;
};

enum class Symmetrization {
    Union,   // keep {i, j} if either endpoint lists the other
    Mutual,  // keep {i, j} only if both do
};

/// Weighted undirected t-nn graph over a base distance matrix.
struct NeighborGraph {
    std::size_t n = 0;
    std::size_t t = 0;
    DistanceKind base_kind = DistanceKind::L2;
    std::vector<std::vector<Edge>> adjacency;  // sorted by neighbor index

    std::size_t edge_count() const;
    bool has_edge(std::size_t i, std::size_t j) const;
    void add_edge(std::size_t i, std::size_t j, double weight);
};

/// Connected component id per node (ids in order of first appearance).
std::vector<std::size_t> connected_components(const NeighborGraph& g);
std::vector<std::size_t> component_sizes(const NeighborGraph& g);

DistanceMatrix pairwise_l2(const LabeledDataset& ds, int threads = 0);
DistanceMatrix pairwise_cwssim(const LabeledDataset& ds, const CwSsimConfig& cfg = {},
                               int threads = 0);

/// Each point links to its t nearest other points (ties to the lower
/// index). Throws std::invalid_argument unless 1 <= t <= n - 1.
NeighborGraph knn_graph(const DistanceMatrix& d, std::size_t t,
                        Symmetrization sym = Symmetrization::Union);

struct BridgeEdge {
    std::size_t from;
    std::size_t to;
    double weight;
};

/// Joins components until the graph is connected, each time adding the
/// single cheapest base-distance edge between two different components.
/// Returns the edges added, in order.
std::vector<BridgeEdge> bridge_components(NeighborGraph& g, const DistanceMatrix& base);

/// Shortest path lengths from every node (binary-heap Dijkstra per source).
/// The result kind is GeoL2 for an L2 base and GcwSsim for a CW-SSIM base.
/// Throws DisconnectedGraph if some pair is unreachable.
DistanceMatrix all_pairs_geodesic(const NeighborGraph& g, int threads = 0);

struct GeodesicOptions {
    std::size_t t = 5;
    Symmetrization symmetrization = Symmetrization::Union;
    bool bridge = false;
    int threads = 0;
};

struct GeodesicResult {
    DistanceMatrix distances;
    std::vector<BridgeEdge> bridges;
};

/// base -> knn_graph -> (optional bridging) -> all_pairs_geodesic.
GeodesicResult geodesic_from(const DistanceMatrix& base, const GeodesicOptions& opt);

DistanceMatrix gcwssim_matrix(const LabeledDataset& ds, const CwSsimConfig& cfg,
                              const GeodesicOptions& opt);
DistanceMatrix geodesic_l2_matrix(const LabeledDataset& ds, const GeodesicOptions& opt);

}  // namespace gcw
