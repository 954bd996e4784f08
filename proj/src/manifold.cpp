#include "gcw/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>

#include "gcw/errors.hpp"
#include "gcw/parallel.hpp"

namespace gcw {

DisconnectedGraph::DisconnectedGraph(std::vector<std::size_t> component_sizes)
    : std::runtime_error([&] {
          std::string msg = "neighborhood graph is disconnected: " +
                            std::to_string(component_sizes.size()) + " components of sizes";
          for (std::size_t s : component_sizes)
              msg += " " + std::to_string(s);
          return msg;
      }()),
      sizes_(std::move(component_sizes)) {}

std::size_t NeighborGraph::edge_count() const {
    std::size_t total = 0;
    for (const auto& adj : adjacency)
        total += adj.size();
    return total / 2;
}

bool NeighborGraph::has_edge(std::size_t i, std::size_t j) const {
    const auto& adj = adjacency[i];
    auto it = std::lower_bound(adj.begin(), adj.end(), j,
                               [](const Edge& e, std::size_t v) { return e.to < v; });
    return it != adj.end() && it->to == j;
}

void NeighborGraph::add_edge(std::size_t i, std::size_t j, double weight) {
    if (i == j)
        throw std::invalid_argument("NeighborGraph: self-loop");
    auto insert = [](std::vector<Edge>& adj, std::size_t to, double w) {
        auto it = std::lower_bound(adj.begin(), adj.end(), to,
                                   [](const Edge& e, std::size_t v) { return e.to < v; });
        if (it != adj.end() && it->to == to)
            return;
        adj.insert(it, Edge{to, w});
    };
    insert(adjacency[i], j, weight);
    insert(adjacency[j], i, weight);
}

std::vector<std::size_t> connected_components(const NeighborGraph& g) {
    constexpr auto unset = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> comp(g.n, unset);
    std::size_t next = 0;
    std::vector<std::size_t> stack;
    for (std::size_t s = 0; s < g.n; ++s) {
        if (comp[s] != unset)
            continue;
        comp[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            const std::size_t u = stack.back();
            stack.pop_back();
            for (const Edge& e : g.adjacency[u])
                if (comp[e.to] == unset) {
                    comp[e.to] = next;
                    stack.push_back(e.to);
                }
        }
        ++next;
    }
    return comp;
}

std::vector<std::size_t> component_sizes(const NeighborGraph& g) {
    const auto comp = connected_components(g);
    std::vector<std::size_t> sizes;
    for (std::size_t c : comp) {
        if (c >= sizes.size())
            sizes.resize(c + 1, 0);
        ++sizes[c];
    }
    return sizes;
}

namespace {

void check_uniform(const LabeledDataset& ds) {
    if (ds.images.empty())
        throw std::invalid_argument("dataset is empty");
    for (const auto& img : ds.images)
        if (img.width() != ds.images[0].width() || img.height() != ds.images[0].height())
            throw DataError("mixed image sizes in dataset");
}

/// Fills the upper triangle with fn(i, j), mirrors it, zeroes the diagonal.
template <typename Fn>
std::vector<double> symmetric_fill(std::size_t n, int threads, Fn&& fn) {
    std::vector<double> d(n * n, 0.0);
    parallel_for(n, threads, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j)
            d[i * n + j] = fn(i, j);
    });
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            d[j * n + i] = d[i * n + j];
    return d;
}

}  // namespace

DistanceMatrix pairwise_l2(const LabeledDataset& ds, int threads) {
    check_uniform(ds);
    const std::size_t n = ds.size();
    auto d = symmetric_fill(n, threads, [&](std::size_t i, std::size_t j) {
        const auto a = ds.images[i].pixels();
        const auto b = ds.images[j].pixels();
        double s = 0.0;
        for (std::size_t p = 0; p < a.size(); ++p) {
            const double diff = a[p] - b[p];
            s += diff * diff;
        }
        return std::sqrt(s);
    });
    return DistanceMatrix(n, DistanceKind::L2, std::move(d));
}

DistanceMatrix pairwise_cwssim(const LabeledDataset& ds, const CwSsimConfig& cfg, int threads) {
    cfg.validate();
    check_uniform(ds);
    const std::size_t n = ds.size();
    const FilterBank bank(ds.images[0].width(), ds.images[0].height(), cfg.pyramid);

    std::vector<std::optional<CwSsimFeatures>> features(n);
    parallel_for(n, threads, [&](std::size_t i) { features[i].emplace(make_features(ds.images[i], bank, cfg)); });
    if (features[0]->total_windows() == 0)
        throw std::invalid_argument("cwssim: every band is smaller than the window");

    auto d = symmetric_fill(n, threads, [&](std::size_t i, std::size_t j) {
        return std::max(0.0, 1.0 - global_cwssim(*features[i], *features[j], cfg));
    });
    return DistanceMatrix(n, DistanceKind::CwSsim, std::move(d));
}

NeighborGraph knn_graph(const DistanceMatrix& d, std::size_t t, Symmetrization sym) {
    const std::size_t n = d.n();
    if (t < 1 || t + 1 > n)
        throw std::invalid_argument("knn_graph: t must be in [1, n-1], got t=" + std::to_string(t) +
                                    " for n=" + std::to_string(n));

    std::vector<std::vector<std::size_t>> neighbors(n);
    std::vector<std::size_t> order(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t k = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i)
                order[k++] = j;
        std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(t), order.end(),
                          [&](std::size_t a, std::size_t b) {
                              const double da = d(i, a), db = d(i, b);
                              return da != db ? da < db : a < b;
                          });
        neighbors[i].assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(t));
        std::sort(neighbors[i].begin(), neighbors[i].end());
    }

    NeighborGraph g;
    g.n = n;
    g.t = t;
    g.base_kind = d.kind();
    g.adjacency.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j : neighbors[i]) {
            if (sym == Symmetrization::Mutual &&
                !std::binary_search(neighbors[j].begin(), neighbors[j].end(), i))
                continue;
            g.add_edge(i, j, d(i, j));
        }
    }
    return g;
}

std::vector<BridgeEdge> bridge_components(NeighborGraph& g, const DistanceMatrix& base) {
    if (base.n() != g.n)
        throw std::invalid_argument("bridge_components: matrix and graph sizes differ");
    std::vector<BridgeEdge> added;
    while (true) {
        const auto comp = connected_components(g);
        if (std::all_of(comp.begin(), comp.end(), [](std::size_t c) { return c == 0; }))
            break;
        BridgeEdge best{0, 0, std::numeric_limits<double>::infinity()};
        for (std::size_t i = 0; i < g.n; ++i)
            for (std::size_t j = i + 1; j < g.n; ++j)
                if (comp[i] != comp[j] && base(i, j) < best.weight)
                    best = {i, j, base(i, j)};
        g.add_edge(best.from, best.to, best.weight);
        added.push_back(best);
    }
    return added;
}

DistanceMatrix all_pairs_geodesic(const NeighborGraph& g, int threads) {
    const std::size_t n = g.n;
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n * n, inf);

    parallel_for(n, threads, [&](std::size_t src) {
        double* row = dist.data() + src * n;
        using Item = std::pair<double, std::size_t>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        row[src] = 0.0;
        heap.emplace(0.0, src);
        while (!heap.empty()) {
            const auto [du, u] = heap.top();
            heap.pop();
            if (du > row[u])
                continue;
            for (const Edge& e : g.adjacency[u]) {
                const double cand = du + e.weight;
                if (cand < row[e.to]) {
                    row[e.to] = cand;
                    heap.emplace(cand, e.to);
                }
            }
        }
    });

    if (std::any_of(dist.begin(), dist.end(), [](double v) { return std::isinf(v); }))
        throw DisconnectedGraph(component_sizes(g));

    // Paths found from either end may differ in the last ulp; keep the shorter.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = std::min(dist[i * n + j], dist[j * n + i]);
            dist[i * n + j] = dist[j * n + i] = v;
        }

    const DistanceKind kind =
        g.base_kind == DistanceKind::CwSsim || g.base_kind == DistanceKind::GcwSsim
            ? DistanceKind::GcwSsim
            : DistanceKind::GeoL2;
    return DistanceMatrix(n, kind, std::move(dist));
}

GeodesicResult geodesic_from(const DistanceMatrix& base, const GeodesicOptions& opt) {
    NeighborGraph g = knn_graph(base, opt.t, opt.symmetrization);
    GeodesicResult result;
    if (opt.bridge)
        result.bridges = bridge_components(g, base);
    result.distances = all_pairs_geodesic(g, opt.threads);
    return result;
}

DistanceMatrix gcwssim_matrix(const LabeledDataset& ds, const CwSsimConfig& cfg,
                              const GeodesicOptions& opt) {
    return geodesic_from(pairwise_cwssim(ds, cfg, opt.threads), opt).distances;
}

DistanceMatrix geodesic_l2_matrix(const LabeledDataset& ds, const GeodesicOptions& opt) {
    return geodesic_from(pairwise_l2(ds, opt.threads), opt).distances;
}

}  // namespace gcw
