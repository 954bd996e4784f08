#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gcw/cwssim.hpp"
#include "gcw/dataset.hpp"
#include "gcw/distance_matrix.hpp"
#include "gcw/eval.hpp"
#include "gcw/manifold.hpp"

namespace gcw {

enum class Measure { L2, CwSsim, GeoL2, GcwSsim };

inline constexpr std::array<Measure, 4> kAllMeasures = {Measure::L2, Measure::CwSsim,
                                                        Measure::GeoL2, Measure::GcwSsim};

/// "l2", "cwssim", "geo-l2", "gcwssim".
std::string_view to_string(Measure m);
Measure measure_from_string(std::string_view name);
/// Column labels used in benchmark tables: L2, C, G, GC.
std::string_view table_label(Measure m);

struct PipelineOptions {
    CwSsimConfig cwssim;
    GeodesicOptions geodesic;
};

struct DistanceRun {
    DistanceMatrix matrix;
    std::vector<BridgeEdge> bridges;
};

DistanceRun compute_distances(const LabeledDataset& ds, Measure m, const PipelineOptions& opt);

/// Reproducibility record for reports and table headers, one "key=value"
/// per element.
std::vector<std::string> describe(const PipelineOptions& opt);

struct SubsetSpec {
    std::string name;
    std::vector<std::string> keep;  // empty = every class
};

struct SuiteSpec {
    std::string name;
    std::string directory;  // dataset directory under the benchmark root
    bool uses_manifest = false;
    std::string layout_hint;
    std::vector<SubsetSpec> subsets;
};

/// coil-sets, large-coil-sets, olivetti-sets or synthetic. Throws
/// std::invalid_argument for any other name.
SuiteSpec suite_spec(std::string_view name);

struct BenchmarkConfig {
    std::string suite = "synthetic";
    std::filesystem::path root;
    PipelineOptions options;
    std::size_t n_restarts = 50;
    std::uint64_t seed = 1;
    std::size_t synth_objects = 5;
    std::size_t synth_angles = 72;
    std::size_t synth_size = 64;
    std::uint64_t synth_seed = 7;
    std::optional<std::size_t> resize;
    std::function<void(const std::string&)> log;
};

/// Benchmark defaults: t = 5, stride 2, bridging on.
BenchmarkConfig default_benchmark_config();

struct BenchmarkRow {
    std::string dataset;
    std::size_t n = 0;
    std::size_t k = 0;
    std::array<EvalReport, 4> scores;  // indexed like kAllMeasures
    std::array<double, 4> objectives{};
    std::array<std::size_t, 4> bridges{};
};

struct BenchmarkResult {
    std::vector<std::string> header;  // "key=value" parameter lines
    std::vector<BenchmarkRow> rows;

    const EvalReport& score(std::size_t row, Measure m) const;
    /// Parameter header as "# " lines, then a CSV table with one decimal.
    std::string table() const;
};

/// Loads the suite's dataset (or generates the synthetic one), then for
/// every subset and measure runs distances -> k-medoids restarts -> eval
/// with k equal to the number of true classes. Throws DataError when the
/// dataset directory is missing, naming the expected layout.
BenchmarkResult run_benchmark(const BenchmarkConfig& cfg);

}  // namespace gcw
