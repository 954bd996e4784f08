#include "gcw/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "gcw/errors.hpp"
#include "gcw/kmedoids.hpp"
#include "gcw/synth.hpp"

namespace fs = std::filesystem;

namespace gcw {

std::string_view to_string(Measure m) {
    switch (m) {
    case Measure::L2: return "l2";
    case Measure::CwSsim: return "cwssim";
    case Measure::GeoL2: return "geo-l2";
    case Measure::GcwSsim: return "gcwssim";
    }
    return "unknown";
}

Measure measure_from_string(std::string_view name) {
    for (Measure m : kAllMeasures)
        if (to_string(m) == name)
            return m;
    throw std::invalid_argument("unknown measure '" + std::string(name) +
                                "' (expected l2, cwssim, geo-l2 or gcwssim)");
}

std::string_view table_label(Measure m) {
    switch (m) {
    case Measure::L2: return "L2";
    case Measure::CwSsim: return "C";
    case Measure::GeoL2: return "G";
    case Measure::GcwSsim: return "GC";
    }
    return "?";
}

DistanceRun compute_distances(const LabeledDataset& ds, Measure m, const PipelineOptions& opt) {
    const int threads = opt.geodesic.threads;
    switch (m) {
    case Measure::L2: return {pairwise_l2(ds, threads), {}};
    case Measure::CwSsim: return {pairwise_cwssim(ds, opt.cwssim, threads), {}};
    case Measure::GeoL2: {
        auto r = geodesic_from(pairwise_l2(ds, threads), opt.geodesic);
        return {std::move(r.distances), std::move(r.bridges)};
    }
    case Measure::GcwSsim: {
        auto r = geodesic_from(pairwise_cwssim(ds, opt.cwssim, threads), opt.geodesic);
        return {std::move(r.distances), std::move(r.bridges)};
    }
    }
    throw std::invalid_argument("unknown measure");
}

std::vector<std::string> describe(const PipelineOptions& opt) {
    std::ostringstream k;
    k << opt.cwssim.K;
    return {
        "K=" + k.str(),
        "window=" + std::to_string(opt.cwssim.window),
        "stride=" + std::to_string(opt.cwssim.stride),
        "scales=" + std::to_string(opt.cwssim.pyramid.n_scales),
        "orientations=" + std::to_string(opt.cwssim.pyramid.n_orientations),
        "t=" + std::to_string(opt.geodesic.t),
        std::string("symmetrization=") +
            (opt.geodesic.symmetrization == Symmetrization::Union ? "union" : "mutual"),
        std::string("bridge=") + (opt.geodesic.bridge ? "on" : "off"),
    };
}

namespace {

std::vector<std::string> numbers(int first, int last, int step) {
    std::vector<std::string> out;
    for (int v = first; v <= last; v += step)
        out.push_back(std::to_string(v));
    return out;
}

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

}  // namespace

SuiteSpec suite_spec(std::string_view name) {
    if (name == "coil-sets") {
        std::vector<std::string> coil15;
        for (int v = 1; v <= 20; ++v)
            if (v != 3 && v != 7 && v != 11 && v != 15 && v != 19)
                coil15.push_back(std::to_string(v));
        return {"coil-sets", "coil-20", false,
                "<root>/coil-20/obj<N>__<angle>.png for objects 1..20",
                {{"Coil-5", {"1", "3", "5", "7", "9"}},
                 {"Coil-10", numbers(2, 20, 2)},
                 {"Coil-15", coil15},
                 {"Coil-20", {}}}};
    }
    if (name == "large-coil-sets") {
        const auto coil25 = numbers(1, 97, 4);
        const auto coil50 = numbers(2, 100, 2);
        return {"large-coil-sets", "coil-100", false,
                "<root>/coil-100/obj<N>__<angle>.png for objects 1..100",
                {{"Coil-25", coil25},
                 {"Coil-50", coil50},
                 {"Coil-75", concat(coil25, coil50)},
                 {"Coil-100", {}}}};
    }
    if (name == "olivetti-sets") {
        const auto oliv10 = numbers(2, 38, 4);
        const auto oliv20 = numbers(1, 39, 2);
        return {"olivetti-sets", "olivetti", true,
                "<root>/olivetti/manifest.csv with rows <relative_path>,<face 1..40>",
                {{"Oliv.-10", oliv10},
                 {"Oliv.-20", oliv20},
                 {"Oliv.-30", concat(oliv10, oliv20)},
                 {"Oliv.-40", {}}}};
    }
    if (name == "synthetic")
        return {"synthetic", "", false, "generated in memory", {{"Synth", {}}}};
    throw std::invalid_argument("unknown benchmark suite '" + std::string(name) +
                                "' (expected coil-sets, large-coil-sets, olivetti-sets or synthetic)");
}

BenchmarkConfig default_benchmark_config() {
    BenchmarkConfig cfg;
    cfg.options.cwssim.stride = 2;
    cfg.options.geodesic.t = 5;
    cfg.options.geodesic.bridge = true;
    return cfg;
}

const EvalReport& BenchmarkResult::score(std::size_t row, Measure m) const {
    return rows.at(row).scores[static_cast<std::size_t>(m)];
}

std::string BenchmarkResult::table() const {
    std::ostringstream out;
    for (const auto& h : header)
        out << "# " << h << '\n';
    for (const auto& r : rows)
        out << "# bridges " << r.dataset << ": G=" << r.bridges[2] << " GC=" << r.bridges[3] << '\n';
    out << "dataset,n,k";
    for (Measure m : kAllMeasures)
        for (const char* c : {"re", "rt", "rf"})
            out << ',' << table_label(m) << '_' << c;
    out << '\n';
    char buf[32];
    for (const auto& r : rows) {
        out << r.dataset << ',' << r.n << ',' << r.k;
        for (const auto& s : r.scores)
            for (double v : {s.error_rate, s.true_association, s.false_association}) {
                std::snprintf(buf, sizeof buf, "%.1f", v);
                out << ',' << buf;
            }
        out << '\n';
    }
    return out.str();
}

BenchmarkResult run_benchmark(const BenchmarkConfig& cfg) {
    const SuiteSpec suite = suite_spec(cfg.suite);
    auto log = [&](const std::string& msg) {
        if (cfg.log)
            cfg.log(msg);
    };

    BenchmarkResult result;
    result.header.push_back("suite=" + suite.name);

    LabeledDataset ds;
    if (suite.name == "synthetic") {
        ds = synth_rotated_set(cfg.synth_objects, cfg.synth_angles, cfg.synth_size, cfg.synth_seed);
        result.header.push_back("synthetic objects=" + std::to_string(cfg.synth_objects) +
                                " angles=" + std::to_string(cfg.synth_angles) +
                                " size=" + std::to_string(cfg.synth_size) +
                                " seed=" + std::to_string(cfg.synth_seed));
    } else {
        const fs::path dir = cfg.root / suite.directory;
        if (!fs::is_directory(dir))
            throw DataError("benchmark " + suite.name + " needs " + dir.string() +
                            " (expected layout: " + suite.layout_hint + ")");
        std::optional<fs::path> manifest;
        if (suite.uses_manifest) {
            manifest = dir / "manifest.csv";
            if (!fs::is_regular_file(*manifest))
                throw DataError("benchmark " + suite.name + " needs " + manifest->string() +
                                " (expected layout: " + suite.layout_hint + ")");
        }
        ds = load_dataset(dir, manifest);
        result.header.push_back("dataset=" + dir.string());
    }
    if (cfg.resize) {
        ds = resize_dataset(ds, *cfg.resize, *cfg.resize);
        result.header.push_back("resize=" + std::to_string(*cfg.resize));
    }
    for (const auto& d : describe(cfg.options))
        result.header.push_back(d);
    result.header.push_back("restarts=" + std::to_string(cfg.n_restarts));
    result.header.push_back("seed=" + std::to_string(cfg.seed));
    result.header.push_back("k=number of true classes per subset");

    const int threads = cfg.options.geodesic.threads;
    log("computing L2 distances for " + std::to_string(ds.size()) + " images");
    const DistanceMatrix l2 = pairwise_l2(ds, threads);
    log("computing CW-SSIM distances for " + std::to_string(ds.size()) + " images");
    const DistanceMatrix cw = pairwise_cwssim(ds, cfg.options.cwssim, threads);

    for (const auto& subset : suite.subsets) {
        std::vector<std::size_t> idx;
        if (subset.keep.empty()) {
            idx.resize(ds.size());
            for (std::size_t i = 0; i < idx.size(); ++i)
                idx[i] = i;
        } else {
            idx = indices_with_labels(ds, subset.keep);
        }
        std::vector<std::size_t> truth;
        for (std::size_t i : idx)
            truth.push_back(ds.labels[i]);

        BenchmarkRow row;
        row.dataset = subset.name == "Synth" ? "Synth-" + std::to_string(ds.num_classes()) : subset.name;
        row.n = idx.size();
        std::vector<bool> present(ds.num_classes(), false);
        for (std::size_t l : truth)
            present[l] = true;
        row.k = static_cast<std::size_t>(std::count(present.begin(), present.end(), true));

        const DistanceMatrix l2_sub = l2.submatrix(idx);
        const DistanceMatrix cw_sub = cw.submatrix(idx);
        for (std::size_t mi = 0; mi < kAllMeasures.size(); ++mi) {
            const Measure m = kAllMeasures[mi];
            log(row.dataset + ": clustering with " + std::string(to_string(m)));
            DistanceMatrix d;
            switch (m) {
            case Measure::L2: d = l2_sub; break;
            case Measure::CwSsim: d = cw_sub; break;
            case Measure::GeoL2:
            case Measure::GcwSsim: {
                auto g = geodesic_from(m == Measure::GeoL2 ? l2_sub : cw_sub, cfg.options.geodesic);
                row.bridges[mi] = g.bridges.size();
                d = std::move(g.distances);
                break;
            }
            }
            const auto summary = kmedoids_restarts_summary(d, row.k, cfg.n_restarts, cfg.seed, threads);
            row.objectives[mi] = summary.best.objective;
            row.scores[mi] = evaluate(summary.best.assignments, truth);
        }
        result.rows.push_back(std::move(row));
    }
    return result;
}

}  // namespace gcw
