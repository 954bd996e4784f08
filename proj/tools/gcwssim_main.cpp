#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gcw/dataset.hpp"
#include "gcw/errors.hpp"
#include "gcw/eval.hpp"
#include "gcw/heatmap.hpp"
#include "gcw/kmedoids.hpp"
#include "gcw/matrix_io.hpp"
#include "gcw/pipeline.hpp"
#include "gcw/synth.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitDisconnected = 3;
constexpr std::size_t kPaperRestarts = 1000;

struct DataOptions {
    std::string data;
    std::string manifest;
    std::string subset;
    bool synthetic = false;
    std::size_t objects = 5;
    std::size_t angles = 72;
    std::size_t size = 64;
    std::uint64_t synth_seed = 7;
    std::size_t resize = 0;
};

struct CwOptions {
    double K = 0.01;
    int window = 7;
    int stride = 1;
    int scales = 2;
    int orientations = 6;
};

void add_data_options(CLI::App* app, DataOptions& o) {
    app->add_option("--data", o.data, "Dataset directory (obj<N>__<angle>.<ext> files or a manifest root)");
    app->add_option("--manifest", o.manifest, "CSV manifest of relative_path,label rows");
    app->add_option("--subset", o.subset, "Comma-separated class identifiers to keep");
    app->add_flag("--synthetic", o.synthetic, "Use generated rotated objects instead of --data");
    app->add_option("--objects", o.objects, "Synthetic object count")->check(CLI::PositiveNumber);
    app->add_option("--angles", o.angles, "Synthetic rotations per object")->check(CLI::Range(2, 100000));
    app->add_option("--size", o.size, "Synthetic image side")->check(CLI::Range(32, 4096));
    app->add_option("--synth-seed", o.synth_seed, "Synthetic generator seed");
    app->add_option("--resize", o.resize, "Resample every image to this side");
}

void add_cw_options(CLI::App* app, CwOptions& o) {
    app->add_option("--K", o.K, "CW-SSIM stabilizing constant");
    app->add_option("--window", o.window, "CW-SSIM window side (odd)");
    app->add_option("--stride", o.stride, "CW-SSIM window step");
    app->add_option("--scales", o.scales, "Wavelet scales");
    app->add_option("--orientations", o.orientations, "Wavelet orientations");
}

gcw::CwSsimConfig to_config(const CwOptions& o) {
    gcw::CwSsimConfig c;
    c.K = o.K;
    c.window = o.window;
    c.stride = o.stride;
    c.pyramid.n_scales = o.scales;
    c.pyramid.n_orientations = o.orientations;
    c.validate();
    c.pyramid.validate();
    return c;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    for (std::string item; std::getline(in, item, ',');)
        if (!item.empty())
            out.push_back(item);
    return out;
}

gcw::LabeledDataset load_data(const DataOptions& o) {
    gcw::LabeledDataset ds;
    if (o.synthetic) {
        if (!o.data.empty())
            throw std::invalid_argument("--synthetic and --data are exclusive");
        ds = gcw::synth_rotated_set(o.objects, o.angles, o.size, o.synth_seed);
    } else {
        if (o.data.empty())
            throw std::invalid_argument("a dataset is required: pass --data DIR or --synthetic");
        std::optional<fs::path> manifest;
        if (!o.manifest.empty())
            manifest = fs::path(o.manifest);
        ds = gcw::load_dataset(o.data, manifest);
    }
    if (!o.subset.empty())
        ds = gcw::subset_by_labels(ds, split_list(o.subset));
    if (o.resize > 0)
        ds = gcw::resize_dataset(ds, o.resize, o.resize);
    return ds;
}

json describe_data(const DataOptions& o, const gcw::LabeledDataset& ds) {
    json j;
    if (o.synthetic) {
        j["source"] = "synthetic";
        j["objects"] = o.objects;
        j["angles"] = o.angles;
        j["size"] = o.size;
        j["synth_seed"] = o.synth_seed;
    } else {
        j["source"] = o.data;
        if (!o.manifest.empty())
            j["manifest"] = o.manifest;
    }
    if (!o.subset.empty())
        j["subset"] = o.subset;
    if (o.resize > 0)
        j["resize"] = o.resize;
    j["n"] = ds.size();
    j["classes"] = ds.class_names;
    return j;
}

json describe_cw(const gcw::CwSsimConfig& c) {
    return {{"K", c.K},
            {"window", c.window},
            {"stride", c.stride},
            {"scales", c.pyramid.n_scales},
            {"orientations", c.pyramid.n_orientations}};
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text))
        throw gcw::DataError("cannot write " + path.string());
}

json read_json(const fs::path& path) {
    std::ifstream in(path);
    if (!in)
        throw gcw::DataError("cannot read " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw gcw::DataError("malformed JSON in " + path.string() + ": " + e.what());
    }
}

std::string one_decimal(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return buf;
}

void progress(const std::string& msg) { std::cerr << "[gcwssim] " << msg << '\n'; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Geodesic CW-SSIM distances, k-medoids clustering and evaluation"};
    app.require_subcommand(1);

    // distances
    DataOptions dist_data;
    CwOptions dist_cw;
    std::string dist_measure = "gcwssim", dist_out, dist_text;
    std::size_t dist_t = 5;
    bool dist_bridge = false;
    int dist_threads = 0;
    auto* distances = app.add_subcommand("distances", "Compute a pairwise distance matrix");
    add_data_options(distances, dist_data);
    add_cw_options(distances, dist_cw);
    distances->add_option("--measure", dist_measure, "l2, cwssim, geo-l2 or gcwssim");
    distances->add_option("--t", dist_t, "Neighbors per node in the geodesic graph");
    distances->add_flag("--bridge", dist_bridge, "Join graph components through their closest pair");
    distances->add_option("--threads", dist_threads, "Worker threads (0 = all cores)");
    distances->add_option("--out", dist_out, "Output GDM1 matrix")->required();
    distances->add_option("--text", dist_text, "Also write a comma-separated copy");

    // cluster
    std::string cl_matrix, cl_out;
    std::size_t cl_k = 0, cl_restarts = 50;
    std::uint64_t cl_seed = 1;
    bool cl_paper = false;
    int cl_threads = 0;
    auto* cluster = app.add_subcommand("cluster", "Run k-medoids with restarts on a matrix");
    cluster->add_option("--matrix", cl_matrix, "GDM1 or text matrix")->required();
    cluster->add_option("--k", cl_k, "Number of clusters")->required();
    cluster->add_option("--restarts", cl_restarts, "Random restarts");
    cluster->add_option("--seed", cl_seed, "Seed of the first restart");
    cluster->add_flag("--paper-protocol", cl_paper, "Use 1000 restarts");
    cluster->add_option("--threads", cl_threads, "Worker threads (0 = all cores)");
    cluster->add_option("--out", cl_out, "Output JSON report")->required();

    // eval
    DataOptions ev_data;
    std::string ev_report, ev_out;
    auto* eval = app.add_subcommand("eval", "Score a clustering report against true labels");
    add_data_options(eval, ev_data);
    eval->add_option("--report", ev_report, "Report written by 'cluster'")->required();
    eval->add_option("--out", ev_out, "Output JSON scores");

    // benchmark
    CwOptions bm_cw;
    bm_cw.stride = 2;
    std::string bm_suite = "synthetic", bm_root = ".", bm_out;
    std::size_t bm_t = 5, bm_restarts = 50, bm_objects = 5, bm_angles = 72, bm_size = 64, bm_resize = 0;
    std::uint64_t bm_seed = 1, bm_synth_seed = 7;
    bool bm_paper = false, bm_no_bridge = false, bm_quiet = false;
    int bm_threads = 0;
    auto* benchmark = app.add_subcommand("benchmark", "Run a table of the four measures over a suite");
    benchmark->add_option("--suite", bm_suite, "coil-sets, large-coil-sets, olivetti-sets or synthetic");
    benchmark->add_option("--root", bm_root, "Directory holding coil-20/, coil-100/ or olivetti/");
    add_cw_options(benchmark, bm_cw);
    benchmark->add_option("--t", bm_t, "Neighbors per node in the geodesic graph");
    benchmark->add_flag("!--no-bridge", bm_no_bridge, "Fail on disconnected graphs instead of bridging");
    benchmark->add_option("--restarts", bm_restarts, "Random restarts");
    benchmark->add_flag("--paper-protocol", bm_paper, "Use 1000 restarts");
    benchmark->add_option("--seed", bm_seed, "Seed of the first restart");
    benchmark->add_option("--objects", bm_objects, "Synthetic object count")->check(CLI::PositiveNumber);
    benchmark->add_option("--angles", bm_angles, "Synthetic rotations per object")->check(CLI::Range(2, 100000));
    benchmark->add_option("--size", bm_size, "Synthetic image side")->check(CLI::Range(32, 4096));
    benchmark->add_option("--synth-seed", bm_synth_seed, "Synthetic generator seed");
    benchmark->add_option("--resize", bm_resize, "Resample every image to this side");
    benchmark->add_option("--threads", bm_threads, "Worker threads (0 = all cores)");
    benchmark->add_option("--out", bm_out, "Output CSV table");
    benchmark->add_flag("--quiet", bm_quiet, "No progress messages");

    // heatmap
    std::string hm_matrix, hm_out;
    double hm_scale = 1.0;
    auto* heatmap = app.add_subcommand("heatmap", "Render a matrix as a grayscale image");
    heatmap->add_option("--matrix", hm_matrix, "GDM1 or text matrix")->required();
    heatmap->add_option("--scale", hm_scale, "Multiply normalized values, clamping at 1");
    heatmap->add_option("--out", hm_out, "Output image (.png or .pgm)")->required();

    // synth
    DataOptions sy_data;
    std::string sy_out;
    auto* synth = app.add_subcommand("synth", "Write the synthetic rotated-object set as images");
    synth->add_option("--objects", sy_data.objects, "Object count")->check(CLI::PositiveNumber);
    synth->add_option("--angles", sy_data.angles, "Rotations per object")->check(CLI::Range(2, 100000));
    synth->add_option("--size", sy_data.size, "Image side")->check(CLI::Range(32, 4096));
    synth->add_option("--seed", sy_data.synth_seed, "Generator seed");
    synth->add_option("--out", sy_out, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*distances) {
            if (dist_t < 1)
                throw std::invalid_argument("--t must be >= 1");
            const auto t0 = std::chrono::steady_clock::now();
            const auto ds = load_data(dist_data);
            gcw::PipelineOptions opt;
            opt.cwssim = to_config(dist_cw);
            opt.geodesic.t = dist_t;
            opt.geodesic.bridge = dist_bridge;
            opt.geodesic.threads = dist_threads;
            const gcw::Measure m = gcw::measure_from_string(dist_measure);
            const auto run = gcw::compute_distances(ds, m, opt);
            gcw::write_gdm(dist_out, run.matrix);

            json side;
            side["measure"] = dist_measure;
            side["kind"] = gcw::to_string(run.matrix.kind());
            side["n"] = run.matrix.n();
            side["dataset"] = describe_data(dist_data, ds);
            side["cwssim"] = describe_cw(opt.cwssim);
            side["t"] = dist_t;
            side["bridge"] = dist_bridge;
            json bridges = json::array();
            for (const auto& b : run.bridges)
                bridges.push_back({{"from", b.from}, {"to", b.to}, {"weight", b.weight}});
            side["bridges"] = bridges;
            side["names"] = ds.names;
            write_text(dist_out + ".json", side.dump(2) + "\n");
            if (!dist_text.empty()) {
                std::string comment;
                for (const auto& d : gcw::describe(opt))
                    comment += d + "\n";
                comment += "measure=" + dist_measure;
                gcw::write_matrix_text(dist_text, run.matrix, comment);
            }
            progress("wrote " + std::string(gcw::to_string(run.matrix.kind())) + " matrix n=" +
                std::to_string(run.matrix.n()) + " t=" + std::to_string(dist_t) + " in " +
                one_decimal(seconds_since(t0)) + " s");
        } else if (*cluster) {
            const auto d = gcw::read_matrix(cl_matrix);
            const std::size_t restarts = cl_paper ? kPaperRestarts : cl_restarts;
            const auto s = gcw::kmedoids_restarts_summary(d, cl_k, restarts, cl_seed, cl_threads);
            json r;
            r["matrix"] = cl_matrix;
            r["kind"] = gcw::to_string(d.kind());
            r["n"] = d.n();
            r["k"] = cl_k;
            r["restarts"] = restarts;
            r["seed"] = cl_seed;
            r["best_restart"] = s.best_restart;
            r["best_seed"] = s.best.seed;
            r["objective"] = s.best.objective;
            r["objective_min"] = s.objective_min;
            r["objective_mean"] = s.objective_mean;
            r["objective_max"] = s.objective_max;
            r["iterations"] = s.best.iterations;
            r["iteration_cap_hits"] = s.cap_hits;
            r["medoids"] = s.best.medoids;
            r["assignments"] = s.best.assignments;
            write_text(cl_out, r.dump(2) + "\n");
            std::cout << "objective " << s.best.objective << " (best of " << restarts << " restarts)\n";
        } else if (*eval) {
            const json report = read_json(ev_report);
            std::vector<std::size_t> assignments;
            try {
                assignments = report.at("assignments").get<std::vector<std::size_t>>();
            } catch (const json::exception& e) {
                throw gcw::DataError("report has no usable assignments: " + std::string(e.what()));
            }
            const auto ds = load_data(ev_data);
            if (assignments.size() != ds.size())
                throw gcw::DataError("report covers " + std::to_string(assignments.size()) +
                                     " images but the dataset has " + std::to_string(ds.size()));
            const auto e = gcw::evaluate(assignments, ds.labels);
            std::cout << "r_e " << one_decimal(e.error_rate) << "  r_t " << one_decimal(e.true_association)
                      << "  r_f " << one_decimal(e.false_association) << '\n';
            if (!ev_out.empty()) {
                json j;
                j["report"] = ev_report;
                j["dataset"] = describe_data(ev_data, ds);
                j["r_e"] = e.error_rate;
                j["r_t"] = e.true_association;
                j["r_f"] = e.false_association;
                j["n"] = e.n;
                j["k_learned"] = e.k_learned;
                j["k_true"] = e.k_true;
                json map = json::array();
                for (const auto& [cluster_id, category] : e.label_map)
                    map.push_back({{"cluster", cluster_id}, {"category", ds.class_names.at(category)}});
                j["label_map"] = map;
                write_text(ev_out, j.dump(2) + "\n");
            }
        } else if (*benchmark) {
            if (bm_t < 1)
                throw std::invalid_argument("--t must be >= 1");
            auto cfg = gcw::default_benchmark_config();
            cfg.suite = bm_suite;
            cfg.root = bm_root;
            cfg.options.cwssim = to_config(bm_cw);
            cfg.options.geodesic.t = bm_t;
            cfg.options.geodesic.bridge = !bm_no_bridge;
            cfg.options.geodesic.threads = bm_threads;
            cfg.n_restarts = bm_paper ? kPaperRestarts : bm_restarts;
            cfg.seed = bm_seed;
            cfg.synth_objects = bm_objects;
            cfg.synth_angles = bm_angles;
            cfg.synth_size = bm_size;
            cfg.synth_seed = bm_synth_seed;
            if (bm_resize > 0)
                cfg.resize = bm_resize;
            if (!bm_quiet)
                cfg.log = progress;
            const auto result = gcw::run_benchmark(cfg);
            const std::string table = result.table();
            if (!bm_out.empty())
                write_text(bm_out, table);
            std::cout << table;
        } else if (*heatmap) {
            gcw::write_heatmap(gcw::read_matrix(hm_matrix), hm_out, hm_scale);
        } else if (*synth) {
            const auto ds = gcw::synth_rotated_set(sy_data.objects, sy_data.angles, sy_data.size, sy_data.synth_seed);
            fs::create_directories(sy_out);
            for (std::size_t i = 0; i < ds.size(); ++i) {
                // "synth/obj3__45" -> "<out>/obj3__45.png", loadable with --data.
                const std::string stem = ds.names[i].substr(ds.names[i].find('/') + 1);
                gcw::save_image(ds.images[i], fs::path(sy_out) / (stem + ".png"));
            }
            progress("wrote " + std::to_string(ds.size()) + " images to " + sy_out);
        }
    } catch (const gcw::DisconnectedGraph& e) {
        std::cerr << "error: " << e.what() << "\nhint: pass --bridge or use a larger --t\n";
        return kExitDisconnected;
    } catch (const gcw::DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
    return 0;
}
