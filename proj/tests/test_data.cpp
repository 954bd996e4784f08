#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "gcw/dataset.hpp"
#include "gcw/errors.hpp"
#include "gcw/image.hpp"
#include "gcw/parallel.hpp"
#include "gcw/synth.hpp"
#include "test_support.hpp"

using namespace gcw;
namespace fs = std::filesystem;

namespace {

void write_gray(const fs::path& p, int w, int h, unsigned char value) {
    cv::imwrite(p.string(), cv::Mat(h, w, CV_8UC1, cv::Scalar(value)));
}

double mean_abs_diff(const GrayImage& a, const GrayImage& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += std::abs(a.pixels()[i] - b.pixels()[i]);
    return s / static_cast<double>(a.size());
}

}  // namespace

TEST(GrayImage, RejectsOutOfRange) {
    EXPECT_THROW(GrayImage(2, 1, {0.0, 1.5}), std::invalid_argument);
    EXPECT_THROW(GrayImage(2, 1, {-0.1, 0.5}), std::invalid_argument);
    EXPECT_THROW(GrayImage(2, 2, {0.0, 0.5}), std::invalid_argument);
    EXPECT_NO_THROW(GrayImage(2, 1, {0.0, 1.0}));
}

TEST(GrayImage, CircularShift) {
    const GrayImage img(3, 2, {0.0, 0.1, 0.2, 0.3, 0.4, 0.5});
    const auto s = circular_shift(img, 1, 0);
    EXPECT_EQ(s.at(1, 0), 0.0);
    EXPECT_EQ(s.at(0, 0), 0.2);
    EXPECT_EQ(circular_shift(img, -4, 3), circular_shift(img, -1, 1));
    EXPECT_EQ(circular_shift(circular_shift(img, 2, 1), -2, -1), img);
}

TEST(LoadImage, GrayLevels) {
    const auto dir = test::temp_dir("load_gray");
    write_gray(dir / "white.pgm", 16, 16, 255);
    write_gray(dir / "black.png", 20, 16, 0);
    const auto white = load_image(dir / "white.pgm");
    const auto black = load_image(dir / "black.png");
    EXPECT_EQ(white.width(), 16u);
    EXPECT_EQ(white.at(3, 4), 1.0);
    EXPECT_EQ(black.width(), 20u);
    EXPECT_EQ(black.at(0, 0), 0.0);
}

TEST(LoadImage, ColorToLuma) {
    const auto dir = test::temp_dir("load_rgb");
    // OpenCV stores channels as BGR.
    cv::imwrite((dir / "red.png").string(), cv::Mat(16, 16, CV_8UC3, cv::Scalar(0, 0, 255)));
    EXPECT_NEAR(load_image(dir / "red.png").at(5, 5), 0.299, 1e-12);
}

TEST(LoadImage, Errors) {
    const auto dir = test::temp_dir("load_err");
    EXPECT_THROW(load_image(dir / "missing.png"), DataError);
    write_gray(dir / "tiny.png", 8, 8, 100);
    EXPECT_THROW(load_image(dir / "tiny.png"), DataError);
    std::ofstream(dir / "junk.png") << "not an image";
    EXPECT_THROW(load_image(dir / "junk.png"), DataError);
}

TEST(SaveImage, PgmRoundTrip) {
    const auto dir = test::temp_dir("save_pgm");
    std::vector<double> px(16 * 16);
    for (std::size_t i = 0; i < px.size(); ++i)
        px[i] = static_cast<double>(i % 256) / 255.0;
    const GrayImage img(16, 16, px);
    save_image(img, dir / "a.pgm");
    EXPECT_EQ(load_image(dir / "a.pgm"), img);
}

TEST(NaturalSort, DigitRuns) {
    EXPECT_TRUE(natural_less("obj1__5.png", "obj1__10.png"));
    EXPECT_FALSE(natural_less("obj1__10.png", "obj1__5.png"));
    EXPECT_TRUE(natural_less("obj2__0.png", "obj10__0.png"));
    EXPECT_TRUE(natural_less("a", "b"));
    EXPECT_TRUE(natural_less("x", "x1"));
    EXPECT_FALSE(natural_less("x1", "x1"));
    // Equal values with different zero padding still order strictly.
    EXPECT_NE(natural_less("a01", "a1"), natural_less("a1", "a01"));
}

TEST(LoadDataset, CoilDirectory) {
    const auto dir = test::temp_dir("coil_dir");
    for (int obj : {10, 2})
        for (int a = 0; a < 360; a += 10)
            write_gray(dir / ("obj" + std::to_string(obj) + "__" + std::to_string(a) + ".png"), 16, 16,
                       static_cast<unsigned char>(obj * 10 + a / 10));
    std::ofstream(dir / "readme.txt") << "ignored";
    const auto ds = load_dataset(dir);
    ASSERT_EQ(ds.size(), 72u);
    EXPECT_EQ(ds.class_names, (std::vector<std::string>{"2", "10"}));
    EXPECT_EQ(ds.labels.front(), 0u);
    EXPECT_EQ(ds.labels.back(), 1u);
    EXPECT_EQ(ds.names[0], "obj2__0.png");
    EXPECT_EQ(ds.names[1], "obj2__10.png");
    EXPECT_EQ(ds.names[2], "obj2__20.png");
    EXPECT_NEAR(ds.images[2].at(0, 0), 22.0 / 255.0, 1e-12);
}

TEST(LoadDataset, Manifest) {
    const auto dir = test::temp_dir("manifest");
    fs::create_directories(dir / "faces");
    for (const char* f : {"p1.png", "p2.png", "q1.png", "q2.png"})
        write_gray(dir / "faces" / f, 16, 16, 50);
    std::ofstream(dir / "manifest.csv") << "# path,label\nfaces/q1.png,b\nfaces/p1.png,a\n\nfaces/p2.png,a\nfaces/q2.png,b\n";
    const auto ds = load_dataset(dir, dir / "manifest.csv");
    EXPECT_EQ(ds.labels, (std::vector<std::size_t>{0, 0, 1, 1}));
    EXPECT_EQ(ds.class_names, (std::vector<std::string>{"a", "b"}));
    EXPECT_EQ(ds.names[0], "faces/p1.png");
}

TEST(LoadDataset, Errors) {
    const auto dir = test::temp_dir("dataset_err");
    EXPECT_THROW(load_dataset(dir / "nope"), DataError);
    EXPECT_THROW(load_dataset(dir), DataError);  // empty directory
    write_gray(dir / "obj1__0.png", 16, 16, 0);
    write_gray(dir / "obj1__5.png", 20, 16, 0);
    EXPECT_THROW(load_dataset(dir), DataError);  // mixed sizes
    std::ofstream(dir / "m.csv") << "obj1__0.png,a\nmissing.png,b\n";
    EXPECT_THROW(load_dataset(dir, dir / "m.csv"), DataError);
    std::ofstream(dir / "bad.csv") << "obj1__0.png\n";
    EXPECT_THROW(load_dataset(dir, dir / "bad.csv"), DataError);
}

TEST(Subset, KeepsOriginalIdentifiers) {
    const auto ds = synth_rotated_set(4, 3, 32, 1);
    const std::vector<std::string> keep = {"3", "1"};
    const auto sub = subset_by_labels(ds, keep);
    EXPECT_EQ(sub.size(), 6u);
    EXPECT_EQ(sub.class_names, (std::vector<std::string>{"1", "3"}));
    EXPECT_EQ(sub.labels, (std::vector<std::size_t>{0, 0, 0, 1, 1, 1}));
    EXPECT_EQ(sub.images[3], ds.images[6]);
    EXPECT_EQ(indices_with_labels(ds, keep), (std::vector<std::size_t>{0, 1, 2, 6, 7, 8}));
    const std::vector<std::string> unknown = {"9"}, none;
    EXPECT_THROW(subset_by_labels(ds, unknown), std::invalid_argument);
    EXPECT_THROW(subset_by_labels(ds, none), std::invalid_argument);
}

TEST(Dataset, Validate) {
    LabeledDataset ds;
    ds.images = {GrayImage::filled(16, 16, 0.5)};
    ds.labels = {0};
    ds.names = {"a"};
    ds.class_names = {"0"};
    EXPECT_THROW(ds.validate(), DataError);
    ds.images.push_back(GrayImage::filled(16, 17, 0.5));
    ds.labels.push_back(0);
    ds.names.push_back("b");
    EXPECT_THROW(ds.validate(), DataError);
    ds.images[1] = GrayImage::filled(16, 16, 0.5);
    EXPECT_NO_THROW(ds.validate());
    ds.labels[1] = 1;
    EXPECT_THROW(ds.validate(), DataError);
}

TEST(ResizeDataset, ChangesEveryImage) {
    const auto ds = resize_dataset(synth_rotated_set(2, 2, 64, 3), 32, 32);
    for (const auto& img : ds.images) {
        EXPECT_EQ(img.width(), 32u);
        EXPECT_EQ(img.height(), 32u);
    }
}

TEST(Synth, Cardinality) {
    const auto ds = synth_rotated_set(5, 4, 32, 9);
    ASSERT_EQ(ds.size(), 20u);
    EXPECT_EQ(ds.num_classes(), 5u);
    for (std::size_t i = 0; i < 20; ++i)
        EXPECT_EQ(ds.labels[i], i / 4);
    EXPECT_EQ(ds.names[5], "synth/obj2__90");
    std::set<std::string> names(ds.names.begin(), ds.names.end());
    EXPECT_EQ(names.size(), 20u);
}

TEST(Synth, Deterministic) {
    const auto a = synth_rotated_set(3, 6, 48, 42), b = synth_rotated_set(3, 6, 48, 42);
    EXPECT_EQ(a.images, b.images);
    EXPECT_NE(a.images[0], synth_rotated_set(3, 6, 48, 43).images[0]);
}

TEST(Synth, ObjectsDiffer) {
    const auto ds = synth_rotated_set(5, 2, 64, 7);
    for (std::size_t a = 0; a < 5; ++a)
        for (std::size_t b = a + 1; b < 5; ++b)
            EXPECT_GT(mean_abs_diff(ds.images[2 * a], ds.images[2 * b]), 0.01);
}

TEST(Synth, FramesAreRotationsOfTheFirst) {
    const auto ds = synth_rotated_set(2, 12, 64, 5);
    for (std::size_t o = 0; o < 2; ++o)
        for (std::size_t i = 1; i < 12; ++i) {
            const auto back = rotate_bilinear(ds.images[o * 12 + i], -30.0 * static_cast<double>(i));
            EXPECT_LE(mean_abs_diff(back, ds.images[o * 12]), 0.05) << o << ' ' << i;
        }
}

TEST(Synth, Errors) {
    EXPECT_THROW(synth_rotated_set(0, 4, 32, 1), std::invalid_argument);
    EXPECT_THROW(synth_rotated_set(1, 1, 32, 1), std::invalid_argument);
    EXPECT_THROW(synth_rotated_set(1, 4, 31, 1), std::invalid_argument);
}

TEST(RotateBilinear, QuarterTurnIsExactPermutation) {
    const auto img = test::random_image(17, 17, 4);
    const auto r = rotate_bilinear(img, 90.0);
    const auto full = rotate_bilinear(rotate_bilinear(r, 90.0), 180.0);
    for (std::size_t y = 0; y < 17; ++y)
        for (std::size_t x = 0; x < 17; ++x)
            EXPECT_NEAR(full.at(x, y), img.at(x, y), 1e-12);
}

TEST(ParallelFor, VisitsEveryIndexOnce) {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), 4, [&](std::size_t i) { ++hits[i]; });
    for (const auto& h : hits)
        EXPECT_EQ(h.load(), 1);
}

TEST(ParallelFor, PropagatesException) {
    for (int threads : {1, 3}) {
        EXPECT_THROW(parallel_for(100, threads,
                                  [](std::size_t i) {
                                      if (i == 37)
                                          throw std::runtime_error("boom");
                                  }),
                     std::runtime_error);
    }
}

TEST(ParallelFor, ResolveThreads) {
    EXPECT_EQ(resolve_threads(3), 3);
    EXPECT_GE(resolve_threads(0), 1);
}
