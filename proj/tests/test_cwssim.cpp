#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "gcw/cwssim.hpp"
#include "gcw/synth.hpp"
#include "test_support.hpp"

using namespace gcw;

namespace {

std::vector<Complex> random_vector(std::mt19937_64& gen, std::size_t n) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<Complex> v(n);
    for (auto& c : v)
        c = {g(gen), g(gen)};
    return v;
}

/// Straight evaluation over every window of every band.
double direct_global(const GrayImage& x, const GrayImage& y, const CwSsimConfig& cfg) {
    const auto px = build_pyramid(x, cfg.pyramid), py = build_pyramid(y, cfg.pyramid);
    double sum = 0.0;
    std::size_t count = 0;
    const auto w = static_cast<std::size_t>(cfg.window);
    for (std::size_t b = 0; b < px.bands().size(); ++b) {
        const auto& bx = px.bands()[b];
        const auto& by = py.bands()[b];
        if (bx.width < w || bx.height < w)
            continue;
        for (std::size_t y0 = 0; y0 + w <= bx.height; y0 += static_cast<std::size_t>(cfg.stride))
            for (std::size_t x0 = 0; x0 + w <= bx.width; x0 += static_cast<std::size_t>(cfg.stride)) {
                Complex cross = 0.0;
                double ex = 0.0, ey = 0.0;
                for (std::size_t v = 0; v < w; ++v)
                    for (std::size_t u = 0; u < w; ++u) {
                        const Complex a = bx.at(x0 + u, y0 + v), c = by.at(x0 + u, y0 + v);
                        cross += a * std::conj(c);
                        ex += std::norm(a);
                        ey += std::norm(c);
                    }
                sum += (2 * std::abs(cross) + cfg.K) / (ex + ey + cfg.K);
                ++count;
            }
    }
    return sum / static_cast<double>(count);
}

}  // namespace

TEST(CwSsimConfig, Validation) {
    EXPECT_NO_THROW(CwSsimConfig{}.validate());
    CwSsimConfig c;
    c.K = 0.0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = {};
    c.window = 6;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c.window = 1;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = {};
    c.stride = 0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(LocalCwSsim, IdenticalIsExactlyOne) {
    std::mt19937_64 gen(1);
    const auto c = random_vector(gen, 49);
    EXPECT_EQ(local_cwssim(c, c, 0.01), 1.0);
}

TEST(LocalCwSsim, WorkedExample) {
    const std::vector<Complex> cx = {{1, 0}, {0, 1}};
    const std::vector<Complex> cy = {{2, 0}, {0, 2}};
    EXPECT_NEAR(local_cwssim(cx, cy, 0.01), 8.01 / 10.01, 1e-15);
    EXPECT_NEAR(local_cwssim(cx, cy, 0.01), 0.80020, 5e-6);
}

TEST(LocalCwSsim, CommonPhaseInvariance) {
    std::mt19937_64 gen(2);
    std::uniform_real_distribution<double> angle(-3.14159, 3.14159);
    for (int trial = 0; trial < 200; ++trial) {
        const auto c = random_vector(gen, 1 + gen() % 60);
        const Complex rot = std::polar(1.0, angle(gen));
        std::vector<Complex> d(c.size());
        for (std::size_t i = 0; i < c.size(); ++i)
            d[i] = rot * c[i];
        EXPECT_NEAR(local_cwssim(c, d, 0.01), 1.0, 1e-12);
    }
}

TEST(LocalCwSsim, ScalingLowersIndex) {
    std::mt19937_64 gen(3);
    const auto c = random_vector(gen, 25);
    for (double a : {0.1, 0.5, 0.9, 1.1, 2.0, 10.0}) {
        std::vector<Complex> d(c.size());
        for (std::size_t i = 0; i < c.size(); ++i)
            d[i] = a * c[i];
        EXPECT_LT(local_cwssim(c, d, 0.01), 1.0) << a;
    }
}

TEST(LocalCwSsim, RangeAndSymmetry) {
    std::mt19937_64 gen(4);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + gen() % 49;
        const auto a = random_vector(gen, n), b = random_vector(gen, n);
        const double s = local_cwssim(a, b, 0.01);
        EXPECT_GT(s, 0.0);
        EXPECT_LE(s, 1.0);
        EXPECT_EQ(s, local_cwssim(b, a, 0.01));
    }
    const std::vector<Complex> zero(9, Complex{});
    EXPECT_EQ(local_cwssim(zero, zero, 0.01), 1.0);
}

TEST(LocalCwSsim, Errors) {
    const std::vector<Complex> a(3), b(4), none;
    EXPECT_THROW(local_cwssim(a, b, 0.01), std::invalid_argument);
    EXPECT_THROW(local_cwssim(none, none, 0.01), std::invalid_argument);
    EXPECT_THROW(local_cwssim(a, a, 0.0), std::invalid_argument);
    EXPECT_THROW(local_cwssim(a, a, -1.0), std::invalid_argument);
}

TEST(WindowCount, Formula) {
    CwSsimConfig c;
    EXPECT_EQ(window_count(7, 7, c), 1u);
    EXPECT_EQ(window_count(6, 40, c), 0u);
    EXPECT_EQ(window_count(64, 32, c), 58u * 26u);
    c.stride = 2;
    EXPECT_EQ(window_count(64, 32, c), 29u * 13u);
    c.stride = 3;
    EXPECT_EQ(window_count(10, 9, c), 2u * 1u);
}

TEST(GlobalCwSsim, MatchesDirectEvaluation) {
    const auto x = test::smooth_texture(40, 36, 1);
    const auto y = test::smooth_texture(40, 36, 2);
    for (int stride : {1, 2, 3}) {
        CwSsimConfig c;
        c.stride = stride;
        EXPECT_NEAR(global_cwssim(x, y, c), direct_global(x, y, c), 1e-12) << stride;
    }
    CwSsimConfig c;
    c.window = 5;
    c.K = 0.05;
    c.pyramid = {3, 4};
    EXPECT_NEAR(global_cwssim(x, y, c), direct_global(x, y, c), 1e-12);
}

TEST(GlobalCwSsim, SelfSimilarity) {
    const auto x = test::random_image(32, 32, 3);
    EXPECT_NEAR(global_cwssim(x, x), 1.0, 1e-9);
    EXPECT_NEAR(cwssim_distance(x, x), 0.0, 1e-9);
}

TEST(GlobalCwSsim, SymmetricBitExact) {
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto x = test::random_image(32, 24, 10 + s), y = test::smooth_texture(32, 24, 20 + s);
        EXPECT_EQ(global_cwssim(x, y), global_cwssim(y, x));
        EXPECT_EQ(cwssim_distance(x, y), cwssim_distance(y, x));
    }
}

TEST(GlobalCwSsim, RangeOnRandomPairs) {
    for (std::uint64_t s = 0; s < 5; ++s) {
        const double v = global_cwssim(test::random_image(24, 24, s), test::random_image(24, 24, 100 + s));
        EXPECT_GT(v, 0.0);
        EXPECT_LE(v, 1.0);
    }
}

TEST(GlobalCwSsim, TexturedAgainstFlatIsSmall) {
    const auto x = test::random_image(64, 64, 11);
    const double v = global_cwssim(x, GrayImage::filled(64, 64, 0.5));
    EXPECT_GT(v, 0.0);
    EXPECT_LT(v, 0.25);
    EXPECT_NEAR(v, direct_global(x, GrayImage::filled(64, 64, 0.5), CwSsimConfig{}), 1e-12);
}

TEST(GlobalCwSsim, SmallShiftTolerance) {
    const auto x = synth_rotated_set(1, 2, 64, 7).images[0];
    EXPECT_GE(global_cwssim(x, circular_shift(x, 2, 0)), 0.8);
}

TEST(GlobalCwSsim, Errors) {
    const auto x = test::random_image(32, 32, 1);
    EXPECT_THROW(global_cwssim(x, test::random_image(32, 33, 2)), std::invalid_argument);
    CwSsimConfig c;
    c.window = 33;  // larger than every band
    EXPECT_THROW(global_cwssim(x, x, c), std::invalid_argument);
    c.window = 17;  // fits scale 0 only
    EXPECT_NO_THROW(global_cwssim(x, x, c));
}

TEST(CwSsimDistance, AdjacentFramesCloserThanQuarterTurn) {
    const auto ds = synth_rotated_set(1, 72, 64, 7);
    const double adjacent = cwssim_distance(ds.images[0], ds.images[1]);
    EXPECT_LT(adjacent, cwssim_distance(ds.images[0], ds.images[18]));
    EXPECT_GE(adjacent, 0.0);
    EXPECT_LT(adjacent, 1.0);
}

TEST(CwSsimFeatures, ReuseMatchesImageOverload) {
    const auto x = test::smooth_texture(48, 40, 5), y = test::smooth_texture(48, 40, 6);
    const CwSsimConfig c;
    const FilterBank bank(48, 40, c.pyramid);
    const auto fx = make_features(x, bank, c), fy = make_features(y, bank, c);
    EXPECT_EQ(global_cwssim(fx, fy, c), global_cwssim(x, y, c));
    EXPECT_EQ(fx.total_windows(), 6 * window_count(48, 40, c) + 6 * window_count(24, 20, c));
}
