#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "gcw/eval.hpp"

using namespace gcw;

namespace {

using Labels = std::vector<std::size_t>;

struct PairCounts {
    double rt, rf;
};

PairCounts brute_force_pairs(const Labels& a, const Labels& t) {
    std::size_t same = 0, same_together = 0, cross = 0, cross_together = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            if (t[i] == t[j]) {
                ++same;
                same_together += a[i] == a[j];
            } else {
                ++cross;
                cross_together += a[i] == a[j];
            }
        }
    return {100.0 * static_cast<double>(same_together) / static_cast<double>(same),
            100.0 * static_cast<double>(cross_together) / static_cast<double>(cross)};
}

double brute_force_error(const Labels& a, const Labels& t) {
    const std::size_t ka = *std::max_element(a.begin(), a.end()) + 1;
    const std::size_t kt = *std::max_element(t.begin(), t.end()) + 1;
    std::size_t wrong = 0;
    for (std::size_t c = 0; c < ka; ++c) {
        std::size_t best_cat = 0, best_count = 0;
        for (std::size_t cat = 0; cat < kt; ++cat) {
            std::size_t count = 0;
            for (std::size_t i = 0; i < a.size(); ++i)
                count += a[i] == c && t[i] == cat;
            if (count > best_count) {
                best_count = count;
                best_cat = cat;
            }
        }
        for (std::size_t i = 0; i < a.size(); ++i)
            wrong += a[i] == c && t[i] != best_cat;
    }
    return 100.0 * static_cast<double>(wrong) / static_cast<double>(a.size());
}

}  // namespace

TEST(Eval, WorkedFourPointExample) {
    const Labels truth = {0, 0, 1, 1}, a = {0, 0, 0, 1};
    EXPECT_EQ(error_rate(a, truth), 25.0);
    EXPECT_EQ(true_association_rate(a, truth), 50.0);
    EXPECT_EQ(false_association_rate(a, truth), 50.0);
    const auto r = evaluate(a, truth);
    EXPECT_EQ(r.error_rate, 25.0);
    EXPECT_EQ(r.true_association, 50.0);
    EXPECT_EQ(r.false_association, 50.0);
    EXPECT_EQ(r.n, 4u);
    EXPECT_EQ(r.k_learned, 2u);
    EXPECT_EQ(r.k_true, 2u);
    ASSERT_EQ(r.label_map.size(), 2u);
    EXPECT_EQ(r.label_map[0], (std::pair<std::size_t, std::size_t>{0, 0}));
    EXPECT_EQ(r.label_map[1], (std::pair<std::size_t, std::size_t>{1, 1}));
}

TEST(Eval, PerfectClustering) {
    const Labels truth = {2, 2, 0, 0, 1, 1}, a = {0, 0, 1, 1, 2, 2};
    const auto r = evaluate(a, truth);
    EXPECT_EQ(r.error_rate, 0.0);
    EXPECT_EQ(r.true_association, 100.0);
    EXPECT_EQ(r.false_association, 0.0);
}

TEST(Eval, SingleCluster) {
    const Labels truth = {0, 0, 0, 1, 1, 1}, a(6, 0);
    EXPECT_EQ(error_rate(a, truth), 50.0);
    EXPECT_EQ(true_association_rate(a, truth), 100.0);
    EXPECT_EQ(false_association_rate(a, truth), 100.0);
}

TEST(Eval, Singletons) {
    const Labels truth = {0, 0, 1, 1}, a = {0, 1, 2, 3};
    EXPECT_EQ(error_rate(a, truth), 0.0);
    EXPECT_EQ(true_association_rate(a, truth), 0.0);
    EXPECT_EQ(false_association_rate(a, truth), 0.0);
}

TEST(Eval, MajorityTieGoesToSmallerCategory) {
    const Labels truth = {1, 0, 1, 0}, a = {0, 0, 1, 1};
    const auto r = evaluate(a, truth);
    EXPECT_EQ(r.label_map[0].second, 0u);
    EXPECT_EQ(r.label_map[1].second, 0u);
    EXPECT_EQ(r.error_rate, 50.0);
}

TEST(Eval, UndefinedRates) {
    const Labels one_class = {0, 0, 0}, distinct = {0, 1, 2}, a = {0, 1, 1};
    EXPECT_THROW(false_association_rate(a, one_class), std::invalid_argument);
    EXPECT_THROW(true_association_rate(a, distinct), std::invalid_argument);
    const auto r = evaluate(a, one_class);
    EXPECT_EQ(r.false_association, 0.0);
}

TEST(Eval, Errors) {
    const Labels a = {0, 1}, b = {0, 1, 1}, none;
    EXPECT_THROW(error_rate(a, b), std::invalid_argument);
    EXPECT_THROW(evaluate(a, b), std::invalid_argument);
    EXPECT_THROW(error_rate(none, none), std::invalid_argument);
}

TEST(Eval, MatchesBruteForceOnRandomLabelings) {
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + gen() % 199;
        const std::size_t kt = 2 + gen() % 6, ka = 1 + gen() % 8;
        Labels t(n), a(n);
        for (std::size_t i = 0; i < n; ++i) {
            t[i] = i < kt ? i : gen() % kt;  // every category present, and a cross pair exists
            a[i] = gen() % ka;
        }
        t[1] = t[0];  // and a same-category pair
        const auto oracle = brute_force_pairs(a, t);
        EXPECT_EQ(true_association_rate(a, t), oracle.rt) << trial;
        EXPECT_EQ(false_association_rate(a, t), oracle.rf) << trial;
        EXPECT_EQ(error_rate(a, t), brute_force_error(a, t)) << trial;
    }
}

TEST(Eval, PermutationInvariance) {
    std::mt19937_64 gen(6);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 50;
        Labels t(n), a(n);
        for (std::size_t i = 0; i < n; ++i) {
            t[i] = gen() % 4;
            a[i] = gen() % 5;
        }
        std::vector<std::size_t> perm(5);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), gen);
        Labels b(n);
        for (std::size_t i = 0; i < n; ++i)
            b[i] = perm[a[i]];
        const auto r1 = evaluate(a, t), r2 = evaluate(b, t);
        EXPECT_EQ(r1.error_rate, r2.error_rate);
        EXPECT_EQ(r1.true_association, r2.true_association);
        EXPECT_EQ(r1.false_association, r2.false_association);
    }
}

TEST(Eval, RangeBounds) {
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 50; ++trial) {
        Labels t(30), a(30);
        for (std::size_t i = 0; i < 30; ++i) {
            t[i] = i % 3;
            a[i] = gen() % 4;
        }
        const auto r = evaluate(a, t);
        for (double v : {r.error_rate, r.true_association, r.false_association}) {
            EXPECT_GE(v, 0.0);
            EXPECT_LE(v, 100.0);
        }
    }
}
