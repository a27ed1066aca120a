#include "msc/core.hpp"
#include "msc/extval.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace msc;
using Labels = std::vector<std::int64_t>;

namespace {

// ARI by enumerating every pair of points.
double ari_by_pairs(const Labels& a, const Labels& b) {
    double both = 0, in_a = 0, in_b = 0, total = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            const bool sa = a[i] == a[j], sb = b[i] == b[j];
            both += sa && sb;
            in_a += sa;
            in_b += sb;
            ++total;
        }
    const double expected = in_a * in_b / total;
    const double max_index = 0.5 * (in_a + in_b);
    if (max_index == expected) return 1.0;
    return (both - expected) / (max_index - expected);
}

Labels random_labels(std::size_t n, std::size_t k, Rng& rng) {
    Labels l(n);
    for (auto& x : l) x = static_cast<std::int64_t>(uniform_index(rng, k));
    return l;
}

}  // namespace

TEST(Ari, IdenticalAndRenamed) {
    const Labels a{0, 0, 1, 1, 2, 2};
    EXPECT_DOUBLE_EQ(ari(a, a), 1.0);
    EXPECT_DOUBLE_EQ(ari(a, Labels{5, 5, 9, 9, -1, -1}), 1.0);
    EXPECT_DOUBLE_EQ(nmi(a, Labels{5, 5, 9, 9, -1, -1}), 1.0);
}

TEST(Ari, CrossedPairs) {
    const Labels a{0, 0, 1, 1}, b{0, 1, 0, 1};
    EXPECT_NEAR(ari(a, b), -0.5, 1e-12);
    EXPECT_NEAR(ari_by_pairs(a, b), -0.5, 1e-12);
    EXPECT_NEAR(nmi(a, b), 0.0, 1e-12);
}

TEST(Ari, MatchesPairEnumeration) {
    Rng rng(1);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 5 + uniform_index(rng, 40);
        const auto a = random_labels(n, 1 + uniform_index(rng, 5), rng);
        const auto b = random_labels(n, 1 + uniform_index(rng, 5), rng);
        EXPECT_NEAR(ari(a, b), ari_by_pairs(a, b), 1e-12);
    }
}

TEST(Ari, RandomLabelingsNearZero) {
    Rng rng(7);
    double sum = 0;
    for (int t = 0; t < 200; ++t) sum += ari(random_labels(200, 4, rng), random_labels(200, 4, rng));
    EXPECT_LT(std::abs(sum / 200), 0.05);
}

TEST(Nmi, SingleClusterConventions) {
    const Labels one{3, 3, 3, 3};
    EXPECT_DOUBLE_EQ(nmi(one, one), 1.0);
    EXPECT_DOUBLE_EQ(nmi(one, Labels{0, 1, 0, 1}), 0.0);
}

TEST(Nmi, KnownValue) {
    // H(a) = ln 2, H(b) = 1.5 ln 2 in bits-free form; I = ln 2
    const Labels a{0, 0, 1, 1}, b{0, 1, 2, 2};
    const double ha = std::log(2.0);
    const double hb = -(0.25 * std::log(0.25) * 2 + 0.5 * std::log(0.5));
    EXPECT_NEAR(nmi(a, b), ha / (0.5 * (ha + hb)), 1e-12);
}

TEST(ExtVal, PermutationInvariance) {
    Rng rng(3);
    for (int t = 0; t < 1000; ++t) {
        const std::size_t n = 10 + uniform_index(rng, 30);
        const auto a = random_labels(n, 2 + uniform_index(rng, 4), rng);
        const auto b = random_labels(n, 2 + uniform_index(rng, 4), rng);
        const auto perm = random_permutation(n, rng);
        Labels pa(n), pb(n);
        for (std::size_t i = 0; i < n; ++i) pa[perm[i]] = a[i], pb[perm[i]] = b[i];
        ASSERT_NEAR(ari(a, b), ari(pa, pb), 1e-12);
        ASSERT_NEAR(nmi(a, b), nmi(pa, pb), 1e-12);
        ASSERT_NEAR(ari(a, b), ari(b, a), 1e-12);
        const double v = nmi(a, b);
        ASSERT_GE(v, 0.0);
        ASSERT_LE(v, 1.0);
    }
}

TEST(ExtVal, Errors) {
    EXPECT_THROW((void)ari(Labels{0, 1}, Labels{0}), std::invalid_argument);
    EXPECT_THROW((void)nmi(Labels{}, Labels{}), std::invalid_argument);
}
