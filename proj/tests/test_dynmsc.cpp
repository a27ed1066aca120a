#include "msc/dynmsc.hpp"
#include "msc/oracle.hpp"
#include "msc/silhouette.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace msc;

TEST(DefaultKMax, SmallAndLarge) {
    EXPECT_EQ(default_k_max(4), 3u);
    EXPECT_EQ(default_k_max(100), 20u);
    EXPECT_EQ(default_k_max(101), 21u);
}

TEST(RemoveMedoid, LineDataThreeMedoids) {
    const auto d = test::line_matrix();
    OptimizerState s(d, MedoidSet{0, 1, 2});
    EXPECT_EQ(least_harmful_medoid(s), 0u);
    const double before = s.ams_sum();
    const double loss = s.removal_loss()[0];
    EXPECT_NEAR(loss, -0.1, 1e-12);
    s.remove_medoid(0);
    EXPECT_EQ(s.medoids(), (MedoidSet{1, 2}));
    EXPECT_NEAR(s.ams_sum() - before, loss, 1e-12);
    EXPECT_NEAR(s.ams(), 0.95, 1e-12);
    EXPECT_TRUE(s.audit().empty());
    EXPECT_THROW(s.remove_medoid(0), std::invalid_argument);
}

TEST(RemoveMedoid, LossEqualsRecomputedDrop) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto d = test::random_instance(40, seed);
        const OptimizerState s(d, init_random(40, 6, seed));
        for (std::size_t i = 0; i < s.k(); ++i) {
            MedoidSet rest(s.medoids());
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
            EXPECT_NEAR(oracle::ams_sum(d, rest) - oracle::ams_sum(d, s.medoids()), s.removal_loss()[i], 1e-9);
        }
    }
}

TEST(RemoveMedoid, FarOutlierMedoidRemovedFirst) {
    // a medoid sitting on an isolated point serves nobody but itself
    const auto d = build_matrix({{0.0}, {0.1}, {0.2}, {5.0}, {5.1}, {5.2}, {1000.0}});
    OptimizerState s(d, MedoidSet{1, 4, 6});
    const auto pos = least_harmful_medoid(s);
    EXPECT_NE(s.medoids()[pos], 6u);
    s.remove_medoid(pos);
    EXPECT_TRUE(s.audit().empty());
}

TEST(RemoveMedoid, AuditAfterSuccessiveRemovals) {
    const auto d = test::random_instance(60, 8);
    OptimizerState s(d, init_random(60, 10, 8));
    while (s.k() > 2) {
        s.remove_medoid(least_harmful_medoid(s));
        ASSERT_TRUE(s.audit().empty()) << "k=" << s.k();
    }
}

TEST(DynMsc, FourBlobs) {
    const auto blobs = datagen::four_blobs(200, 1);
    const auto d = build_matrix(blobs.points);
    const auto sweep = dynmsc(d, 10, 2, 1);
    EXPECT_EQ(sweep.best_k, 4u);
    EXPECT_EQ(sweep.best.medoids.size(), 4u);
    ASSERT_EQ(sweep.per_k.size(), 9u);
    for (std::size_t i = 0; i < sweep.per_k.size(); ++i) {
        EXPECT_EQ(sweep.per_k[i].k, i + 2);
        EXPECT_NEAR(sweep.per_k[i].ams, average_medoid_silhouette(d, sweep.per_k[i].medoids), 1e-9);
    }
}

TEST(DynMsc, SingleK) {
    const auto sweep = dynmsc(test::line_matrix(), 2, 2, 0);
    ASSERT_EQ(sweep.per_k.size(), 1u);
    EXPECT_EQ(sweep.best_k, 2u);
    EXPECT_NEAR(sweep.per_k[0].ams, 0.95, 1e-12);
}

TEST(DynMsc, RangeErrors) {
    const auto d = test::line_matrix();
    EXPECT_THROW((void)dynmsc(d, 4, 2, 0), std::invalid_argument);
    EXPECT_THROW((void)dynmsc(d, 3, 1, 0), std::invalid_argument);
    EXPECT_THROW((void)dynmsc(d, 2, 3, 0), std::invalid_argument);
}

TEST(DynMsc, EachKLocallyOptimal) {
    const auto d = test::random_instance(80, 4);
    const auto sweep = dynmsc(d, 8, 2, 4);
    for (const auto& e : sweep.per_k) EXPECT_FALSE(find_best_swap(OptimizerState(d, e.medoids))) << "k=" << e.k;
}

TEST(DynMsc, FewerSwapsThanIndependentRuns) {
    const auto d = build_matrix(datagen::four_blobs(300, 2).points);
    const auto sweep = dynmsc(d, 12, 2, 2);
    std::size_t independent = 0;
    for (std::size_t k = 2; k <= 12; ++k) independent += fastermsc(d, init_random(300, k, 2 + k)).swaps;
    EXPECT_LT(sweep.total_swaps, independent);
}

TEST(DynMsc, SweepCsv) {
    const auto sweep = dynmsc(test::line_matrix(), 3, 2, 0);
    std::ostringstream out;
    write_sweep_csv(out, sweep);
    EXPECT_EQ(out.str().rfind("k,ams\n2,", 0), 0u);
    EXPECT_THROW((void)sweep.at(7), std::out_of_range);
}
