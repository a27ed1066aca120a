#include "msc/silhouette.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <sstream>

using namespace msc;

namespace {

// Direct transcription of the silhouette definition, used as an oracle.
std::vector<double> silhouette_by_definition(const DissimilarityMatrix& d, const std::vector<std::size_t>& labels) {
    const std::size_t n = d.size();
    std::vector<double> s(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double a_sum = 0;
        std::size_t a_cnt = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i && labels[j] == labels[i]) a_sum += d(i, j), ++a_cnt;
        if (a_cnt == 0) continue;
        const double a = a_sum / a_cnt;
        double b = INFINITY;
        for (std::size_t c : labels) {
            if (c == labels[i]) continue;
            double sum = 0;
            std::size_t cnt = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (labels[j] == c) sum += d(i, j), ++cnt;
            b = std::min(b, sum / cnt);
        }
        s[i] = (b - a) / std::max(a, b);
    }
    return s;
}

}  // namespace

TEST(Silhouette, LineData) {
    const auto d = test::line_matrix();
    const std::vector<std::size_t> labels{7, 7, 3, 3};
    const auto r = silhouette(d, labels);
    ASSERT_EQ(r.per_point.size(), 4u);
    EXPECT_NEAR(r.per_point[0], 0.904762, 1e-6);
    EXPECT_NEAR(r.per_point[1], 0.894737, 1e-6);
    EXPECT_NEAR(r.per_point[2], 0.894737, 1e-6);
    EXPECT_NEAR(r.per_point[3], 0.904762, 1e-6);
    EXPECT_NEAR(r.mean, 0.899749, 1e-6);
}

TEST(Silhouette, SymmetricDataGivesZero) {
    // four points on a square's corners, clusters along a diagonal split:
    // every a_i equals b_i
    const DissimilarityMatrix d(4, {0, 1, 1, 1, 1, 0, 1, 1, 1, 1, 0, 1, 1, 1, 1, 0});
    const auto r = silhouette(d, std::vector<std::size_t>{0, 0, 1, 1});
    for (double s : r.per_point) EXPECT_EQ(s, 0.0);
}

TEST(Silhouette, SingletonGetsZero) {
    const auto d = test::line_matrix();
    const auto r = silhouette(d, std::vector<std::size_t>{0, 0, 0, 1});
    EXPECT_EQ(r.per_point[3], 0.0);
}

TEST(Silhouette, NeedsTwoClusters) {
    EXPECT_THROW((void)silhouette(test::line_matrix(), std::vector<std::size_t>{1, 1, 1, 1}), std::invalid_argument);
}

TEST(Silhouette, MatchesDefinitionOnRandomInstances) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto d = test::random_instance(50, seed);
        const auto labels = assign_labels(d, init_random(50, 3 + seed % 4, seed));
        const auto fast = silhouette(d, labels);
        const auto ref = silhouette_by_definition(d, labels);
        for (std::size_t i = 0; i < 50; ++i) EXPECT_NEAR(fast.per_point[i], ref[i], 1e-12);
        EXPECT_NEAR(fast.mean, std::accumulate(ref.begin(), ref.end(), 0.0) / 50, 1e-12);
    }
}

TEST(MedoidSilhouette, LineData) {
    const auto r = medoid_silhouette(test::line_matrix(), MedoidSet{0, 2});
    EXPECT_DOUBLE_EQ(r.per_point[0], 1.0);
    EXPECT_DOUBLE_EQ(r.per_point[1], 8.0 / 9.0);
    EXPECT_DOUBLE_EQ(r.per_point[2], 1.0);
    EXPECT_DOUBLE_EQ(r.per_point[3], 10.0 / 11.0);
    EXPECT_NEAR(r.mean, 0.949495, 1e-6);
}

TEST(MedoidSilhouette, EquidistantPointIsZero) {
    const auto d = build_matrix({{0.0}, {1.0}, {2.0}});
    EXPECT_EQ(medoid_silhouette(d, MedoidSet{0, 2}).per_point[1], 0.0);
}

TEST(MedoidSilhouette, CoincidentMedoidsGiveOne) {
    const auto d = build_matrix({{0.0}, {0.0}, {5.0}});
    const auto r = medoid_silhouette(d, MedoidSet{0, 1});
    EXPECT_EQ(r.per_point[0], 1.0);
    EXPECT_EQ(r.per_point[1], 1.0);
    EXPECT_EQ(r.per_point[2], 0.0);
}

TEST(SimplifiedSilhouette, LineData) {
    const auto r = simplified_silhouette(test::line_matrix(), MedoidSet{0, 2});
    EXPECT_DOUBLE_EQ(r.per_point[1], 8.0 / 9.0);
    EXPECT_DOUBLE_EQ(r.per_point[3], 10.0 / 11.0);
}

TEST(SimplifiedSilhouette, AllButOnePointAreMedoids) {
    const auto r = simplified_silhouette(test::line_matrix(), MedoidSet{0, 1, 2});
    EXPECT_EQ(r.per_point[0], 1.0);
    EXPECT_EQ(r.per_point[1], 1.0);
    EXPECT_EQ(r.per_point[2], 1.0);
    EXPECT_DOUBLE_EQ(r.per_point[3], 0.9);
}

TEST(SimplifiedSilhouette, EqualsMedoidSilhouetteUnderNearestAssignment) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto d = test::random_instance(60, seed);
        const auto m = init_random(60, 2 + seed % 7, seed);
        const auto a = simplified_silhouette(d, m);
        const auto b = medoid_silhouette(d, m);
        for (std::size_t i = 0; i < 60; ++i) {
            EXPECT_NEAR(a.per_point[i], b.per_point[i], 1e-12);
            EXPECT_GE(b.per_point[i], 0.0);
            EXPECT_LE(b.per_point[i], 1.0);
        }
        EXPECT_NEAR(b.mean, std::accumulate(b.per_point.begin(), b.per_point.end(), 0.0) / 60, 1e-12);
    }
}

TEST(MedoidSilhouette, ScaleInvariant) {
    const auto d = test::random_instance(40, 3);
    const auto m = init_random(40, 4, 3);
    EXPECT_NEAR(average_medoid_silhouette(d.scaled(7.3), m), average_medoid_silhouette(d, m), 1e-12);
}

TEST(PlotData, OrderingAndCsv) {
    SilhouetteReport r{{0.2, 0.9, 0.5}, 0.0};
    const auto rows = silhouette_plot_data(r, std::vector<std::size_t>{0, 0, 1});
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0].point, 1u);
    EXPECT_EQ(rows[1].point, 0u);
    EXPECT_EQ(rows[2].label, 1u);

    std::ostringstream out;
    write_plot_csv(out, rows);
    EXPECT_EQ(out.str().substr(0, 18), "label,point,width\n");

    EXPECT_THROW((void)silhouette_plot_data(r, std::vector<std::size_t>{0}), std::invalid_argument);
}

TEST(PlotData, LineReportTwoGroups) {
    const auto d = test::line_matrix();
    const MedoidSet m{0, 2};
    const auto rows = silhouette_plot_data(medoid_silhouette(d, m), assign_labels(d, m));
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0].label, 0u);
    EXPECT_EQ(rows[1].label, 0u);
    EXPECT_EQ(rows[2].label, 1u);
    EXPECT_EQ(rows[0].point, 0u);  // width 1 before 8/9
    EXPECT_EQ(rows[2].point, 2u);  // width 1 before 10/11
}
