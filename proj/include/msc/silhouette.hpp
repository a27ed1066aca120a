#pragma once

#include "msc/core.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

namespace msc {

struct SilhouetteReport {
    std::vector<double> per_point;
    double mean = 0.0;
};

namespace detail {

inline SilhouetteReport finish_report(std::vector<double> widths) {
    SilhouetteReport r;
    r.mean = widths.empty() ? 0.0 : std::accumulate(widths.begin(), widths.end(), 0.0) / widths.size();
    r.per_point = std::move(widths);
    return r;
}

}  // namespace detail

/// Classic silhouette from arbitrary cluster ids. Singletons get width 0.
/// One O(n) pass per point accumulates per-cluster distance sums, O(n^2) total.
[[nodiscard]] inline SilhouetteReport silhouette(const DissimilarityMatrix& matrix, std::span<const std::size_t> labels) {
    const std::size_t n = matrix.size();
    if (labels.size() != n) throw std::invalid_argument("label count differs from matrix size");

    // compact ids to 0..c-1
    std::map<std::size_t, std::size_t> ids;
    for (std::size_t l : labels) ids.emplace(l, ids.size());
    const std::size_t c = ids.size();
    if (c < 2) throw std::invalid_argument("silhouette needs at least 2 clusters");
    std::vector<std::size_t> cluster(n);
    std::vector<std::size_t> sizes(c, 0);
    for (std::size_t i = 0; i < n; ++i) {
        cluster[i] = ids.at(labels[i]);
        ++sizes[cluster[i]];
    }

    std::vector<double> widths(n, 0.0);
    std::vector<double> sums(c);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t own = cluster[i];
        if (sizes[own] == 1) continue;
        std::fill(sums.begin(), sums.end(), 0.0);
        const auto row = matrix.row(i);
        for (std::size_t j = 0; j < n; ++j) sums[cluster[j]] += row[j];
        const double a = sums[own] / static_cast<double>(sizes[own] - 1);
        double b = kInfinity;
        for (std::size_t q = 0; q < c; ++q)
            if (q != own) b = std::min(b, sums[q] / static_cast<double>(sizes[q]));
        const double denom = std::max(a, b);
        widths[i] = denom > 0.0 ? (b - a) / denom : 0.0;
    }
    return detail::finish_report(std::move(widths));
}

/// Simplified (medoid-based) silhouette with nearest-medoid assignment:
/// a' is the distance to the own medoid, b' to the closest other medoid.
/// a' == b' == 0 yields 1, matching the medoid silhouette convention.
[[nodiscard]] inline SilhouetteReport simplified_silhouette(const DissimilarityMatrix& matrix,
                                                            std::span<const std::size_t> medoids) {
    check_medoids(matrix.size(), medoids);
    std::vector<double> widths(matrix.size());
    for (std::size_t o = 0; o < matrix.size(); ++o) {
        const auto rec = nearest_three(matrix, medoids, o);
        const double a = rec.d1;
        double b = kInfinity;
        for (std::size_t pos = 0; pos < medoids.size(); ++pos)
            if (pos != rec.n1) b = std::min(b, matrix(o, medoids[pos]));
        const double denom = std::max(a, b);
        widths[o] = denom > 0.0 ? (b - a) / denom : 1.0;
    }
    return detail::finish_report(std::move(widths));
}

/// Unnormalized sum of 1 - d1/d2 over all points.
[[nodiscard]] inline double medoid_silhouette_sum(const DissimilarityMatrix& matrix, std::span<const std::size_t> medoids) {
    double sum = 0.0;
    for (std::size_t o = 0; o < matrix.size(); ++o) {
        const auto row = matrix.row(o);
        double d1 = kInfinity, d2 = kInfinity;
        for (std::size_t m : medoids) {
            const double d = row[m];
            if (d < d1) {
                d2 = d1;
                d1 = d;
            } else if (d < d2) {
                d2 = d;
            }
        }
        sum += 1.0 - safe_ratio(d1, d2);
    }
    return sum;
}

/// Medoid silhouette 1 - d1/d2 per point (1 when d1 == d2 == 0); the mean is the AMS.
[[nodiscard]] inline SilhouetteReport medoid_silhouette(const DissimilarityMatrix& matrix,
                                                        std::span<const std::size_t> medoids) {
    check_medoids(matrix.size(), medoids);
    std::vector<double> widths(matrix.size());
    for (std::size_t o = 0; o < matrix.size(); ++o) {
        const auto rec = nearest_three(matrix, medoids, o);
        widths[o] = 1.0 - safe_ratio(rec.d1, rec.d2);
    }
    return detail::finish_report(std::move(widths));
}

[[nodiscard]] inline double average_medoid_silhouette(const DissimilarityMatrix& matrix,
                                                      std::span<const std::size_t> medoids) {
    return medoid_silhouette(matrix, medoids).mean;
}

struct PlotRow {
    std::size_t label;
    std::size_t point;
    double width;
};

/// Rows grouped by ascending label, widths descending within a group
/// (ties by point index).
[[nodiscard]] inline std::vector<PlotRow> silhouette_plot_data(const SilhouetteReport& report,
                                                               std::span<const std::size_t> labels) {
    if (report.per_point.size() != labels.size()) throw std::invalid_argument("report and labels differ in length");
    std::vector<PlotRow> rows(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) rows[i] = {labels[i], i, report.per_point[i]};
    std::sort(rows.begin(), rows.end(), [](const PlotRow& a, const PlotRow& b) {
        if (a.label != b.label) return a.label < b.label;
        if (a.width != b.width) return a.width > b.width;
        return a.point < b.point;
    });
    return rows;
}

inline void write_plot_csv(std::ostream& out, std::span<const PlotRow> rows) {
    out << "label,point,width\n";
    const auto old_precision = out.precision(17);
    for (const auto& r : rows) out << r.label << ',' << r.point << ',' << r.width << '\n';
    out.precision(old_precision);
}

}  // namespace msc
