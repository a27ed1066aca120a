#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

namespace msc {

/// Co-occurrence counts of two labelings over the same points.
struct ContingencyTable {
    std::vector<std::vector<std::uint64_t>> counts;  // rows: clusters of a, cols: clusters of b
    std::vector<std::uint64_t> row_sums;
    std::vector<std::uint64_t> col_sums;
    std::uint64_t n = 0;
};

[[nodiscard]] inline ContingencyTable contingency_table(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
    if (a.size() != b.size()) throw std::invalid_argument("labelings differ in length");
    if (a.empty()) throw std::invalid_argument("labelings are empty");
    std::map<std::int64_t, std::size_t> ids_a, ids_b;
    for (auto l : a) ids_a.emplace(l, ids_a.size());
    for (auto l : b) ids_b.emplace(l, ids_b.size());

    ContingencyTable t;
    t.n = a.size();
    t.counts.assign(ids_a.size(), std::vector<std::uint64_t>(ids_b.size(), 0));
    t.row_sums.assign(ids_a.size(), 0);
    t.col_sums.assign(ids_b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto r = ids_a[a[i]], c = ids_b[b[i]];
        ++t.counts[r][c];
        ++t.row_sums[r];
        ++t.col_sums[c];
    }
    return t;
}

namespace detail {

inline double pairs(std::uint64_t x) { return 0.5 * static_cast<double>(x) * static_cast<double>(x > 0 ? x - 1 : 0); }

inline double entropy(std::span<const std::uint64_t> sums, double n) {
    double h = 0.0;
    for (auto s : sums)
        if (s > 0) {
            const double p = static_cast<double>(s) / n;
            h -= p * std::log(p);
        }
    return h;
}

}  // namespace detail

/// Adjusted Rand index (Hubert-Arabie). Returns 1 when both labelings are
/// the same trivial partition and the chance-corrected denominator vanishes.
[[nodiscard]] inline double ari(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
    if (a.size() < 2) throw std::invalid_argument("ARI needs at least 2 points");
    const auto t = contingency_table(a, b);
    double index = 0.0, sum_a = 0.0, sum_b = 0.0;
    for (const auto& row : t.counts)
        for (auto c : row) index += detail::pairs(c);
    for (auto s : t.row_sums) sum_a += detail::pairs(s);
    for (auto s : t.col_sums) sum_b += detail::pairs(s);
    const double total = detail::pairs(t.n);
    const double expected = sum_a * sum_b / total;
    const double max_index = 0.5 * (sum_a + sum_b);
    if (max_index == expected) return 1.0;
    return (index - expected) / (max_index - expected);
}

/// Mutual information normalized by the arithmetic mean of both entropies.
/// Both entropies zero gives 1; exactly one zero gives 0.
[[nodiscard]] inline double nmi(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
    if (a.size() < 2) throw std::invalid_argument("NMI needs at least 2 points");
    const auto t = contingency_table(a, b);
    const double n = static_cast<double>(t.n);
    const double ha = detail::entropy(t.row_sums, n);
    const double hb = detail::entropy(t.col_sums, n);
    if (ha == 0.0 && hb == 0.0) return 1.0;
    if (ha == 0.0 || hb == 0.0) return 0.0;
    double mi = 0.0;
    for (std::size_t r = 0; r < t.counts.size(); ++r) {
        for (std::size_t c = 0; c < t.counts[r].size(); ++c) {
            const auto nij = t.counts[r][c];
            if (nij == 0) continue;
            const double pij = static_cast<double>(nij) / n;
            mi += pij * std::log(pij * n * n / (static_cast<double>(t.row_sums[r]) * static_cast<double>(t.col_sums[c])));
        }
    }
    const double value = mi / (0.5 * (ha + hb));
    return std::clamp(value, 0.0, 1.0);
}

}  // namespace msc
