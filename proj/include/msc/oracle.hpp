#pragma once

// Brute-force references for validating the fast paths. Nothing here reuses
// the optimizer or silhouette code: per-point silhouettes come from fully
// sorting the distances to all medoids.

#include "msc/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <type_traits>
#include <string>
#include <variant>
#include <vector>

namespace msc::oracle {

/// 1 - d1/d2 for point o from a full sort of its medoid distances.
[[nodiscard]] inline double point_silhouette(const DissimilarityMatrix& matrix, std::span<const std::size_t> medoids,
                                             std::size_t o) {
    std::vector<double> d;
    d.reserve(medoids.size());
    for (std::size_t m : medoids) d.push_back(matrix(o, m));
    std::sort(d.begin(), d.end());
    if (d[1] == 0.0) return 1.0;
    return 1.0 - d[0] / d[1];
}

[[nodiscard]] inline double ams_sum(const DissimilarityMatrix& matrix, std::span<const std::size_t> medoids) {
    double sum = 0.0;
    for (std::size_t o = 0; o < matrix.size(); ++o) sum += point_silhouette(matrix, medoids, o);
    return sum;
}

[[nodiscard]] inline double ams(const DissimilarityMatrix& matrix, std::span<const std::size_t> medoids) {
    return ams_sum(matrix, medoids) / static_cast<double>(matrix.size());
}

[[nodiscard]] inline MedoidSet swapped(MedoidSet medoids, std::size_t position, std::size_t replacement) {
    medoids.at(position) = replacement;
    return medoids;
}

/// Point o's silhouette after replacing medoids[position] by replacement,
/// minus its silhouette before.
[[nodiscard]] inline double recompute_point_delta(const DissimilarityMatrix& matrix, const MedoidSet& medoids,
                                                  std::size_t position, std::size_t replacement, std::size_t o) {
    const auto after = swapped(medoids, position, replacement);
    return point_silhouette(matrix, after, o) - point_silhouette(matrix, medoids, o);
}

/// Change of the silhouette sum for one swap by full re-evaluation, O(nk).
[[nodiscard]] inline double recompute_delta(const DissimilarityMatrix& matrix, const MedoidSet& medoids,
                                            std::size_t position, std::size_t replacement) {
    return ams_sum(matrix, swapped(medoids, position, replacement)) - ams_sum(matrix, medoids);
}

[[nodiscard]] inline double binomial(std::size_t n, std::size_t k) {
    double c = 1.0;
    for (std::size_t i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
    return c;
}

/// Advances a sorted k-subset of 0..n-1 to its lexicographic successor;
/// false after the last one.
inline bool next_combination(MedoidSet& subset, std::size_t n) {
    const std::size_t k = subset.size();
    std::size_t i = k;
    while (i > 0 && subset[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++subset[i - 1];
    for (std::size_t j = i; j < k; ++j) subset[j] = subset[j - 1] + 1;
    return true;
}

struct ExhaustiveResult {
    MedoidSet medoids;
    double ams = 0.0;
    std::uint64_t evaluated = 0;
};

/// Global AMS optimum over all k-subsets, lexicographically smallest among
/// ties (gaps below 1e-12 count as ties).
[[nodiscard]] inline ExhaustiveResult exhaustive_best_medoids(const DissimilarityMatrix& matrix, std::size_t k,
                                                              double budget = 1e6) {
    const std::size_t n = matrix.size();
    check_k(n, k);
    if (binomial(n, k) > budget) throw std::invalid_argument("C(n, k) exceeds the enumeration budget");

    ExhaustiveResult best;
    best.ams = -1.0;
    MedoidSet subset(k);
    std::iota(subset.begin(), subset.end(), std::size_t{0});
    do {
        const double value = ams(matrix, subset);
        ++best.evaluated;
        if (value > best.ams + 1e-12) {
            best.ams = value;
            best.medoids = subset;
        }
    } while (next_combination(subset, n));
    return best;
}

/// Multiplies every within-cluster distance by a factor in [shrink_min, 1]
/// and every between-cluster distance by one in [1, grow_max], with clusters
/// taken from the nearest medoid.
struct ConsistentPerturbation {
    double shrink_min = 0.5;
    double grow_max = 2.0;
    std::uint64_t seed = 0;
};

struct ScaleTransform {
    double factor = 1.0;
};

/// new index of point i is perm[i]
struct PointPermutation {
    std::vector<std::size_t> perm;
};

/// Replaces the distances with the construction that makes the instance's
/// medoid set the unique AMS optimum.
struct RichnessTarget {};

using Transform = std::variant<ScaleTransform, ConsistentPerturbation, PointPermutation, RichnessTarget>;

struct AxiomInstance {
    DissimilarityMatrix matrix;
    MedoidSet medoids;
    Transform transform;
};

struct AxiomReport {
    std::string axiom;
    bool passed = false;
    double before = 0.0;
    double after = 0.0;
    std::string detail;
};

/// Cluster index (nearest medoid position) of every point.
[[nodiscard]] inline std::vector<std::size_t> nearest_partition(const DissimilarityMatrix& matrix,
                                                                std::span<const std::size_t> medoids) {
    std::vector<std::size_t> part(matrix.size());
    for (std::size_t o = 0; o < matrix.size(); ++o) {
        std::size_t best = 0;
        for (std::size_t p = 1; p < medoids.size(); ++p)
            if (matrix(o, medoids[p]) < matrix(o, medoids[best])) best = p;
        part[o] = best;
    }
    return part;
}

[[nodiscard]] inline DissimilarityMatrix consistent_variant(const DissimilarityMatrix& matrix,
                                                            std::span<const std::size_t> medoids,
                                                            const ConsistentPerturbation& p) {
    if (!(p.shrink_min > 0.0 && p.shrink_min <= 1.0 && p.grow_max >= 1.0 && std::isfinite(p.grow_max))) {
        throw std::invalid_argument("perturbation needs 0 < shrink_min <= 1 <= grow_max");
    }
    const std::size_t n = matrix.size();
    const auto part = nearest_partition(matrix, medoids);
    Rng rng(p.seed);
    std::vector<double> v(matrix.values());
    // upper triangle, mirrored
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double u = uniform_unit(rng);
            const double f = part[i] == part[j] ? p.shrink_min + (1.0 - p.shrink_min) * u : 1.0 + (p.grow_max - 1.0) * u;
            v[i * n + j] = v[j * n + i] = matrix(i, j) * f;
        }
    }
    return DissimilarityMatrix(n, std::move(v));
}

/// Checks the M-consistency definition entry by entry.
[[nodiscard]] inline bool is_consistent_variant(const DissimilarityMatrix& original, const DissimilarityMatrix& variant,
                                                std::span<const std::size_t> medoids) {
    const auto part = nearest_partition(original, medoids);
    for (std::size_t i = 0; i < original.size(); ++i)
        for (std::size_t j = 0; j < original.size(); ++j) {
            if (part[i] == part[j] && variant(i, j) > original(i, j)) return false;
            if (part[i] != part[j] && variant(i, j) < original(i, j)) return false;
        }
    return true;
}

/// Distance 0 between the first target medoid and any non-medoid (and on
/// the diagonal), 1 everywhere else. Needs k <= n - 2: with a single
/// non-medoid, moving the first medoid onto it also reaches AMS 1.
[[nodiscard]] inline DissimilarityMatrix richness_matrix(std::size_t n, std::span<const std::size_t> target) {
    check_medoids(n, target);
    if (target.size() + 2 > n) throw std::invalid_argument("richness construction needs k <= n - 2");
    std::vector<bool> in_target(n, false);
    for (auto m : target) in_target[m] = true;
    const std::size_t first = target.front();
    std::vector<double> v(n * n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        v[i * n + i] = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if ((i == first && !in_target[j]) || (j == first && !in_target[i])) v[i * n + j] = 0.0;
        }
    }
    return DissimilarityMatrix(n, std::move(v));
}

[[nodiscard]] inline AxiomReport axiom_suite(const AxiomInstance& instance) {
    const auto& d = instance.matrix;
    const auto& medoids = instance.medoids;
    check_medoids(d.size(), medoids);
    constexpr double tol = 1e-12;

    return std::visit(
        [&](const auto& t) -> AxiomReport {
            using T = std::decay_t<decltype(t)>;
            AxiomReport r;
            r.before = ams(d, medoids);
            if constexpr (std::is_same_v<T, ScaleTransform>) {
                r.axiom = "scale invariance";
                r.after = ams(d.scaled(t.factor), medoids);
                r.passed = std::abs(r.after - r.before) <= tol;
            } else if constexpr (std::is_same_v<T, ConsistentPerturbation>) {
                r.axiom = "consistency";
                const auto variant = consistent_variant(d, medoids, t);
                if (!is_consistent_variant(d, variant, medoids)) throw std::invalid_argument("malformed perturbation");
                r.after = ams(variant, medoids);
                r.passed = r.after >= r.before - tol;
            } else if constexpr (std::is_same_v<T, PointPermutation>) {
                r.axiom = "isomorphism invariance";
                MedoidSet mapped;
                for (auto m : medoids) mapped.push_back(t.perm.at(m));
                r.after = ams(d.permuted(t.perm), mapped);
                r.passed = std::abs(r.after - r.before) <= tol;
            } else {
                r.axiom = "richness";
                const auto rich = richness_matrix(d.size(), medoids);
                r.before = ams(rich, medoids);
                const auto best = exhaustive_best_medoids(rich, medoids.size());
                r.after = best.ams;
                MedoidSet sorted_target(medoids);
                std::sort(sorted_target.begin(), sorted_target.end());
                r.passed = r.before == 1.0 && best.ams == 1.0 && best.medoids == sorted_target;
                if (!r.passed) r.detail = "exhaustive optimum differs from the encoded medoids";
                // every set missing a target medoid must score below 1
                if (r.passed) {
                    MedoidSet subset(medoids.size());
                    std::iota(subset.begin(), subset.end(), std::size_t{0});
                    do {
                        if (subset != sorted_target && ams(rich, subset) >= 1.0) {
                            r.passed = false;
                            r.detail = "a non-target medoid set also reaches AMS 1";
                            break;
                        }
                    } while (next_combination(subset, d.size()));
                }
            }
            return r;
        },
        instance.transform);
}

}  // namespace msc::oracle
