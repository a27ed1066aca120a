#pragma once

// Steepest-descent swap search that re-evaluates the whole objective for
// every candidate. Slow on purpose: these are the baselines the incremental
// optimizers are checked against.

#include "msc/core.hpp"
#include "msc/silhouette.hpp"

#include <algorithm>
#include <vector>

namespace msc {

namespace detail {

/// Generic best-improvement swap loop. objective_sum(medoids) returns the
/// unnormalized quality of a medoid set.
template <typename Objective>
ClusteringResult steepest_swap_search(const DissimilarityMatrix& matrix, MedoidSet medoids, const SwapOptions& options,
                                      Objective&& objective_sum) {
    const std::size_t n = matrix.size();
    check_medoids(n, medoids);
    const std::size_t k = medoids.size();

    ClusteringResult result;
    result.converged = false;
    double current = objective_sum(medoids);
    result.history.push_back(current / n);

    std::vector<bool> is_medoid(n, false);
    for (std::size_t m : medoids) is_medoid[m] = true;

    MedoidSet trial(medoids);
    while (result.iterations < options.max_iter) {
        if (options.expired()) {
            result.timed_out = true;
            break;
        }
        ++result.iterations;
        SwapCandidate best;
        for (std::size_t pos = 0; pos < k; ++pos) {
            for (std::size_t x = 0; x < n; ++x) {
                if (is_medoid[x]) continue;
                trial[pos] = x;
                const SwapCandidate cand{pos, x, objective_sum(trial) - current};
                trial[pos] = medoids[pos];
                result.inner_visits += n;
                if (improves_on(cand, best)) best = cand;
            }
        }
        if (best.medoid_position == kNoMedoid || best.gain <= kImprovementEps) {
            result.converged = true;
            break;
        }
        is_medoid[medoids[best.medoid_position]] = false;
        is_medoid[best.replacement] = true;
        medoids[best.medoid_position] = best.replacement;
        trial[best.medoid_position] = best.replacement;
        current = objective_sum(medoids);
        ++result.swaps;
        result.history.push_back(current / n);
    }

    result.labels = assign_labels(matrix, medoids);
    result.ams = medoid_silhouette_sum(matrix, medoids) / n;
    result.medoids = std::move(medoids);
    return result;
}

}  // namespace detail

/// PAMSIL: best-improvement swaps on the full average silhouette width,
/// with points assigned to their nearest medoid. O(k (n-k) n^2) per iteration.
[[nodiscard]] inline ClusteringResult pamsil(const DissimilarityMatrix& matrix, MedoidSet initial,
                                             const SwapOptions& options = {}) {
    auto asw_sum = [&matrix](const MedoidSet& medoids) {
        const auto labels = assign_labels(matrix, medoids);
        // coincident medoids can leave a single non-empty cluster
        if (std::all_of(labels.begin(), labels.end(), [&](std::size_t l) { return l == labels.front(); })) return 0.0;
        const auto report = silhouette(matrix, labels);
        return report.mean * static_cast<double>(matrix.size());
    };
    auto result = detail::steepest_swap_search(matrix, std::move(initial), options, asw_sum);
    result.asw = result.history.back();
    return result;
}

/// PAMMEDSIL: best-improvement swaps on the average medoid silhouette,
/// O(k^2 (n-k) n) per iteration.
[[nodiscard]] inline ClusteringResult pammedsil(const DissimilarityMatrix& matrix, MedoidSet initial,
                                                const SwapOptions& options = {}) {
    auto ams_sum = [&matrix](const MedoidSet& medoids) { return medoid_silhouette_sum(matrix, medoids); };
    return detail::steepest_swap_search(matrix, std::move(initial), options, ams_sum);
}

}  // namespace msc
