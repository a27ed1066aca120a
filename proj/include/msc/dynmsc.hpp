#pragma once

#include "msc/core.hpp"
#include "msc/fastmsc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <vector>

namespace msc {

struct SweepEntry {
    std::size_t k = 0;
    double ams = 0.0;
    MedoidSet medoids;
    std::size_t swaps = 0;
};

/// One entry per k, ordered by ascending k.
struct SweepResult {
    std::vector<SweepEntry> per_k;
    std::size_t best_k = 0;
    ClusteringResult best;
    std::size_t total_swaps = 0;

    [[nodiscard]] const SweepEntry& at(std::size_t k) const {
        for (const auto& e : per_k)
            if (e.k == k) return e;
        throw std::out_of_range("no sweep entry for k=" + std::to_string(k));
    }
};

/// min(ceil(sqrt(n)) + 10, n - 1)
[[nodiscard]] inline std::size_t default_k_max(std::size_t n) {
    const auto root = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    return std::min(root + 10, n - 1);
}

/// Position with the largest removal loss (least harmful to delete); ties
/// go to the lowest position.
[[nodiscard]] inline std::size_t least_harmful_medoid(const OptimizerState& state) {
    const auto& loss = state.removal_loss();
    return static_cast<std::size_t>(std::max_element(loss.begin(), loss.end()) - loss.begin());
}

/// DynMSC: start from k_max random medoids, optimize with eager swaps, record
/// the result, drop the least harmful medoid and continue with the warm cache
/// down to k_min. best_k maximizes AMS, ties toward the smaller k.
[[nodiscard]] inline SweepResult dynmsc(const DissimilarityMatrix& matrix, std::size_t k_max, std::size_t k_min,
                                        std::uint64_t seed, const SwapOptions& options = {}) {
    const std::size_t n = matrix.size();
    if (k_min < 2 || k_min > k_max || k_max >= n) {
        throw std::invalid_argument("sweep range must satisfy 2 <= k_min <= k_max < n");
    }
    OptimizerState state(matrix, init_random(n, k_max, seed));
    SweepResult sweep;
    std::vector<ClusteringResult> runs;

    for (std::size_t k = k_max;; --k) {
        ClusteringResult stats;
        stats.history.push_back(state.ams());
        run_eager_swaps(state, options, stats);
        stats = detail::finish(state, std::move(stats));
        sweep.total_swaps += stats.swaps;
        sweep.per_k.push_back({k, stats.ams, stats.medoids, stats.swaps});
        runs.push_back(std::move(stats));
        if (k == k_min) break;
        state.remove_medoid(least_harmful_medoid(state));
    }

    std::reverse(sweep.per_k.begin(), sweep.per_k.end());
    std::reverse(runs.begin(), runs.end());
    std::size_t best = 0;
    for (std::size_t i = 1; i < sweep.per_k.size(); ++i)
        if (sweep.per_k[i].ams > sweep.per_k[best].ams) best = i;
    sweep.best_k = sweep.per_k[best].k;
    sweep.best = std::move(runs[best]);
    return sweep;
}

[[nodiscard]] inline SweepResult dynmsc(const DissimilarityMatrix& matrix, std::size_t k_max, std::uint64_t seed) {
    return dynmsc(matrix, k_max, 2, seed);
}

inline void write_sweep_csv(std::ostream& out, const SweepResult& sweep) {
    out << "k,ams\n";
    const auto old_precision = out.precision(17);
    for (const auto& e : sweep.per_k) out << e.k << ',' << e.ams << '\n';
    out.precision(old_precision);
}

}  // namespace msc
