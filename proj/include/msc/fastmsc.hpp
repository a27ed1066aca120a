#pragma once

#include "msc/core.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace msc {

/// Change in one point's medoid silhouette when the medoid at position
/// removed is replaced by a candidate at distance d_oj. Only the cached
/// record is consulted, so this is O(1).
[[nodiscard]] inline double swap_delta(const NeighborRecord& rec, std::size_t removed, double d_oj) noexcept {
    const double old_ratio = safe_ratio(rec.d1, rec.d2);
    if (removed == rec.n1) {
        if (d_oj < rec.d2) return old_ratio - safe_ratio(d_oj, rec.d2);
        if (d_oj < rec.d3) return old_ratio - safe_ratio(rec.d2, d_oj);
        return old_ratio - safe_ratio(rec.d2, rec.d3);
    }
    if (removed == rec.n2) {
        if (d_oj < rec.d1) return old_ratio - safe_ratio(d_oj, rec.d1);
        if (d_oj < rec.d3) return old_ratio - safe_ratio(rec.d1, d_oj);
        return old_ratio - safe_ratio(rec.d1, rec.d3);
    }
    if (d_oj < rec.d1) return old_ratio - safe_ratio(d_oj, rec.d1);
    if (d_oj < rec.d2) return old_ratio - safe_ratio(rec.d1, d_oj);
    return 0.0;
}

/// Change in the silhouette sum if each medoid were deleted and its points
/// fell back to their next-nearest medoids. One pass over the cache.
[[nodiscard]] inline std::vector<double> removal_losses(std::span<const NeighborRecord> cache, std::size_t k) {
    std::vector<double> loss(k, 0.0);
    for (const auto& r : cache) {
        const double ratio = safe_ratio(r.d1, r.d2);
        loss[r.n1] += ratio - safe_ratio(r.d2, r.d3);
        loss[r.n2] += ratio - safe_ratio(r.d1, r.d3);
    }
    return loss;
}

/// Swap-search state: the medoids, per-point neighbor cache, removal losses
/// and the running silhouette sum. Single owner; the matrix it refers to
/// must outlive it.
class OptimizerState {
  public:
    OptimizerState(const DissimilarityMatrix& matrix, MedoidSet medoids)
        : matrix_(&matrix), medoids_(std::move(medoids)), is_medoid_(matrix.size(), false) {
        check_medoids(matrix.size(), medoids_);
        for (std::size_t m : medoids_) is_medoid_[m] = true;
        cache_.resize(matrix.size());
        for (std::size_t o = 0; o < matrix.size(); ++o) cache_[o] = nearest_three(matrix, medoids_, o);
        refresh_totals();
    }

    [[nodiscard]] const DissimilarityMatrix& matrix() const noexcept { return *matrix_; }
    [[nodiscard]] std::size_t n() const noexcept { return matrix_->size(); }
    [[nodiscard]] std::size_t k() const noexcept { return medoids_.size(); }
    [[nodiscard]] const MedoidSet& medoids() const noexcept { return medoids_; }
    [[nodiscard]] bool is_medoid(std::size_t x) const noexcept { return is_medoid_[x]; }
    [[nodiscard]] const std::vector<NeighborRecord>& cache() const noexcept { return cache_; }
    [[nodiscard]] const std::vector<double>& removal_loss() const noexcept { return removal_loss_; }
    [[nodiscard]] double ams_sum() const noexcept { return ams_sum_; }
    [[nodiscard]] double ams() const noexcept { return ams_sum_ / static_cast<double>(n()); }

    /// Points whose record needed a full rescan during the last update.
    [[nodiscard]] std::size_t last_rescans() const noexcept { return last_rescans_; }

    /// Replaces medoids()[position] by new_medoid and refreshes the caches.
    /// A record is rescanned only when the replaced medoid was among its
    /// three nearest; otherwise the new medoid is merged into the triple.
    void apply_swap(std::size_t position, std::size_t new_medoid) {
        if (position >= k()) throw std::out_of_range("medoid position out of range");
        if (new_medoid >= n() || is_medoid_[new_medoid]) throw std::invalid_argument("replacement must be a non-medoid");
        is_medoid_[medoids_[position]] = false;
        is_medoid_[new_medoid] = true;
        medoids_[position] = new_medoid;

        last_rescans_ = 0;
        const auto column = matrix_->row(new_medoid);
        for (std::size_t o = 0; o < n(); ++o) {
            auto& rec = cache_[o];
            if (rec.references(position)) {
                rec = nearest_three(*matrix_, medoids_, o);
                ++last_rescans_;
            } else {
                rec.offer(position, column[o]);
            }
        }
        refresh_totals();
    }

    /// Deletes medoids()[position]; later positions shift down by one.
    void remove_medoid(std::size_t position) {
        if (k() <= 2) throw std::invalid_argument("cannot remove a medoid when k <= 2");
        if (position >= k()) throw std::out_of_range("medoid position out of range");
        is_medoid_[medoids_[position]] = false;
        medoids_.erase(medoids_.begin() + static_cast<std::ptrdiff_t>(position));

        last_rescans_ = 0;
        auto shift = [position](std::size_t& p) {
            if (p != kNoMedoid && p > position) --p;
        };
        for (std::size_t o = 0; o < n(); ++o) {
            auto& rec = cache_[o];
            if (rec.references(position)) {
                rec = nearest_three(*matrix_, medoids_, o);
                ++last_rescans_;
            } else {
                shift(rec.n1);
                shift(rec.n2);
                shift(rec.n3);
            }
        }
        refresh_totals();
    }

    /// Nearest-medoid positions read from the cache.
    [[nodiscard]] std::vector<std::size_t> labels() const {
        std::vector<std::size_t> out(n());
        for (std::size_t o = 0; o < n(); ++o) out[o] = cache_[o].n1;
        return out;
    }

    /// Empty when cache, removal losses and silhouette sum all agree with a
    /// from-scratch recomputation (tolerance 1e-9); otherwise one message per
    /// discrepancy.
    [[nodiscard]] std::vector<std::string> audit(double tol = 1e-9) const {
        std::vector<std::string> errors;
        double sum = 0.0;
        for (std::size_t o = 0; o < n(); ++o) {
            const auto fresh = nearest_three(*matrix_, medoids_, o);
            if (!(fresh == cache_[o])) errors.push_back("stale neighbor record for point " + std::to_string(o));
            sum += 1.0 - safe_ratio(fresh.d1, fresh.d2);
        }
        const auto loss = removal_losses(cache_, k());
        for (std::size_t i = 0; i < k(); ++i)
            if (std::abs(loss[i] - removal_loss_[i]) > tol)
                errors.push_back("removal loss mismatch at medoid position " + std::to_string(i));
        if (std::abs(sum - ams_sum_) > tol) errors.push_back("silhouette sum mismatch");
        return errors;
    }

  private:
    void refresh_totals() {
        removal_loss_ = removal_losses(cache_, k());
        double sum = 0.0;
        for (const auto& r : cache_) sum += 1.0 - safe_ratio(r.d1, r.d2);
        ams_sum_ = sum;
    }

    const DissimilarityMatrix* matrix_;
    MedoidSet medoids_;
    std::vector<bool> is_medoid_;
    std::vector<NeighborRecord> cache_;
    std::vector<double> removal_loss_;
    double ams_sum_ = 0.0;
    std::size_t last_rescans_ = 0;
};

inline void update_caches_after_swap(OptimizerState& state, std::size_t position, std::size_t new_medoid) {
    state.apply_swap(position, new_medoid);
}

inline void remove_medoid(OptimizerState& state, std::size_t position) { state.remove_medoid(position); }

/// Per-medoid totals for making candidate a medoid. totals[i] holds the
/// removal loss of position i plus its correction terms; the gain of the
/// swap (i, candidate) is totals[i] + addition_gain.
struct CandidateEvaluation {
    std::vector<double> totals;
    double addition_gain = 0.0;

    [[nodiscard]] double gain(std::size_t position) const { return totals[position] + addition_gain; }
};

/// One O(n) pass over the cache for a non-medoid candidate. acc is reused
/// between calls to avoid reallocation.
inline double accumulate_candidate(const OptimizerState& state, std::size_t candidate, std::vector<double>& acc) {
    const auto& cache = state.cache();
    const auto dist = state.matrix().row(candidate);
    acc.assign(state.removal_loss().begin(), state.removal_loss().end());
    double add = 0.0;
    for (std::size_t o = 0; o < cache.size(); ++o) {
        const auto& r = cache[o];
        const double doj = dist[o];
        if (doj < r.d1) {
            add += safe_ratio(r.d1, r.d2) - safe_ratio(doj, r.d1);
            acc[r.n1] += safe_ratio(doj, r.d1) + safe_ratio(r.d2, r.d3) - safe_ratio(r.d1 + doj, r.d2);
            acc[r.n2] += safe_ratio(r.d1, r.d3) - safe_ratio(r.d1, r.d2);
        } else if (doj < r.d2) {
            add += safe_ratio(r.d1, r.d2) - safe_ratio(r.d1, doj);
            acc[r.n1] += safe_ratio(r.d1, doj) + safe_ratio(r.d2, r.d3) - safe_ratio(r.d1 + doj, r.d2);
            acc[r.n2] += safe_ratio(r.d1, r.d3) - safe_ratio(r.d1, r.d2);
        } else if (doj < r.d3) {
            acc[r.n1] += safe_ratio(r.d2, r.d3) - safe_ratio(r.d2, doj);
            acc[r.n2] += safe_ratio(r.d1, r.d3) - safe_ratio(r.d1, doj);
        }
    }
    return add;
}

[[nodiscard]] inline CandidateEvaluation evaluate_candidate(const OptimizerState& state, std::size_t candidate) {
    CandidateEvaluation ev;
    ev.addition_gain = accumulate_candidate(state, candidate, ev.totals);
    return ev;
}

namespace detail {

/// Best medoid position for one candidate under the shared tie order.
inline SwapCandidate best_for_candidate(std::span<const double> totals, double addition_gain, std::size_t candidate) {
    SwapCandidate best;
    for (std::size_t i = 0; i < totals.size(); ++i) {
        const SwapCandidate cand{i, candidate, totals[i] + addition_gain};
        if (improves_on(cand, best)) best = cand;
    }
    return best;
}

inline ClusteringResult finish(const OptimizerState& state, ClusteringResult result) {
    result.medoids = state.medoids();
    result.labels = state.labels();
    result.ams = state.ams();
    return result;
}

}  // namespace detail

/// Steepest swap over all (medoid, non-medoid) pairs, or nothing when no
/// swap gains more than kImprovementEps. Costs (n-k) * n inner visits,
/// added to *visits when given.
[[nodiscard]] inline std::optional<SwapCandidate> find_best_swap(const OptimizerState& state,
                                                                 std::uint64_t* visits = nullptr) {
    SwapCandidate best;
    std::vector<double> acc;
    for (std::size_t j = 0; j < state.n(); ++j) {
        if (state.is_medoid(j)) continue;
        const double add = accumulate_candidate(state, j, acc);
        if (visits) *visits += state.n();
        const auto cand = detail::best_for_candidate(acc, add, j);
        if (improves_on(cand, best)) best = cand;
    }
    if (best.medoid_position == kNoMedoid || best.gain <= kImprovementEps) return std::nullopt;
    return best;
}

/// FastMSC: steepest-descent swaps with O(n^2) candidate scans. Follows the
/// same swap sequence as pammedsil from the same start.
[[nodiscard]] inline ClusteringResult fastmsc(const DissimilarityMatrix& matrix, MedoidSet initial,
                                              const SwapOptions& options = {}) {
    OptimizerState state(matrix, std::move(initial));
    ClusteringResult result;
    result.converged = false;
    result.history.push_back(state.ams());
    while (result.iterations < options.max_iter) {
        if (options.expired()) {
            result.timed_out = true;
            break;
        }
        ++result.iterations;
        const auto best = find_best_swap(state, &result.inner_visits);
        if (!best) {
            result.converged = true;
            break;
        }
        state.apply_swap(best->medoid_position, best->replacement);
        ++result.swaps;
        result.history.push_back(state.ams());
    }
    return detail::finish(state, std::move(result));
}

/// Eager first-improvement passes over the non-medoids, in index order, on an
/// existing state. Stops once a full cycle since the last swap found nothing.
/// Counters and history are appended to stats; iterations counts passes.
inline void run_eager_swaps(OptimizerState& state, const SwapOptions& options, ClusteringResult& stats) {
    stats.converged = false;
    std::size_t last_swap = kNoMedoid;
    std::vector<double> acc;
    std::size_t passes = 0;
    while (passes < options.max_iter) {
        if (options.expired()) {
            stats.timed_out = true;
            return;
        }
        ++passes;
        ++stats.iterations;
        const std::size_t swaps_before = stats.swaps;
        bool cycled = false;
        for (std::size_t j = 0; j < state.n(); ++j) {
            if (j == last_swap) {
                cycled = true;
                break;
            }
            if (state.is_medoid(j)) continue;
            const double add = accumulate_candidate(state, j, acc);
            stats.inner_visits += state.n();
            const auto best = detail::best_for_candidate(acc, add, j);
            if (best.gain > kImprovementEps) {
                state.apply_swap(best.medoid_position, j);
                ++stats.swaps;
                stats.history.push_back(state.ams());
                last_swap = j;
            }
        }
        if (cycled || stats.swaps == swaps_before) {
            stats.converged = true;
            return;
        }
    }
}

/// FasterMSC: eager swapping. Result depends on point order.
[[nodiscard]] inline ClusteringResult fastermsc(const DissimilarityMatrix& matrix, MedoidSet initial,
                                                const SwapOptions& options = {}) {
    OptimizerState state(matrix, std::move(initial));
    ClusteringResult result;
    result.history.push_back(state.ams());
    run_eager_swaps(state, options, result);
    return detail::finish(state, std::move(result));
}

}  // namespace msc
