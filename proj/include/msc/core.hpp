#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <chrono>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace msc {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr std::size_t kNoMedoid = std::numeric_limits<std::size_t>::max();

/// Minimum gain in the silhouette sum for a swap to count as an improvement.
inline constexpr double kImprovementEps = 1e-12;

/// Raised when a dissimilarity matrix violates symmetry, zero diagonal or
/// non-negativity.
class matrix_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// a / b, with 0 when b is zero. Every call site has a <= b, so b == 0
/// implies a == 0 and the ratio collapses to the "silhouette is 1" case.
/// Division by +inf yields 0 as well.
[[nodiscard]] inline double safe_ratio(double a, double b) noexcept { return b > 0.0 ? a / b : 0.0; }

enum class Metric { euclidean, sq_euclidean, manhattan };

inline Metric parse_metric(const std::string& name) {
    if (name == "euclidean") return Metric::euclidean;
    if (name == "sq-euclidean" || name == "sqeuclidean") return Metric::sq_euclidean;
    if (name == "manhattan") return Metric::manhattan;
    throw std::invalid_argument("unknown metric '" + name + "'");
}

/// Dense symmetric n x n dissimilarities with zero diagonal. Immutable once
/// constructed; may be shared read-only between threads.
class DissimilarityMatrix {
  public:
    DissimilarityMatrix() = default;

    /// Validates and takes ownership of row-major values.
    DissimilarityMatrix(std::size_t n, std::vector<double> values, double symmetry_tol = 1e-9)
        : n_(n), values_(std::move(values)) {
        if (values_.size() != n_ * n_) {
            throw matrix_error("matrix has " + std::to_string(values_.size()) + " entries, expected " +
                               std::to_string(n_ * n_));
        }
        validate(symmetry_tol);
    }

    [[nodiscard]] std::size_t size() const noexcept { return n_; }

    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * n_ + j]; }

    [[nodiscard]] std::span<const double> row(std::size_t i) const noexcept {
        return {values_.data() + i * n_, n_};
    }

    [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }

    /// Matrix with every entry multiplied by factor (> 0).
    [[nodiscard]] DissimilarityMatrix scaled(double factor) const {
        if (!(factor > 0.0) || !std::isfinite(factor)) throw std::invalid_argument("scale factor must be positive");
        std::vector<double> v(values_);
        for (auto& x : v) x *= factor;
        return DissimilarityMatrix(n_, std::move(v));
    }

    /// Relabels points: entry (perm[i], perm[j]) of the result equals (i, j) here.
    [[nodiscard]] DissimilarityMatrix permuted(std::span<const std::size_t> perm) const {
        if (perm.size() != n_) throw std::invalid_argument("permutation length differs from matrix size");
        std::vector<double> v(n_ * n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) v[perm[i] * n_ + perm[j]] = (*this)(i, j);
        return DissimilarityMatrix(n_, std::move(v));
    }

  private:
    void validate(double tol) const {
        for (std::size_t i = 0; i < n_; ++i) {
            if ((*this)(i, i) != 0.0) throw matrix_error("non-zero diagonal at " + std::to_string(i));
            for (std::size_t j = 0; j < n_; ++j) {
                const double v = (*this)(i, j);
                if (!std::isfinite(v) || v < 0.0) {
                    throw matrix_error("entry (" + std::to_string(i) + "," + std::to_string(j) +
                                       ") is negative or not finite");
                }
                if (j > i) {
                    const double w = (*this)(j, i);
                    if (std::abs(v - w) > tol * std::max(1.0, std::abs(v))) {
                        throw matrix_error("asymmetric entries at (" + std::to_string(i) + "," + std::to_string(j) +
                                           ")");
                    }
                }
            }
        }
    }

    std::size_t n_ = 0;
    std::vector<double> values_;
};

using Point = std::vector<double>;

[[nodiscard]] inline double point_distance(std::span<const double> a, std::span<const double> b, Metric metric) {
    double acc = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) {
        const double diff = a[d] - b[d];
        acc += metric == Metric::manhattan ? std::abs(diff) : diff * diff;
    }
    return metric == Metric::euclidean ? std::sqrt(acc) : acc;
}

/// Pairwise dissimilarities of a point set. Requires n >= 3 and equal dimensions.
[[nodiscard]] inline DissimilarityMatrix build_matrix(const std::vector<Point>& points,
                                                      Metric metric = Metric::euclidean) {
    const std::size_t n = points.size();
    if (n < 3) throw std::invalid_argument("need at least 3 points, got " + std::to_string(n));
    const std::size_t dim = points.front().size();
    for (std::size_t i = 0; i < n; ++i) {
        if (points[i].size() != dim) {
            throw std::invalid_argument("point " + std::to_string(i) + " has dimension " +
                                        std::to_string(points[i].size()) + ", expected " + std::to_string(dim));
        }
        for (double x : points[i])
            if (!std::isfinite(x)) throw std::invalid_argument("point " + std::to_string(i) + " has a non-finite coordinate");
    }
    std::vector<double> v(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = point_distance(points[i], points[j], metric);
            v[i * n + j] = d;
            v[j * n + i] = d;
        }
    }
    return DissimilarityMatrix(n, std::move(v));
}

using MedoidSet = std::vector<std::size_t>;

/// Throws std::invalid_argument unless 2 <= k < n.
inline void check_k(std::size_t n, std::size_t k) {
    if (k < 2 || k >= n) {
        throw std::invalid_argument("k must satisfy 2 <= k < n (k=" + std::to_string(k) + ", n=" + std::to_string(n) +
                                    ")");
    }
}

/// Throws std::invalid_argument unless medoids is a valid medoid set for n points.
inline void check_medoids(std::size_t n, std::span<const std::size_t> medoids) {
    check_k(n, medoids.size());
    std::vector<bool> seen(n, false);
    for (std::size_t m : medoids) {
        if (m >= n) throw std::invalid_argument("medoid index " + std::to_string(m) + " out of range");
        if (seen[m]) throw std::invalid_argument("duplicate medoid index " + std::to_string(m));
        seen[m] = true;
    }
}

/// Nearest, second and third nearest medoid of one point. Positions index
/// into the medoid set; n3 is kNoMedoid and d3 is +inf when k == 2.
struct NeighborRecord {
    std::size_t n1 = kNoMedoid;
    std::size_t n2 = kNoMedoid;
    std::size_t n3 = kNoMedoid;
    double d1 = kInfinity;
    double d2 = kInfinity;
    double d3 = kInfinity;

    /// Offers medoid position pos at distance d. Keeps the triple ordered by
    /// (distance, position), so equal distances favor the lower position.
    void offer(std::size_t pos, double d) noexcept {
        if (d < d1 || (d == d1 && pos < n1)) {
            n3 = n2, d3 = d2;
            n2 = n1, d2 = d1;
            n1 = pos, d1 = d;
        } else if (d < d2 || (d == d2 && pos < n2)) {
            n3 = n2, d3 = d2;
            n2 = pos, d2 = d;
        } else if (d < d3 || (d == d3 && pos < n3)) {
            n3 = pos, d3 = d;
        }
    }

    [[nodiscard]] bool references(std::size_t pos) const noexcept { return n1 == pos || n2 == pos || n3 == pos; }

    friend bool operator==(const NeighborRecord&, const NeighborRecord&) = default;
};

/// Scans all medoids for point o.
[[nodiscard]] inline NeighborRecord nearest_three(const DissimilarityMatrix& matrix, std::span<const std::size_t> medoids,
                                                  std::size_t o) {
    NeighborRecord rec;
    const auto row = matrix.row(o);
    for (std::size_t pos = 0; pos < medoids.size(); ++pos) rec.offer(pos, row[medoids[pos]]);
    return rec;
}

/// Nearest-medoid position for every point.
[[nodiscard]] inline std::vector<std::size_t> assign_labels(const DissimilarityMatrix& matrix,
                                                            std::span<const std::size_t> medoids) {
    std::vector<std::size_t> labels(matrix.size());
    for (std::size_t o = 0; o < matrix.size(); ++o) labels[o] = nearest_three(matrix, medoids, o).n1;
    return labels;
}

/// Seeded generator. std::mt19937_64 is fully specified by the standard;
/// draws go through uniform_index rather than std::uniform_int_distribution,
/// whose output differs between standard libraries.
using Rng = std::mt19937_64;

/// Uniform integer in [0, bound) by rejection sampling.
[[nodiscard]] inline std::uint64_t uniform_index(Rng& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

/// Uniform double in [0, 1) from the top 53 bits.
[[nodiscard]] inline double uniform_unit(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Standard normal variate (Box-Muller, one value per call).
[[nodiscard]] inline double standard_normal(Rng& rng) {
    double u1;
    do {
        u1 = uniform_unit(rng);
    } while (u1 <= 0.0);
    const double u2 = uniform_unit(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

/// Uniform random permutation of 0..n-1 (Fisher-Yates).
[[nodiscard]] inline std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[uniform_index(rng, i)]);
    return perm;
}

/// k distinct indices drawn uniformly without replacement, in draw order.
[[nodiscard]] inline MedoidSet init_random(std::size_t n, std::size_t k, std::uint64_t seed) {
    check_k(n, k);
    Rng rng(seed);
    // partial Fisher-Yates over an index array
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + uniform_index(rng, n - i)]);
    pool.resize(k);
    return pool;
}

/// Greedy PAM BUILD. The first medoid minimizes the total distance; each
/// further medoid maximizes the summed reduction of nearest distances.
/// Ties go to the lowest point index.
[[nodiscard]] inline MedoidSet init_build(const DissimilarityMatrix& matrix, std::size_t k) {
    const std::size_t n = matrix.size();
    check_k(n, k);
    MedoidSet medoids;
    medoids.reserve(k);
    std::vector<bool> chosen(n, false);

    std::size_t first = 0;
    double best_total = kInfinity;
    for (std::size_t c = 0; c < n; ++c) {
        const auto row = matrix.row(c);
        const double total = std::accumulate(row.begin(), row.end(), 0.0);
        if (total < best_total) best_total = total, first = c;
    }
    medoids.push_back(first);
    chosen[first] = true;
    std::vector<double> nearest(matrix.row(first).begin(), matrix.row(first).end());

    while (medoids.size() < k) {
        std::size_t best = kNoMedoid;
        double best_gain = -1.0;
        for (std::size_t c = 0; c < n; ++c) {
            if (chosen[c]) continue;
            const auto row = matrix.row(c);
            double gain = 0.0;
            for (std::size_t o = 0; o < n; ++o) gain += std::max(0.0, nearest[o] - row[o]);
            if (gain > best_gain) best_gain = gain, best = c;
        }
        medoids.push_back(best);
        chosen[best] = true;
        const auto row = matrix.row(best);
        for (std::size_t o = 0; o < n; ++o) nearest[o] = std::min(nearest[o], row[o]);
    }
    return medoids;
}

/// A proposed exchange of the medoid at medoid_position for a non-medoid.
/// gain is the change in the objective sum (positive is better).
struct SwapCandidate {
    std::size_t medoid_position = kNoMedoid;
    std::size_t replacement = kNoMedoid;
    double gain = -kInfinity;
};

/// Candidate order shared by all steepest-descent optimizers: gains within
/// kImprovementEps are ties, broken toward the lower medoid position and then
/// the lower replacement index.
[[nodiscard]] inline bool improves_on(const SwapCandidate& cand, const SwapCandidate& best) noexcept {
    if (best.medoid_position == kNoMedoid) return true;
    if (cand.gain > best.gain + kImprovementEps) return true;
    if (cand.gain < best.gain - kImprovementEps) return false;
    if (cand.medoid_position != best.medoid_position) return cand.medoid_position < best.medoid_position;
    return cand.replacement < best.replacement;
}

/// Controls shared by the swap-based optimizers.
struct SwapOptions {
    std::size_t max_iter = 1000;
    /// Optional wall-clock budget, checked between iterations.
    std::optional<std::chrono::steady_clock::time_point> deadline;

    [[nodiscard]] bool expired() const { return deadline && std::chrono::steady_clock::now() >= *deadline; }
};

/// Output of every optimizer. labels[o] is the position of o's nearest medoid.
struct ClusteringResult {
    MedoidSet medoids;
    std::vector<std::size_t> labels;
    double ams = 0.0;
    std::optional<double> asw;
    std::size_t swaps = 0;
    std::size_t iterations = 0;
    bool converged = true;
    bool timed_out = false;
    /// Objective (mean) at the start and after every applied swap.
    std::vector<double> history;
    /// Inner-loop point visits spent scanning swap candidates.
    std::uint64_t inner_visits = 0;
};

}  // namespace msc
