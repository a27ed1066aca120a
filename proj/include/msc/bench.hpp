#pragma once

// Timing grid over (algorithm, n, k). Each cell uses uniform points in the
// unit square and a shared random start, so all algorithms see the same input.

#include "msc/core.hpp"
#include "msc/datagen.hpp"
#include "msc/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace msc {

struct BenchConfig {
    std::vector<std::size_t> sizes{500, 1000};
    std::vector<std::size_t> ks{5, 10, 20};
    std::vector<Algorithm> algorithms{Algorithm::pammedsil, Algorithm::fastmsc, Algorithm::fastermsc};
    std::size_t repeats = 3;
    bool warmup = true;
    /// Per-cell wall-clock budget in seconds.
    double cell_budget = 120.0;
    std::uint64_t seed = 0;
};

struct BenchRow {
    Algorithm algorithm;
    std::size_t n = 0;
    std::size_t k = 0;
    std::optional<double> seconds;  // empty on timeout
    std::size_t swaps = 0;
    std::size_t iterations = 0;
};

namespace detail {

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const auto mid = v.size() / 2;
    return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

}  // namespace detail

/// Median-of-repeats timing of one cell; empty seconds when the budget ran out.
[[nodiscard]] inline BenchRow bench_cell(Algorithm algo, const DissimilarityMatrix& matrix, const MedoidSet& start,
                                         std::size_t repeats, bool warmup, double budget) {
    using clock = std::chrono::steady_clock;
    BenchRow row{algo, matrix.size(), start.size(), std::nullopt, 0, 0};
    SwapOptions options;
    options.deadline = clock::now() + std::chrono::duration_cast<clock::duration>(std::chrono::duration<double>(budget));
    std::vector<double> times;
    const std::size_t runs = std::max<std::size_t>(1, repeats) + (warmup ? 1 : 0);
    for (std::size_t r = 0; r < runs; ++r) {
        const auto t0 = clock::now();
        const auto result = run_algorithm(algo, matrix, start, options);
        const double secs = std::chrono::duration<double>(clock::now() - t0).count();
        if (result.timed_out) return row;
        row.swaps = result.swaps;
        row.iterations = result.iterations;
        if (!(warmup && r == 0)) times.push_back(secs);
    }
    row.seconds = detail::median(std::move(times));
    return row;
}

/// Rows in (n, k, algorithm) grid order.
[[nodiscard]] inline std::vector<BenchRow> run_bench(const BenchConfig& config) {
    std::vector<BenchRow> rows;
    for (std::size_t n : config.sizes) {
        const auto matrix = build_matrix(datagen::uniform_square(n, config.seed + n));
        for (std::size_t k : config.ks) {
            const auto start = init_random(n, k, config.seed + k);
            for (auto algo : config.algorithms)
                rows.push_back(bench_cell(algo, matrix, start, config.repeats, config.warmup, config.cell_budget));
        }
    }
    return rows;
}

inline void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
    out << "algo,n,k,seconds,swaps,iters\n";
    for (const auto& r : rows) {
        out << algorithm_name(r.algorithm) << ',' << r.n << ',' << r.k << ',';
        if (r.seconds)
            out << *r.seconds;
        else
            out << "timeout";
        out << ',' << r.swaps << ',' << r.iterations << '\n';
    }
}

}  // namespace msc
