#pragma once

// Algorithm selection, optional shuffling and multi-restart execution.

#include "msc/core.hpp"
#include "msc/fastmsc.hpp"
#include "msc/naive.hpp"
#include "msc/silhouette.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace msc {

enum class Algorithm { pamsil, pammedsil, fastmsc, fastermsc };

inline Algorithm parse_algorithm(const std::string& name) {
    if (name == "pamsil") return Algorithm::pamsil;
    if (name == "pammedsil") return Algorithm::pammedsil;
    if (name == "fastmsc") return Algorithm::fastmsc;
    if (name == "fastermsc") return Algorithm::fastermsc;
    throw std::invalid_argument("unknown algorithm '" + name + "'");
}

inline std::string algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::pamsil: return "pamsil";
        case Algorithm::pammedsil: return "pammedsil";
        case Algorithm::fastmsc: return "fastmsc";
        case Algorithm::fastermsc: return "fastermsc";
    }
    return "?";
}

enum class Init { random, build };

inline Init parse_init(const std::string& name) {
    if (name == "random") return Init::random;
    if (name == "build") return Init::build;
    throw std::invalid_argument("unknown init '" + name + "'");
}

[[nodiscard]] inline ClusteringResult run_algorithm(Algorithm algo, const DissimilarityMatrix& matrix, MedoidSet initial,
                                                    const SwapOptions& options = {}) {
    switch (algo) {
        case Algorithm::pamsil: return pamsil(matrix, std::move(initial), options);
        case Algorithm::pammedsil: return pammedsil(matrix, std::move(initial), options);
        case Algorithm::fastmsc: return fastmsc(matrix, std::move(initial), options);
        case Algorithm::fastermsc: return fastermsc(matrix, std::move(initial), options);
    }
    throw std::logic_error("unhandled algorithm");
}

struct RunSpec {
    Algorithm algorithm = Algorithm::fastermsc;
    std::size_t k = 2;
    Init init = Init::random;
    std::uint64_t seed = 0;
    std::size_t restarts = 10;
    bool shuffle = false;
    bool compute_asw = false;
    SwapOptions options;
};

/// One restart. With shuffle, the points are relabeled by a permutation
/// drawn from seed before optimizing and the result is mapped back.
[[nodiscard]] inline ClusteringResult run_once(const DissimilarityMatrix& matrix, const RunSpec& spec, std::uint64_t seed) {
    const std::size_t n = matrix.size();
    auto initial = [&](const DissimilarityMatrix& m) {
        return spec.init == Init::build ? init_build(m, spec.k) : init_random(n, spec.k, seed);
    };
    if (!spec.shuffle) return run_algorithm(spec.algorithm, matrix, initial(matrix), spec.options);

    Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    const auto perm = random_permutation(n, rng);
    std::vector<std::size_t> inverse(n);
    for (std::size_t i = 0; i < n; ++i) inverse[perm[i]] = i;
    const auto shuffled = matrix.permuted(perm);
    auto r = run_algorithm(spec.algorithm, shuffled, initial(shuffled), spec.options);
    for (auto& m : r.medoids) m = inverse[m];
    std::vector<std::size_t> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = r.labels[perm[i]];
    r.labels = std::move(labels);
    return r;
}

/// Worker cap from MSC_THREADS, else the hardware concurrency.
[[nodiscard]] inline std::size_t worker_count() {
    if (const char* env = std::getenv("MSC_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs restarts with seeds seed+0 .. seed+restarts-1 and keeps the best
/// (max ASW for pamsil, max AMS otherwise; ties toward the lower restart).
/// The chosen result does not depend on the number of workers.
[[nodiscard]] inline ClusteringResult best_of_restarts(const DissimilarityMatrix& matrix, const RunSpec& spec,
                                                       std::size_t workers = worker_count()) {
    check_k(matrix.size(), spec.k);
    const std::size_t restarts = std::max<std::size_t>(1, spec.init == Init::build && !spec.shuffle ? 1 : spec.restarts);
    std::vector<ClusteringResult> results(restarts);
    workers = std::clamp<std::size_t>(workers, 1, restarts);
    if (workers == 1) {
        for (std::size_t r = 0; r < restarts; ++r) results[r] = run_once(matrix, spec, spec.seed + r);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t r = w; r < restarts; r += workers) results[r] = run_once(matrix, spec, spec.seed + r);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    auto quality = [&](const ClusteringResult& r) { return spec.algorithm == Algorithm::pamsil ? *r.asw : r.ams; };
    std::size_t best = 0;
    for (std::size_t r = 1; r < restarts; ++r)
        if (quality(results[r]) > quality(results[best])) best = r;
    auto out = std::move(results[best]);
    if (spec.compute_asw && !out.asw) out.asw = silhouette(matrix, out.labels).mean;
    return out;
}

}  // namespace msc
