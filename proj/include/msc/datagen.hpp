#pragma once

// Seeded synthetic data used by the tests and the benchmark harness.

#include "msc/core.hpp"

#include <cstdint>
#include <vector>

namespace msc::datagen {

/// The four points 0, 1, 10, 11 on a line.
[[nodiscard]] inline std::vector<Point> line_points() { return {{0.0}, {1.0}, {10.0}, {11.0}}; }

/// n points uniform in the unit square.
[[nodiscard]] inline std::vector<Point> uniform_square(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Point> pts(n);
    for (auto& p : pts) p = {uniform_unit(rng), uniform_unit(rng)};
    return pts;
}

struct Blobs {
    std::vector<Point> points;
    std::vector<std::int64_t> labels;
};

/// Isotropic 2-d Gaussian blobs of standard deviation sigma around centers.
/// Points are assigned round-robin, then shuffled.
[[nodiscard]] inline Blobs gaussian_blobs(std::size_t n, const std::vector<Point>& centers, double sigma,
                                         std::uint64_t seed) {
    Rng rng(seed);
    Blobs b;
    b.points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto c = i % centers.size();
        Point p(centers[c].size());
        for (std::size_t d = 0; d < p.size(); ++d) p[d] = centers[c][d] + sigma * standard_normal(rng);
        b.points.push_back(std::move(p));
        b.labels.push_back(static_cast<std::int64_t>(c));
    }
    const auto perm = random_permutation(n, rng);
    Blobs out;
    out.points.resize(n);
    out.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.points[perm[i]] = std::move(b.points[i]);
        out.labels[perm[i]] = b.labels[i];
    }
    return out;
}

/// Four unit-variance blobs on the corners of a square with side `spacing`.
[[nodiscard]] inline Blobs four_blobs(std::size_t n, std::uint64_t seed, double spacing = 10.0) {
    return gaussian_blobs(n, {{0.0, 0.0}, {spacing, 0.0}, {0.0, spacing}, {spacing, spacing}}, 1.0, seed);
}

}  // namespace msc::datagen
