#pragma once

#include "msc/core.hpp"
#include "msc/datagen.hpp"

#include <cstdint>

namespace msc::test {

/// Points 0, 1, 10, 11 on a line.
inline DissimilarityMatrix line_matrix() { return build_matrix(datagen::line_points()); }

/// Uniform points in the unit square, Euclidean.
inline DissimilarityMatrix random_instance(std::size_t n, std::uint64_t seed) {
    return build_matrix(datagen::uniform_square(n, seed));
}

}  // namespace msc::test
