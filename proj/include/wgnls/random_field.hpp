#pragma once

#include <cstdint>

#include "wgnls/field.hpp"

namespace wgnls {

// Smooth, decaying random field: a Gaussian envelope in x times a few random
// low Fourier modes in x and y. Deterministic in (seed, index).
Field random_smooth_field(const Grid& grid, std::uint64_t seed,
                          std::uint64_t index);

}  // namespace wgnls
