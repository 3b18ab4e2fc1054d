#pragma once

#include <cstdint>

#include "anpso/dataset.hpp"

namespace anpso {

/// Seeded generator for a liver-panel regression benchmark with the same
/// shape as the UCI liver-disorders file: 6 integer or half-integer blood-test
/// style features and a {1,2} selector target. Two latent factors (organ
/// stress, alcohol intake) drive correlated features and a noisy nonlinear
/// class score, so the mapping is learnable but not separable. The class
/// balance is fixed at 58% selector = 2 by rank thresholding.
Dataset synthesize_liver_dataset(std::uint64_t seed, int n = 345);

}  // namespace anpso
