#pragma once

#include <vector>

namespace anpso {

/// Mean squared error between predictions and targets. Throws on length
/// mismatch or empty input.
double mse(const std::vector<double>& pred, const std::vector<double>& target);

/// Root mean squared error (sqrt of mse).
double rmse(const std::vector<double>& pred, const std::vector<double>& target);

/// Pearson correlation coefficient. A constant vector makes the
/// coefficient undefined; 0 is returned and *degenerate set when provided.
double r_value(const std::vector<double>& pred, const std::vector<double>& target,
               bool* degenerate = nullptr);

}  // namespace anpso
