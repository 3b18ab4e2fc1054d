#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace anpso {

struct ColumnRange {
  double min = 0.0;
  double max = 0.0;
  bool degenerate = false;  // constant column, scaled to all zeros
};

/// Immutable once constructed: samples in rows, the regression target in a
/// separate vector. `normalization` is empty until normalize() has run.
struct Dataset {
  Eigen::MatrixXd features;
  Eigen::VectorXd targets;
  std::vector<ColumnRange> normalization;

  int n_samples() const { return static_cast<int>(features.rows()); }
  int n_features() const { return static_cast<int>(features.cols()); }
  bool normalized() const { return !normalization.empty(); }

  std::vector<double> row(int i) const;
  std::vector<double> targets_vec() const;
};

struct SplitSpec {
  double train_fraction = 0.7;
  std::uint64_t seed = 0;
};

/// Parses the UCI liver-disorders format: 7 comma-separated numeric fields
/// per line, fields 1..6 are inputs and field 7 the target. Whitespace-only
/// lines are skipped. Malformed lines raise with their 1-based line number.
Dataset parse_bupa(const std::string& raw_text);

/// Generic escape hatch: every line has the same number of numeric fields,
/// last one is the target. expected_fields < 0 infers the arity from the
/// first data line.
Dataset parse_csv_last_target(const std::string& raw_text, int expected_fields = -1);

/// Min-max scales every feature column to [0,1] and records the (min,max)
/// pairs. Constant columns become all-zero with the degenerate flag set.
/// Already-normalized datasets are returned unchanged.
Dataset normalize(const Dataset& ds);

/// Inverse of normalize using the recorded column ranges.
Dataset denormalize(const Dataset& ds);

/// Seeded shuffle split; train size = floor(fraction * n), both partitions
/// guaranteed non-empty. Identical spec -> identical split.
std::pair<Dataset, Dataset> split(const Dataset& ds, const SplitSpec& spec);

std::string to_csv(const Dataset& ds);
std::string to_json(const Dataset& ds);
Dataset dataset_from_json(const std::string& text);

}  // namespace anpso
