#include "anpso/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "anpso/format.hpp"
#include "anpso/rng.hpp"

namespace anpso {

namespace {

std::vector<double> parse_line(const std::string& line, int line_no) {
  std::vector<double> fields;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    const std::size_t comma = line.find(',', pos);
    const std::string tok =
        line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw std::runtime_error("parse error at line " + std::to_string(line_no) +
                               ": non-numeric field '" + tok + "'");
    }
    // allow trailing whitespace only
    for (std::size_t k = used; k < tok.size(); ++k)
      if (!std::isspace(static_cast<unsigned char>(tok[k])))
        throw std::runtime_error("parse error at line " + std::to_string(line_no) +
                                 ": non-numeric field '" + tok + "'");
    if (std::isnan(v))
      throw std::runtime_error("parse error at line " + std::to_string(line_no) +
                               ": NaN value");
    fields.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return fields;
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

Dataset parse_impl(const std::string& raw_text, int expected_fields) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(raw_text);
  std::string line;
  int line_no = 0;
  int arity = expected_fields;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    auto fields = parse_line(line, line_no);
    if (arity < 0) arity = static_cast<int>(fields.size());
    if (static_cast<int>(fields.size()) != arity)
      throw std::runtime_error("parse error at line " + std::to_string(line_no) +
                               ": expected " + std::to_string(arity) +
                               " fields, got " + std::to_string(fields.size()));
    rows.push_back(std::move(fields));
  }
  if (rows.empty()) throw std::runtime_error("parse error: empty input");
  if (arity < 2) throw std::runtime_error("parse error: need at least 2 fields");

  Dataset ds;
  const int n = static_cast<int>(rows.size());
  const int k = arity - 1;
  ds.features.resize(n, k);
  ds.targets.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) ds.features(i, j) = rows[i][j];
    ds.targets(i) = rows[i][k];
  }
  return ds;
}

// Shortest decimal text that round-trips the value exactly.
}  // namespace

std::vector<double> Dataset::row(int i) const {
  std::vector<double> out(n_features());
  for (int j = 0; j < n_features(); ++j) out[j] = features(i, j);
  return out;
}

std::vector<double> Dataset::targets_vec() const {
  return {targets.data(), targets.data() + targets.size()};
}

Dataset parse_bupa(const std::string& raw_text) {
  Dataset ds = parse_impl(raw_text, 7);
  return ds;
}

Dataset parse_csv_last_target(const std::string& raw_text, int expected_fields) {
  return parse_impl(raw_text, expected_fields);
}

Dataset normalize(const Dataset& ds) {
  if (ds.normalized()) return ds;
  Dataset out = ds;
  out.normalization.resize(ds.n_features());
  for (int j = 0; j < ds.n_features(); ++j) {
    ColumnRange r;
    r.min = ds.features.col(j).minCoeff();
    r.max = ds.features.col(j).maxCoeff();
    r.degenerate = (r.max == r.min);
    if (r.degenerate) {
      out.features.col(j).setZero();
    } else {
      out.features.col(j) =
          (ds.features.col(j).array() - r.min) / (r.max - r.min);
    }
    out.normalization[j] = r;
  }
  return out;
}

Dataset denormalize(const Dataset& ds) {
  if (!ds.normalized()) return ds;
  Dataset out = ds;
  for (int j = 0; j < ds.n_features(); ++j) {
    const ColumnRange& r = ds.normalization[j];
    if (r.degenerate) {
      out.features.col(j).setConstant(r.min);
    } else {
      out.features.col(j) = ds.features.col(j).array() * (r.max - r.min) + r.min;
    }
  }
  out.normalization.clear();
  return out;
}

std::pair<Dataset, Dataset> split(const Dataset& ds, const SplitSpec& spec) {
  if (ds.n_samples() == 0) throw std::invalid_argument("split: empty dataset");
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0))
    throw std::invalid_argument("split: train_fraction must be in (0,1)");
  const int n = ds.n_samples();
  if (n < 2)
    throw std::invalid_argument("split: need at least 2 samples for non-empty partitions");

  int n_train = static_cast<int>(std::floor(spec.train_fraction * n));
  n_train = std::max(1, std::min(n - 1, n_train));

  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng(spec.seed);
  std::shuffle(idx.begin(), idx.end(), rng);

  auto take = [&](int begin, int count) {
    Dataset part;
    part.features.resize(count, ds.n_features());
    part.targets.resize(count);
    part.normalization = ds.normalization;
    for (int i = 0; i < count; ++i) {
      part.features.row(i) = ds.features.row(idx[begin + i]);
      part.targets(i) = ds.targets(idx[begin + i]);
    }
    return part;
  };
  return {take(0, n_train), take(n_train, n - n_train)};
}

std::string to_csv(const Dataset& ds) {
  std::string out;
  for (int i = 0; i < ds.n_samples(); ++i) {
    for (int j = 0; j < ds.n_features(); ++j) {
      out += format_double(ds.features(i, j));
      out += ',';
    }
    out += format_double(ds.targets(i));
    out += '\n';
  }
  return out;
}

std::string to_json(const Dataset& ds) {
  nlohmann::json j;
  j["features"] = nlohmann::json::array();
  for (int i = 0; i < ds.n_samples(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < ds.n_features(); ++c) row.push_back(ds.features(i, c));
    j["features"].push_back(std::move(row));
  }
  j["targets"] = ds.targets_vec();
  j["normalization"] = nlohmann::json::array();
  for (const auto& r : ds.normalization)
    j["normalization"].push_back(
        {{"min", r.min}, {"max", r.max}, {"degenerate", r.degenerate}});
  return j.dump(2);
}

Dataset dataset_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  Dataset ds;
  const auto& feats = j.at("features");
  const int n = static_cast<int>(feats.size());
  if (n == 0) throw std::runtime_error("dataset json: no samples");
  const int k = static_cast<int>(feats.at(0).size());
  ds.features.resize(n, k);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < k; ++c) ds.features(i, c) = feats.at(i).at(c).get<double>();
  const auto& tg = j.at("targets");
  if (static_cast<int>(tg.size()) != n)
    throw std::runtime_error("dataset json: targets/features size mismatch");
  ds.targets.resize(n);
  for (int i = 0; i < n; ++i) ds.targets(i) = tg.at(i).get<double>();
  if (j.contains("normalization")) {
    for (const auto& r : j.at("normalization")) {
      ColumnRange cr;
      cr.min = r.at("min").get<double>();
      cr.max = r.at("max").get<double>();
      cr.degenerate = r.at("degenerate").get<bool>();
      ds.normalization.push_back(cr);
    }
  }
  return ds;
}

}  // namespace anpso
