#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <set>
#include <string>

#include "anpso/dataset.hpp"
#include "anpso/format.hpp"
#include "anpso/metrics.hpp"
#include "anpso/synth.hpp"

using namespace anpso;

namespace {

const char* kTinyBupa =
    "85,92,45,27,31,0.0,1\n"
    "85,64,59,32,23,0.0,2\n"
    "86,54,33,16,54,0.0,2\n"
    "91,78,34,24,36,0.0,2\n"
    "87,70,12,28,10,0.5,1\n";

}  // namespace

TEST_CASE("parse_bupa reads fields and targets") {
  const Dataset ds = parse_bupa(kTinyBupa);
  CHECK(ds.n_samples() == 5);
  CHECK(ds.n_features() == 6);
  CHECK(ds.features(0, 0) == doctest::Approx(85.0));
  CHECK(ds.features(4, 5) == doctest::Approx(0.5));
  CHECK(ds.targets[0] == doctest::Approx(1.0));
  CHECK(ds.targets[2] == doctest::Approx(2.0));
}

TEST_CASE("parse_bupa skips blank lines and reports bad line numbers") {
  const std::string with_blank =
      "85,92,45,27,31,0.0,1\n"
      "\n"
      "86,54,33,16,54,0.0,2\n";
  CHECK(parse_bupa(with_blank).n_samples() == 2);

  const std::string bad =
      "85,92,45,27,31,0.0,1\n"
      "85,64,59,32,23,0.0,2\n"
      "86,54,oops,16,54,0.0,2\n";
  CHECK_THROWS_WITH_AS(parse_bupa(bad),
                       doctest::Contains("line 3"), std::runtime_error);

  const std::string short_line =
      "85,92,45,27,31,0.0,1\n"
      "85,64,59\n";
  CHECK_THROWS_WITH_AS(parse_bupa(short_line),
                       doctest::Contains("line 2"), std::runtime_error);
}

TEST_CASE("parse_csv_last_target infers arity and enforces it") {
  const Dataset ds = parse_csv_last_target("1,2,3\n4,5,6\n");
  CHECK(ds.n_samples() == 2);
  CHECK(ds.n_features() == 2);
  CHECK(ds.targets[1] == doctest::Approx(6.0));
  CHECK_THROWS_AS(parse_csv_last_target("1,2,3\n4,5\n"), std::runtime_error);
  CHECK_THROWS_AS(parse_csv_last_target(""), std::runtime_error);
  CHECK_THROWS_AS(parse_csv_last_target("7\n"), std::runtime_error);
}

TEST_CASE("normalize maps columns to [0,1] and flags constant columns") {
  Dataset ds = parse_csv_last_target(
      "0,5,1\n"
      "10,5,2\n"
      "5,5,3\n");
  const Dataset nd = normalize(ds);
  CHECK(nd.normalized());
  CHECK(nd.features(0, 0) == doctest::Approx(0.0));
  CHECK(nd.features(1, 0) == doctest::Approx(1.0));
  CHECK(nd.features(2, 0) == doctest::Approx(0.5));
  // Constant column scaled to zeros and flagged.
  CHECK(nd.features(0, 1) == doctest::Approx(0.0));
  CHECK(nd.features(2, 1) == doctest::Approx(0.0));
  CHECK(nd.normalization[1].degenerate);
  CHECK_FALSE(nd.normalization[0].degenerate);
  // Targets pass through untouched.
  CHECK(nd.targets[2] == doctest::Approx(3.0));
  // Idempotent: normalizing again is a no-op.
  const Dataset nd2 = normalize(nd);
  CHECK(to_csv(nd2) == to_csv(nd));
}

TEST_CASE("denormalize inverts normalize") {
  const Dataset ds = parse_csv_last_target(
      "0.5,12,1\n"
      "7.25,-3,2\n"
      "3.125,4.5,3\n");
  const Dataset back = denormalize(normalize(ds));
  for (int i = 0; i < ds.n_samples(); ++i)
    for (int j = 0; j < ds.n_features(); ++j)
      CHECK(back.features(i, j) == doctest::Approx(ds.features(i, j)).epsilon(1e-12));
}

TEST_CASE("split is seeded, partition-complete, and sized by the fraction") {
  const Dataset ds = synthesize_liver_dataset(3, 50);
  const SplitSpec spec{0.7, 11};
  auto [a1, b1] = split(ds, spec);
  auto [a2, b2] = split(ds, spec);
  CHECK(to_csv(a1) == to_csv(a2));
  CHECK(to_csv(b1) == to_csv(b2));
  CHECK(a1.n_samples() == 35);  // floor(0.7 * 50)
  CHECK(b1.n_samples() == 15);

  // Every original row appears exactly once across the two partitions.
  std::multiset<std::string> original, pieces;
  for (int i = 0; i < ds.n_samples(); ++i) {
    std::string key;
    for (double v : ds.row(i)) key += format_double(v) + ",";
    key += format_double(ds.targets[i]);
    original.insert(key);
  }
  auto add = [&](const Dataset& d) {
    for (int i = 0; i < d.n_samples(); ++i) {
      std::string key;
      for (double v : d.row(i)) key += format_double(v) + ",";
      key += format_double(d.targets[i]);
      pieces.insert(key);
    }
  };
  add(a1);
  add(b1);
  CHECK(original == pieces);

  // A different seed actually shuffles differently.
  auto [a3, b3] = split(ds, SplitSpec{0.7, 12});
  CHECK(to_csv(a3) != to_csv(a1));
}

TEST_CASE("split of the full benchmark is the frozen 241/104 partition") {
  const Dataset ds = synthesize_liver_dataset(7, 345);
  auto [tr, te] = split(ds, SplitSpec{0.7, 42});
  CHECK(tr.n_samples() == 241);
  CHECK(te.n_samples() == 104);
}

TEST_CASE("split rejects bad inputs") {
  const Dataset ds = parse_csv_last_target("1,2\n3,4\n");
  CHECK_THROWS_AS(split(ds, SplitSpec{0.0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(split(ds, SplitSpec{1.0, 1}), std::invalid_argument);
  const Dataset one = parse_csv_last_target("1,2\n");
  CHECK_THROWS_AS(split(one, SplitSpec{0.5, 1}), std::invalid_argument);
}

TEST_CASE("dataset JSON round-trips exactly") {
  Dataset ds = normalize(parse_csv_last_target("0.1,3,1\n0.7,9,2\n0.4,6,1\n"));
  const std::string j1 = to_json(ds);
  const Dataset back = dataset_from_json(j1);
  CHECK(to_json(back) == j1);
  CHECK(to_csv(back) == to_csv(ds));
  CHECK(back.normalized());
  CHECK(back.normalization[0].min == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("format_double is shortest round-trip text") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-2.5) == "-2.5");
  const double third = 1.0 / 3.0;
  CHECK(std::strtod(format_double(third).c_str(), nullptr) == third);
  const double tiny = 1.4426950408889634e-32;
  CHECK(std::strtod(format_double(tiny).c_str(), nullptr) == tiny);
}

TEST_CASE("rmse and mse agree with hand values and reject bad input") {
  const std::vector<double> p{1.0, 2.0, 3.0};
  const std::vector<double> t{1.0, 0.0, 3.0};
  CHECK(mse(p, t) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(rmse(p, t) == doctest::Approx(std::sqrt(4.0 / 3.0)).epsilon(1e-15));
  CHECK_THROWS_AS(rmse(p, std::vector<double>{1.0}), std::invalid_argument);
  CHECK_THROWS_AS(rmse({}, {}), std::invalid_argument);
}

TEST_CASE("r_value matches hand values and flags degenerate input") {
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
  std::vector<double> y{2.0, 4.0, 6.0, 8.0};
  CHECK(r_value(x, y) == doctest::Approx(1.0).epsilon(1e-12));
  for (auto& v : y) v = -v;
  CHECK(r_value(x, y) == doctest::Approx(-1.0).epsilon(1e-12));
  bool degenerate = false;
  CHECK(r_value(x, {5.0, 5.0, 5.0, 5.0}, &degenerate) == doctest::Approx(0.0));
  CHECK(degenerate);
  // Known mixed case: r of (1,2,3) vs (1,3,2) is 0.5.
  CHECK(r_value({1.0, 2.0, 3.0}, {1.0, 3.0, 2.0}) ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("synthetic liver benchmark is deterministic with a fixed class mix") {
  const Dataset a = synthesize_liver_dataset(7, 345);
  const Dataset b = synthesize_liver_dataset(7, 345);
  CHECK(to_csv(a) == to_csv(b));
  CHECK(a.n_samples() == 345);
  CHECK(a.n_features() == 6);
  int twos = 0;
  for (int i = 0; i < a.n_samples(); ++i) {
    const double t = a.targets[i];
    CHECK((t == 1.0 || t == 2.0));
    if (t == 2.0) ++twos;
  }
  CHECK(twos == 200);  // round(0.58 * 345)
  const Dataset c = synthesize_liver_dataset(8, 345);
  CHECK(to_csv(c) != to_csv(a));
}
