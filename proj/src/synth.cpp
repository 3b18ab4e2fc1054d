#include "anpso/synth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "anpso/rng.hpp"

namespace anpso {

namespace {

double clip(double v, double lo, double hi) {
  return std::min(std::max(v, lo), hi);
}

// Class-score noise; the main knob for how predictable the selector is.
constexpr double kScoreNoise = 0.10;
constexpr double kClassTwoShare = 0.58;

}  // namespace

Dataset synthesize_liver_dataset(std::uint64_t seed, int n) {
  if (n < 5) throw std::invalid_argument("synthesize_liver_dataset: n too small");
  Rng rng(mix_seed(seed, 7001));

  Dataset ds;
  ds.features.resize(n, 6);
  ds.targets.resize(n);
  std::vector<double> score(n);

  for (int i = 0; i < n; ++i) {
    const double z1 = gauss(rng);  // organ stress factor
    const double z2 = gauss(rng);  // alcohol intake factor

    const double mcv =
        std::round(clip(90.0 + 3.5 * (0.6 * z1 + 0.3 * z2) + 1.6 * gauss(rng),
                        65.0, 103.0));
    const double alkphos =
        std::round(clip(69.0 + 7.0 * z1 + 8.0 * gauss(rng), 23.0, 138.0));
    const double sgpt = std::round(
        clip(std::exp(3.0 + 0.45 * z1 + 0.15 * z2 + 0.16 * gauss(rng)), 4.0, 155.0));
    const double sgot = std::round(
        clip(std::exp(3.1 + 0.40 * z1 + 0.10 * z2 + 0.15 * gauss(rng)), 5.0, 99.0));
    const double gammagt = std::round(
        clip(std::exp(3.0 + 0.75 * z1 + 0.25 * z2 + 0.28 * gauss(rng)), 5.0, 297.0));
    const double drinks =
        std::round(2.0 * clip(1.5 + 2.2 * z2 + 0.50 * gauss(rng), 0.0, 20.0)) / 2.0;

    ds.features(i, 0) = mcv;
    ds.features(i, 1) = alkphos;
    ds.features(i, 2) = sgpt;
    ds.features(i, 3) = sgot;
    ds.features(i, 4) = gammagt;
    ds.features(i, 5) = drinks;

    // Nonlinear class score: main effects, an interaction, curvature, and
    // two localized regime flips — a pocket of high-risk cases inside the
    // otherwise low-risk region and a resilient pocket inside the high-risk
    // region. Smooth global fits average the pockets away; models that can
    // place narrow membership functions on them are rewarded.
    const double pocket_hi =
        2.2 * std::exp(-((z1 + 1.0) * (z1 + 1.0) + (z2 - 0.6) * (z2 - 0.6)) /
                       (2.0 * 0.45 * 0.45));
    const double pocket_lo =
        -1.9 * std::exp(-((z1 - 1.1) * (z1 - 1.1) + (z2 - 0.9) * (z2 - 0.9)) /
                        (2.0 * 0.40 * 0.40));
    score[i] = 1.2 * z1 + 0.6 * z2 + 0.8 * z1 * z2 + 0.5 * (z1 * z1 - 1.0) +
               pocket_hi + pocket_lo + kScoreNoise * gauss(rng);
  }

  // Rank threshold: exactly round(kClassTwoShare * n) samples get class 2.
  std::vector<double> sorted = score;
  std::sort(sorted.begin(), sorted.end());
  const int n_two = static_cast<int>(std::lround(kClassTwoShare * n));
  const double cut = sorted[static_cast<std::size_t>(n - n_two)];
  for (int i = 0; i < n; ++i) ds.targets[i] = score[i] >= cut ? 2.0 : 1.0;

  return ds;
}

}  // namespace anpso
