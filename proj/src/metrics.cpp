#include "anpso/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace anpso {

double mse(const std::vector<double>& pred, const std::vector<double>& target) {
  if (pred.size() != target.size())
    throw std::invalid_argument("mse: length mismatch");
  if (pred.empty()) throw std::invalid_argument("mse: empty input");
  double acc = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double d = pred[i] - target[i];
    acc += d * d;
  }
  return acc / static_cast<double>(pred.size());
}

double rmse(const std::vector<double>& pred, const std::vector<double>& target) {
  return std::sqrt(mse(pred, target));
}

double r_value(const std::vector<double>& pred, const std::vector<double>& target,
               bool* degenerate) {
  if (pred.size() != target.size())
    throw std::invalid_argument("r_value: length mismatch");
  if (pred.size() < 2) throw std::invalid_argument("r_value: need >=2 samples");
  if (degenerate) *degenerate = false;

  const double n = static_cast<double>(pred.size());
  double mp = 0.0, mt = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    mp += pred[i];
    mt += target[i];
  }
  mp /= n;
  mt /= n;
  double spt = 0.0, spp = 0.0, stt = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double dp = pred[i] - mp;
    const double dt = target[i] - mt;
    spt += dp * dt;
    spp += dp * dp;
    stt += dt * dt;
  }
  if (spp == 0.0 || stt == 0.0) {
    if (degenerate) *degenerate = true;
    return 0.0;
  }
  return spt / std::sqrt(spp * stt);
}

}  // namespace anpso
