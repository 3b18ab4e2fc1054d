#pragma once

#include <Eigen/Dense>
#include <cmath>

namespace anpso {

inline double sphere(const Eigen::VectorXd& x) { return x.squaredNorm(); }

inline double rastrigin(const Eigen::VectorXd& x) {
  double s = 10.0 * static_cast<double>(x.size());
  for (int i = 0; i < x.size(); ++i)
    s += x[i] * x[i] - 10.0 * std::cos(2.0 * M_PI * x[i]);
  return s;
}

}  // namespace anpso
