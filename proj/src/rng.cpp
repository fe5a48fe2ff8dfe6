#include "evlcp/rng.hpp"

#include <cmath>
#include <numbers>

namespace evlcp {

double RngStream::normal() {
  const double u1 = uniform01();
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<double> RngStream::simplex(std::size_t m) {
  std::vector<double> w(m);
  double sum = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    w[i] = -std::log(uniform01());
    sum += w[i];
  }
  for (double& v : w) v /= sum;
  return w;
}

}  // namespace evlcp
