#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace dpp::testing {

// Fixed-seed generator for the property tests; reruns see the same cases.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

  // Uniform point in the disc of radius `radius`.
  std::complex<double> in_disc(double radius) {
    const double t = radius * std::sqrt(uniform(0.0, 1.0));
    return std::polar(t, uniform(-M_PI, M_PI));
  }

 private:
  std::mt19937_64 engine_;
};

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace dpp::testing
