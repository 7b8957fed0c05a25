#include "dpp/kernels.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dpp/errors.hpp"
#include "dpp/specfun.hpp"

namespace dpp {

namespace {

double log_cosh(double x) {
  const double a = std::abs(x);
  return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

}  // namespace

EuclideanLevel::EuclideanLevel(int n) : n_(n) {
  if (n < 0) throw DomainError("Euclidean level n must be >= 0");
}

HyperbolicLevel::HyperbolicLevel(double nu, int m) : nu_(nu), m_(m), beta_(2.0 * (nu - m) - 1.0) {
  if (!(nu > 0.5)) {
    throw DomainError("hyperbolic level requires nu > 1/2 (got nu = " + std::to_string(nu) + ")");
  }
  if (m < 0 || m > static_cast<int>(std::floor(nu - 0.5))) {
    throw DomainError("hyperbolic level requires 0 <= m <= floor(nu - 1/2)");
  }
  if (!(beta_ > 0.0)) throw DomainError("hyperbolic level requires 2(nu - m) - 1 > 0");
}

double fock_kernel_sq_weighted(const EuclideanLevel& level, Point z, Point w) {
  const double d2 = std::norm(z - w);
  const double l = laguerre(level.n(), d2);
  return std::exp(-d2) * l * l / (std::numbers::pi * std::numbers::pi);
}

std::complex<double> hyperbolic_kernel(const HyperbolicLevel& level, Point z, Point w) {
  if (!(std::abs(z) < 1.0) || !(std::abs(w) < 1.0)) {
    throw DomainError("hyperbolic_kernel: points must lie in the open unit disc");
  }
  const std::complex<double> cross = 1.0 - z * std::conj(w);
  const double cosh2 = std::norm(cross) / ((1.0 - std::norm(z)) * (1.0 - std::norm(w)));
  const double jac = jacobi_zero_beta(level.m(), level.beta(), 2.0 / cosh2 - 1.0);
  return (level.beta() / std::numbers::pi) * std::pow(cross, -2.0 * level.nu()) *
         std::pow(cosh2, level.m()) * jac;
}

double f_profile(const HyperbolicLevel& level, double rho) {
  if (!(rho >= 0.0 && rho < 1.0)) throw DomainError("f_profile: rho must lie in [0, 1)");
  const double one_m_r2 = (1.0 - rho) * (1.0 + rho);
  const double amp = (level.beta() / std::numbers::pi) * std::pow(one_m_r2, level.nu() - level.m()) *
                     jacobi_zero_beta(level.m(), level.beta(), 1.0 - 2.0 * rho * rho);
  return amp * amp;
}

double f_profile_at_distance(const HyperbolicLevel& level, double distance) {
  if (!(distance >= 0.0)) throw DomainError("f_profile_at_distance: distance must be >= 0");
  const double lc = log_cosh(distance);
  const double sech2 = std::exp(-2.0 * lc);
  const double amp = (level.beta() / std::numbers::pi) *
                     std::exp(-2.0 * (level.nu() - level.m()) * lc) *
                     jacobi_zero_beta(level.m(), level.beta(), 2.0 * sech2 - 1.0);
  return amp * amp;
}

}  // namespace dpp
