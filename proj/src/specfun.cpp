#include "dpp/specfun.hpp"

#include <cmath>
#include <limits>

namespace dpp {

QuadratureConfig incomplete_beta_default_config() {
  QuadratureConfig config;
  config.rel_tol = 1e-13;
  config.abs_tol = std::numeric_limits<double>::min();
  config.max_subdivisions = 2000;
  return config;
}

double incomplete_beta(const IncompleteBetaRequest& request) {
  return incomplete_beta(request, incomplete_beta_default_config());
}

double incomplete_beta(const IncompleteBetaRequest& request,
                       const QuadratureConfig& config) {
  const double r = request.r;
  const int j = request.first_index;
  const double b = request.second_parameter;
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError("incomplete_beta: r must lie in [0, 1]");
  if (!(b > 0.0)) throw DomainError("incomplete_beta: b must be positive");
  if (j < 1) throw DomainError("incomplete_beta: j must be >= 1");
  if (r == 0.0) return 0.0;

  const double upper = r * r;
  const double jm1 = static_cast<double>(j - 1);

  if (b < 1.0 && r > 0.99) {
    // v = (1-s)^b: B = (1/b) int_{(1-r^2)^b}^1 (1 - v^{1/b})^{j-1} dv
    const double v_low = std::pow(1.0 - upper, b);
    auto integrand = [=](double v) {
      if (v <= 0.0) return 1.0;  // s = 1
      const double s = -std::expm1(std::log(v) / b);
      return j == 1 ? 1.0 : std::pow(s, jm1);
    };
    return integrate(integrand, v_low, 1.0, config).value / b;
  }

  auto integrand = [=](double s) {
    const double tail = std::exp((b - 1.0) * std::log1p(-s));
    return j == 1 ? tail : std::pow(s, jm1) * tail;
  };
  return integrate(integrand, 0.0, upper, config).value;
}

}  // namespace dpp
