#include "dpp/variance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dpp/errors.hpp"
#include "dpp/geometry.hpp"
#include "dpp/specfun.hpp"

namespace dpp {

namespace {

constexpr double kPi = std::numbers::pi;
// Truncated tails are kept two orders below the absolute tolerance.
constexpr double kTailShare = 1e-2;

void require_positive_radius(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("variance: r must be positive");
}

void require_unit_radius(double r) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("variance: r must lie in (0, 1)");
}

// Smallest X >= floor with 2 scale (1+X)^{2n} e^{-X} <= target. This bounds
// int_X^inf (1+x)^{2n} e^{-x} dx times `scale` once X >= 4n.
double exponential_cutoff(int n, double scale, double floor, double target) {
  double x = std::max(floor, 4.0 * n);
  auto bound = [&](double v) { return 2.0 * scale * std::exp(2.0 * n * std::log1p(v) - v); };
  while (bound(x) > target) x += 1.0;
  return x;
}

double tail_bound_polynomial(int n, double scale, double x) {
  return 2.0 * scale * std::exp(2.0 * n * std::log1p(x) - x);
}

// sup over [-1, 1] of |P_m^{(0,beta)}|, attained at x = -1 for beta >= 0.
double jacobi_sup(const HyperbolicLevel& level) {
  const double m = level.m();
  const double log_binom =
      std::lgamma(m + level.beta() + 1.0) - std::lgamma(m + 1.0) - std::lgamma(level.beta() + 1.0);
  return std::max(1.0, std::exp(log_binom));
}

// Radial weight in the distance variable d = artanh(rho):
// rho (1-rho^2)^{-2} f(rho) drho = sinh d cosh d f(d) dd.
double radial_weight(const HyperbolicLevel& level, double d) {
  return 0.5 * std::sinh(2.0 * d) * f_profile_at_distance(level, d);
}

// Distance U past which int_U^inf sinh cosh f <= target / scale, using
// f <= (beta/pi)^2 q^2 cosh^{-4(nu-m)} and int_U^inf sinh cosh^{-2beta-1} = cosh^{-2beta}(U)/(2beta).
double radial_cutoff(const HyperbolicLevel& level, double scale, double target) {
  const double beta = level.beta();
  const double q = jacobi_sup(level);
  const double k = scale * (beta / kPi) * (beta / kPi) * q * q / (2.0 * beta);
  if (k <= target) return 0.0;
  return std::acosh(std::exp(std::log(k / target) / (2.0 * beta)));
}

double radial_tail(const HyperbolicLevel& level, double scale, double cutoff) {
  const double beta = level.beta();
  const double q = jacobi_sup(level);
  return scale * (beta / kPi) * (beta / kPi) * q * q * std::exp(-2.0 * beta * std::log(std::cosh(cutoff))) /
         (2.0 * beta);
}

template <typename LensFn>
VarianceResult hyperbolic_variance_impl(const HyperbolicLevel& level, double r,
                                        const QuadratureConfig& config, LensFn lens,
                                        VarianceRoute route) {
  require_unit_radius(r);
  config.validate();
  const double b = std::atanh(r);
  const double split = 2.0 * b;
  // Past the split the whole image disc lies in D_r^c, so I is half its area.
  const double lens_outside = 0.5 * hyperbolic_disc_area(r);

  double inner_error = 0.0;
  auto near = [&](double d) {
    const auto li = lens(d, b);
    inner_error = std::max(inner_error, li.error);
    return radial_weight(level, d) * li.value;
  };
  const auto near_part = integrate(near, 0.0, split, config);

  const double scale = 4.0 * kPi * lens_outside;
  const double cutoff = std::max(split, radial_cutoff(level, scale, kTailShare * config.abs_tol));
  auto far = [&](double d) { return radial_weight(level, d); };
  const auto far_part = integrate(far, split, cutoff, config);
  const double tail = radial_tail(level, scale, cutoff);

  const double value = 4.0 * kPi * (near_part.value + lens_outside * far_part.value);
  // Inner errors enter through the weight integral, which is at most the total.
  double weight_mass = integrate(far, 0.0, split, config).value;
  const double error = 4.0 * kPi * (near_part.error + lens_outside * far_part.error +
                                    inner_error * weight_mass) +
                       tail;
  return {std::max(value, 0.0), error, route};
}

}  // namespace

std::string_view to_string(VarianceRoute route) {
  switch (route) {
    case VarianceRoute::shirai:
      return "shirai";
    case VarianceRoute::geometric:
      return "geometric";
    case VarianceRoute::int1:
      return "int1";
    case VarianceRoute::int3:
      return "int3";
    case VarianceRoute::series:
      return "series";
  }
  return "unknown";
}

VarianceResult variance_euclidean_shirai(const EuclideanLevel& level, double r,
                                         const QuadratureConfig& config) {
  require_positive_radius(r);
  config.validate();
  const int n = level.n();
  const double four_r2 = 4.0 * r * r;
  auto inner = [r](double t) {
    const double s = std::min(1.0, std::sqrt(t) / (2.0 * r));
    const double th = std::asin(s);
    return 2.0 * r * (th + s * std::cos(th));
  };
  const double cutoff =
      exponential_cutoff(n, r * r, 40.0, kTailShare * config.abs_tol);

  // t = s^2 removes the sqrt(t) behaviour of the inner integral at 0.
  const double s_max = std::sqrt(std::min(four_r2, cutoff));
  auto near = [&](double s) {
    const double t = s * s;
    const double l = laguerre(n, t);
    return 2.0 * s * l * l * std::exp(-t) * inner(t);
  };
  const auto near_part = integrate(near, 0.0, s_max, config);

  QuadratureResult far_part;
  if (four_r2 < cutoff) {
    auto far = [&](double t) {
      const double l = laguerre(n, t);
      return l * l * std::exp(-t);
    };
    far_part = integrate(far, four_r2, cutoff, config);
    far_part.value *= kPi * r;
    far_part.error *= kPi * r;
  }
  const double tail = tail_bound_polynomial(n, r * r, cutoff);
  const double value = (r / kPi) * (near_part.value + far_part.value);
  const double error = (r / kPi) * (near_part.error + far_part.error) + tail;
  return {value, error, VarianceRoute::shirai};
}

VarianceResult variance_euclidean_geometric(const EuclideanLevel& level, double r,
                                            const QuadratureConfig& config) {
  require_positive_radius(r);
  config.validate();
  const int n = level.n();
  auto density = [n](double rho) {
    const double x = rho * rho;
    const double l = laguerre(n, x);
    return (2.0 / kPi) * rho * std::exp(-x) * l * l;
  };

  double cutoff = std::max(2.0 * r, 1.0) + 8.0;
  while (tail_bound_polynomial(n, r * r, cutoff * cutoff) > kTailShare * config.abs_tol) {
    cutoff += 1.0;
  }

  const double lens_end = std::min(2.0 * r, cutoff);
  auto near = [&](double rho, double, double) {
    return density(rho) * euclidean_lens_complement_area(r, rho);
  };
  const auto near_part = integrate_cosine_mapped(near, 0.0, lens_end, config);

  QuadratureResult far_part;
  if (2.0 * r < cutoff) {
    far_part = integrate(density, 2.0 * r, cutoff, config);
    far_part.value *= kPi * r * r;
    far_part.error *= kPi * r * r;
  }
  const double tail = tail_bound_polynomial(n, r * r, cutoff * cutoff);
  return {near_part.value + far_part.value, near_part.error + far_part.error + tail,
          VarianceRoute::geometric};
}

VarianceResult variance_hyperbolic(const HyperbolicLevel& level, double r,
                                   const QuadratureConfig& config) {
  auto lens = [&config](double d, double b) {
    return detail::lens_integral_hyperbolic_coords(d, b, config);
  };
  return hyperbolic_variance_impl(level, r, config, lens, VarianceRoute::int1);
}

VarianceResult variance_hyperbolic_via_transformed(const HyperbolicLevel& level, double r,
                                                   const QuadratureConfig& config) {
  auto lens = [&config, r](double d, double) {
    return hyperbolic_lens_integral_transformed(r, std::tanh(d), config);
  };
  return hyperbolic_variance_impl(level, r, config, lens, VarianceRoute::int3);
}

double asymptotic_constant(const HyperbolicLevel& level, const QuadratureConfig& config,
                           AsymptoticForm form) {
  config.validate();
  auto angle = [form](double d) {
    const double rho = std::tanh(d);
    if (form == AsymptoticForm::arccos_one_minus_two_rho_sq) {
      return std::acos(1.0 - 2.0 * rho * rho);
    }
    return kPi - 2.0 * std::acos(rho);
  };
  auto integrand = [&](double d) { return radial_weight(level, d) * angle(d); };
  // 2 pi from the angular integral; the angle factor is at most pi.
  const double scale = 2.0 * kPi * kPi;
  const double cutoff = radial_cutoff(level, scale, kTailShare * config.abs_tol);
  const auto result = integrate(integrand, 0.0, std::max(cutoff, 1.0), config);
  return 2.0 * kPi * result.value;
}

double asymptotic_constant_bound(const HyperbolicLevel& level) { return level.beta(); }

std::vector<ContractionRow> contraction_check(int m, double r,
                                              std::span<const double> scales,
                                              const QuadratureConfig& config) {
  require_positive_radius(r);
  const double target = variance_euclidean_geometric(EuclideanLevel(m), r, config).value;
  std::vector<ContractionRow> rows;
  rows.reserve(scales.size());
  for (double scale : scales) {
    if (!(scale > 1.0) || !(r / scale < 1.0)) {
      throw DomainError("contraction_check: each R must exceed max(1, r)");
    }
    const HyperbolicLevel level(0.5 * scale * scale, m);
    const double v = variance_hyperbolic(level, r / scale, config).value;
    const double scaled = scale * scale * v;
    rows.push_back({scale, scaled, target, scaled / target, v, v / target});
  }
  return rows;
}

}  // namespace dpp
