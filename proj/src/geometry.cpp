#include "dpp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dpp/errors.hpp"

namespace dpp {

namespace {

constexpr double kClampWindow = 1e-12;

void require_in_unit_disc(Point p, const char* what) {
  if (!(std::abs(p) < 1.0)) {
    throw DomainError(std::string(what) + " must lie in the open unit disc");
  }
}

void require_lens_inputs(double r, double z_modulus) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("lens integral: r must lie in (0, 1)");
  if (!(z_modulus >= 0.0 && z_modulus < 1.0)) {
    throw DomainError("lens integral: |z| must lie in [0, 1)");
  }
}

}  // namespace

Disc::Disc(Point c, double r, bool is_euclidean)
    : center(c), radius(r), euclidean(is_euclidean) {
  if (!(radius > 0.0)) throw DomainError("disc radius must be positive");
  if (!euclidean && std::abs(center) + radius > 1.0) {
    throw DomainError("hyperbolic disc must lie inside the unit disc");
  }
}

Point mobius(Point w, double theta, Point z) {
  require_in_unit_disc(w, "mobius: w");
  require_in_unit_disc(z, "mobius: z");
  return std::polar(1.0, theta) * (w - z) / (1.0 - std::conj(w) * z);
}

double hyperbolic_distance(Point z, Point w) {
  require_in_unit_disc(z, "hyperbolic_distance: z");
  require_in_unit_disc(w, "hyperbolic_distance: w");
  return std::atanh(std::abs(w - z) / std::abs(1.0 - std::conj(w) * z));
}

ImageDiscParams image_disc(double z_modulus, double r) {
  if (!(z_modulus >= 0.0 && z_modulus < 1.0)) {
    throw DomainError("image_disc: |z| must lie in [0, 1)");
  }
  if (!(r > 0.0 && r < 1.0)) throw DomainError("image_disc: r must lie in (0, 1)");
  const double p = z_modulus;
  const double pr = p * r;
  const double one_m_p2 = (1.0 - p) * (1.0 + p);
  const double one_m_r2 = (1.0 - r) * (1.0 + r);
  const double denom = (1.0 - pr) * (1.0 + pr);

  ImageDiscParams out;
  out.center_modulus = one_m_r2 * p / denom;
  out.radius = one_m_p2 * r / denom;
  out.a = out.center_modulus * out.center_modulus + out.radius * out.radius;
  out.b = (r - p) * (r + p) / denom;
  const double gap = (p - r) / (1.0 - pr);
  const double reach = (p + r) / (1.0 + pr);
  out.e = gap * gap;
  out.f = reach * reach;
  out.one_minus_f = one_m_p2 * one_m_r2 / ((1.0 + pr) * (1.0 + pr));
  out.h = (2.0 * r + p * (1.0 + r * r)) * (1.0 - pr) * (1.0 - pr) / (4.0 * r * one_m_p2);
  out.u = 4.0 * pr / ((1.0 - pr) * (1.0 - pr));
  out.v = 4.0 * p * one_m_p2 * r * one_m_r2 /
          ((p + r) * (p + r) * (1.0 - pr) * (1.0 - pr));
  return out;
}

double euclidean_lens_complement_area(double r, double z_modulus) {
  if (!(r > 0.0)) throw DomainError("lens area: r must be positive");
  if (!(z_modulus >= 0.0)) throw DomainError("lens area: |z| must be non-negative");
  const double disc = std::numbers::pi * r * r;
  if (z_modulus >= 2.0 * r) return disc;
  const double d = z_modulus;
  // acos(d/2r) = 2 asin(sqrt((2r-d)/4r)) keeps full precision near tangency.
  const double gap = 2.0 * r - d;
  const double half_angle = 2.0 * std::asin(std::sqrt(gap / (4.0 * r)));
  const double overlap = 2.0 * r * r * half_angle - 0.5 * d * std::sqrt(gap * (2.0 * r + d));
  return std::max(0.0, disc - overlap);
}

double hyperbolic_disc_area(double r) {
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("hyperbolic_disc_area: r must lie in [0, 1)");
  return std::numbers::pi * r * r / ((1.0 - r) * (1.0 + r));
}

double lens_angle(double t, double c, double radius) {
  const double arg = (t * t + c * c - radius * radius) / (2.0 * t * c);
  if (arg > 1.0) {
    if (arg - 1.0 > kClampWindow) throw DomainError("lens_angle: argument above 1");
    return 0.0;
  }
  if (arg < -1.0) {
    if (-1.0 - arg > kClampWindow) throw DomainError("lens_angle: argument below -1");
    return std::numbers::pi;
  }
  return std::acos(arg);
}

namespace detail {

LensIntegralResult lens_integral_hyperbolic_coords(double alpha, double beta_r,
                                                   const QuadratureConfig& config) {
  if (alpha <= 0.0) return {0.0, 0.0};
  const double b = beta_r;
  const bool lower_is_r = alpha <= 2.0 * b;
  const double u_lo = lower_is_r ? b : alpha - b;
  const double u_hi = alpha + b;

  // With t = tanh u the measure t dt / (1-t^2)^2 becomes sinh u cosh u du,
  // and cos(angle) = (cosh 2a cosh 2u - cosh 2b) / (sinh 2a sinh 2u). The
  // half-angle form below only multiplies non-negative quantities.
  auto integrand = [&](double u, double from_lo, double to_hi) {
    const double n1 = to_hi;                                           // a + b - u
    const double n2 = lower_is_r ? from_lo + (2.0 * b - alpha) : from_lo;  // b - a + u
    const double d2 = lower_is_r ? from_lo + alpha : from_lo + 2.0 * (alpha - b);  // a + u - b
    const double ratio = std::sinh(n1) * std::sinh(n2) /
                         (std::sinh(alpha + u + b) * std::sinh(d2));
    const double angle = 2.0 * std::atan(std::sqrt(std::max(ratio, 0.0)));
    return angle * 0.5 * std::sinh(2.0 * u);
  };
  const auto result = integrate_cosine_mapped(integrand, u_lo, u_hi, config);
  return {result.value, result.error};
}

}  // namespace detail

LensIntegralResult hyperbolic_lens_integral(double r, double z_modulus,
                                            const QuadratureConfig& config) {
  require_lens_inputs(r, z_modulus);
  if (z_modulus == 0.0) return {0.0, 0.0};
  return detail::lens_integral_hyperbolic_coords(std::atanh(z_modulus), std::atanh(r),
                                                 config);
}

double lens_boundary_term(double r, double z_modulus) {
  require_lens_inputs(r, z_modulus);
  if (z_modulus == 0.0) return 0.0;
  if (!(z_modulus < 2.0 * r / (1.0 + r * r))) return 0.0;
  const auto disc = image_disc(z_modulus, r);
  return lens_angle(r, disc.center_modulus, disc.radius) / ((1.0 - r) * (1.0 + r));
}

LensIntegralResult hyperbolic_lens_integral_transformed(double r, double z_modulus,
                                                        const QuadratureConfig& config) {
  require_lens_inputs(r, z_modulus);
  if (z_modulus == 0.0) return {0.0, 0.0};
  const double p = z_modulus;
  const double pr = p * r;
  const auto disc = image_disc(p, r);
  // B/F and (1+B)/(1-F) in factored form.
  const double b_over_f = (r - p) * (1.0 + pr) / ((1.0 - pr) * (p + r));
  const double b1_over_1mf = (1.0 + r * r) * (1.0 + pr) / ((1.0 - pr) * (1.0 - r) * (1.0 + r));
  const double phi_max = disc.h >= 1.0 ? 0.5 * std::numbers::pi : std::asin(std::sqrt(disc.h));

  auto integrand = [&](double phi) {
    const double s = std::sin(phi);
    const double s2 = s * s;
    return b_over_f / (1.0 - disc.v * s2) + b1_over_1mf / (1.0 + disc.u * s2);
  };
  const auto result = integrate(integrand, 0.0, phi_max, config);
  // The integration by parts acts on the doubled integrand 2 arccos(...);
  // halve to return the same normalisation as hyperbolic_lens_integral.
  const double doubled = result.value - lens_boundary_term(r, p);
  return {0.5 * doubled, 0.5 * result.error};
}

}  // namespace dpp
