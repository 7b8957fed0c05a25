#pragma once

#include <complex>

#include "dpp/quadrature.hpp"

namespace dpp {

using Point = std::complex<double>;

/// Euclidean disc. Discs describing hyperbolic regions live inside the unit
/// disc; `euclidean` marks discs that may leave it.
struct Disc {
  Point center;
  double radius = 0.0;
  bool euclidean = false;

  Disc(Point center, double radius, bool euclidean = false);
  bool contains(Point p) const { return std::abs(p - center) < radius; }
};

/// Image of the centred disc D_r under the involution exchanging 0 and a
/// point of modulus |z|, together with the auxiliary quantities used by the
/// transformed lens integral. All fields are evaluated from factored forms
/// that avoid cancellation.
struct ImageDiscParams {
  double center_modulus = 0.0;  // |C|
  double radius = 0.0;          // R
  double a = 0.0;               // |C|^2 + R^2
  double b = 0.0;               // R^2 - |C|^2
  double e = 0.0;               // (R - |C|)^2
  double f = 0.0;               // (R + |C|)^2
  double h = 0.0;               // (F - r^2) / (F - E)
  double u = 0.0;               // (F - E) / (1 - F)
  double v = 0.0;               // (F - E) / F
  double one_minus_f = 0.0;     // 1 - F
};

struct LensIntegralResult {
  double value = 0.0;
  double error = 0.0;
};

/// g_{w,theta}(z) = e^{i theta} (w - z) / (1 - conj(w) z).
Point mobius(Point w, double theta, Point z);

/// Distance with cosh^2 d = |1 - z conj(w)|^2 / ((1-|z|^2)(1-|w|^2)),
/// i.e. d = artanh |g_w(z)|.
double hyperbolic_distance(Point z, Point w);

ImageDiscParams image_disc(double z_modulus, double r);

/// Area of D_r^c intersected with the disc of radius r centred at distance
/// `z_modulus` from the origin.
double euclidean_lens_complement_area(double r, double z_modulus);

/// Area of the centred disc D_r for the measure (1-|w|^2)^{-2} dw.
double hyperbolic_disc_area(double r);

/// arccos((t^2 + c^2 - R^2) / (2 t c)): half the angular width of the circle
/// |w| = t inside the disc D(c, R) with c > 0 on the positive real axis.
/// Arguments within 1e-12 outside [-1, 1] are clamped; beyond that a
/// DomainError is thrown.
double lens_angle(double t, double c, double radius);

/// I(|z|, r) = int arccos((t^2+|C|^2-R^2)/(2t|C|)) t (1-t^2)^{-2} dt over
/// r v ||z|-r|/(1-|z|r) < t < (|z|+r)/(1+|z|r).
/// This is the un-doubled inner integral; the hyperbolic area of
/// D_r^c n D(C, R) is 2 I.
LensIntegralResult hyperbolic_lens_integral(double r, double z_modulus,
                                            const QuadratureConfig& config);

/// Same quantity through integration by parts and the t = sin^2 substitution
/// of the resulting incomplete hypergeometric-type integral.
LensIntegralResult hyperbolic_lens_integral_transformed(double r, double z_modulus,
                                                        const QuadratureConfig& config);

/// Boundary term (1-r^2)^{-1} arccos((r^2+|C|^2-R^2)/(2r|C|)) 1{|z| < 2r/(1+r^2)}
/// produced by the integration by parts.
double lens_boundary_term(double r, double z_modulus);

namespace detail {

/// Direct lens integral with the point at distance artanh(rho) = `alpha`
/// and disc radius artanh(r) = `beta_r`. The integrand is written through
/// the hyperbolic law of cosines in half-angle form.
LensIntegralResult lens_integral_hyperbolic_coords(double alpha, double beta_r,
                                                   const QuadratureConfig& config);

}  // namespace detail

}  // namespace dpp
