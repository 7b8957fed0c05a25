#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "dpp/errors.hpp"
#include "dpp/geometry.hpp"
#include "support.hpp"

using namespace dpp;
using dpp::testing::Gen;
using dpp::testing::rel_diff;

namespace {

constexpr double kPi = std::numbers::pi;

// Root of a sign-changing function on [lo, hi] by plain bisection.
template <typename F>
double bisect(F f, double lo, double hi) {
  const bool lo_negative = f(lo) < 0.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((f(mid) < 0.0) == lo_negative) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

// The lens integral from first principles: points w with |g_z(w)| < r and
// |w| > r, integrated in polar coordinates with density (1-|w|^2)^{-2}, and
// halved. Circle intersections come from bisection on |g_z(w)| = r.
double lens_oracle(double r, double rho) {
  const Point z(rho, 0.0);
  auto excess = [&](Point w) { return std::abs(mobius(z, 0.0, w)) - r; };
  const double far_edge = bisect([&](double x) { return excess({x, 0.0}); }, rho, 1.0 - 1e-16);
  const double near_edge =
      rho < r ? -bisect([&](double x) { return excess({-x, 0.0}); }, 0.0, 1.0 - 1e-16)
              : bisect([&](double x) { return excess({x, 0.0}); }, 0.0, rho);
  const double t_lo = std::max(r, std::abs(near_edge));
  auto half_angle = [&](double t) {
    if (excess({t, 0.0}) >= 0.0) return 0.0;
    return bisect([&](double phi) { return excess(std::polar(t, phi)); }, 0.0, kPi);
  };
  boost::math::quadrature::tanh_sinh<double> ts;
  const double full = ts.integrate(
      [&](double t) { return 2.0 * half_angle(t) * t / ((1 - t * t) * (1 - t * t)); }, t_lo,
      far_edge);
  return 0.5 * full;
}

}  // namespace

TEST_CASE("mobius maps are involutions and isometries") {
  Gen gen(21);
  for (int i = 0; i < 1000; ++i) {
    const Point w = gen.in_disc(0.99), z = gen.in_disc(0.99), y = gen.in_disc(0.99);
    CHECK(std::abs(mobius(w, 0.0, mobius(w, 0.0, z)) - z) < 1e-11);
    const double theta = gen.uniform(-kPi, kPi);
    const double before = hyperbolic_distance(z, y);
    const double after = hyperbolic_distance(mobius(w, theta, z), mobius(w, theta, y));
    CHECK(std::abs(before - after) < 1e-11 * std::max(1.0, before));
  }
  CHECK(std::abs(mobius(Point(0.3, 0.4), 0.0, Point(0.0, 0.0)) - Point(0.3, 0.4)) < 1e-16);
}

TEST_CASE("hyperbolic distance from the origin is artanh of the modulus") {
  Gen gen(22);
  for (int i = 0; i < 200; ++i) {
    const Point z = gen.in_disc(0.999);
    CHECK(hyperbolic_distance(0.0, z) == doctest::Approx(std::atanh(std::abs(z))).epsilon(1e-13));
    CHECK(hyperbolic_distance(z, z) == 0.0);
  }
}

TEST_CASE("image disc is the image of the centred circle") {
  Gen gen(23);
  for (int i = 0; i < 100; ++i) {
    const double r = gen.uniform(0.01, 0.99), rho = gen.uniform(0.0, 0.99);
    const auto disc = image_disc(rho, r);
    for (int k = 0; k < 64; ++k) {
      const Point image = mobius(Point(rho, 0.0), 0.0, std::polar(r, 2 * kPi * k / 64));
      CHECK(std::abs(std::abs(image - disc.center_modulus) - disc.radius) < 1e-10);
    }
  }
}

TEST_CASE("membership in the image disc is membership of the preimage in D_r") {
  Gen gen(24);
  int checked = 0;
  for (int i = 0; i < 2000; ++i) {
    const double r = gen.uniform(0.05, 0.95), rho = gen.uniform(0.0, 0.95);
    const auto d = image_disc(rho, r);
    const Disc img(Point(d.center_modulus, 0.0), d.radius);
    const Point w = gen.in_disc(0.999);
    const double margin = std::abs(std::abs(mobius(Point(rho, 0.0), 0.0, w)) - r);
    if (margin < 1e-9) continue;
    CHECK(img.contains(w) == (std::abs(mobius(Point(rho, 0.0), 0.0, w)) < r));
    ++checked;
  }
  CHECK(checked > 1900);
}

TEST_CASE("membership duality for complex centres, by rotation") {
  Gen gen(26);
  int checked = 0;
  for (int i = 0; i < 2000; ++i) {
    const double r = gen.uniform(0.05, 0.95);
    const Point z = gen.in_disc(0.95), w = gen.in_disc(0.999);
    const auto d = image_disc(std::abs(z), r);
    const Point centre = d.center_modulus * std::polar(1.0, std::arg(z));
    const double lhs = std::abs(mobius(w, 0.0, z));
    if (std::abs(lhs - r) < 1e-9) continue;
    CHECK((lhs < r) == (std::abs(w - centre) < d.radius));
    ++checked;
  }
  CHECK(checked > 1900);
}

TEST_CASE("image disc auxiliary fields are consistent") {
  for (double r : {0.1, 0.5, 0.9}) {
    for (double rho : {0.05, 0.4, 0.8}) {
      const auto d = image_disc(rho, r);
      const double c = d.center_modulus, R = d.radius;
      CHECK(d.a == doctest::Approx(c * c + R * R));
      CHECK(d.b == doctest::Approx(R * R - c * c));
      CHECK(d.e == doctest::Approx((R - c) * (R - c)));
      CHECK(d.f == doctest::Approx((R + c) * (R + c)));
      CHECK(d.one_minus_f == doctest::Approx(1 - d.f));
      CHECK(d.f < 1.0);
    }
  }
}

TEST_CASE("Euclidean lens area matches a stratified Monte Carlo oracle") {
  std::mt19937_64 engine(25);
  std::uniform_real_distribution<double> jitter(0.0, 1.0);
  for (double r : {0.5, 1.0, 2.0}) {
    for (double frac : {0.1, 0.5, 1.0, 1.7}) {
      const double c = frac * r;
      // One jittered sample per cell of a 1500 x 1500 grid on the box of D(c, r).
      const int cells = 1500;
      const double h = 2 * r / cells;
      long hits = 0;
      for (int i = 0; i < cells; ++i) {
        for (int j = 0; j < cells; ++j) {
          const double x = c - r + (i + jitter(engine)) * h;
          const double y = -r + (j + jitter(engine)) * h;
          if ((x - c) * (x - c) + y * y < r * r && x * x + y * y >= r * r) ++hits;
        }
      }
      const double oracle = hits * h * h;
      CHECK(std::abs(euclidean_lens_complement_area(r, c) - oracle) < 1e-3 * kPi * r * r);
    }
  }
}

TEST_CASE("Euclidean lens area is continuous at |z| = 2r") {
  for (double r : {0.3, 1.0, 4.0}) {
    const double below = euclidean_lens_complement_area(r, std::nextafter(2 * r, 0.0));
    const double above = euclidean_lens_complement_area(r, 2 * r * (1 + 1e-15));
    CHECK(std::abs(below - kPi * r * r) < 1e-12 * std::max(1.0, r * r));
    CHECK(above == doctest::Approx(kPi * r * r).epsilon(1e-15));
    CHECK(euclidean_lens_complement_area(r, 0.0) == 0.0);
  }
}

TEST_CASE("hyperbolic lens integral matches the polar oracle") {
  for (double r : {0.2, 0.6, 0.9}) {
    for (double rho : {0.05, 0.3, 0.7, 0.95}) {
      CAPTURE(r);
      CAPTURE(rho);
      const double oracle = lens_oracle(r, rho);
      QuadratureConfig config;
      CHECK(rel_diff(hyperbolic_lens_integral(r, rho, config).value, oracle) < 1e-7);
      CHECK(rel_diff(hyperbolic_lens_integral_transformed(r, rho, config).value, oracle) < 1e-7);
    }
  }
}

TEST_CASE("far from the centre the lens is half the disc area") {
  QuadratureConfig config;
  const double r = 0.6, rho = 0.99;
  const double expected = kPi * r * r / (2 * (1 - r * r));
  CHECK(hyperbolic_lens_integral(r, rho, config).value == doctest::Approx(expected).epsilon(1e-12));
  CHECK(hyperbolic_lens_integral_transformed(r, rho, config).value ==
        doctest::Approx(expected).epsilon(1e-10));
  CHECK(hyperbolic_disc_area(r) == doctest::Approx(2 * expected));
}

TEST_CASE("direct and transformed lens routes agree on a 10 x 10 grid") {
  QuadratureConfig config;
  for (int i = 1; i <= 10; ++i) {
    for (int k = 1; k <= 10; ++k) {
      const double r = 0.095 * i, rho = 0.099 * k - 0.0005;
      CAPTURE(r);
      CAPTURE(rho);
      const double a = hyperbolic_lens_integral(r, rho, config).value;
      const double b = hyperbolic_lens_integral_transformed(r, rho, config).value;
      CHECK(rel_diff(a, b) < 1e-8);
    }
  }
}

TEST_CASE("boundary term switches off past 2r/(1+r^2)") {
  for (double r : {0.2, 0.5, 0.8}) {
    const double knee = 2 * r / (1 + r * r);
    CHECK(lens_boundary_term(r, 0.5 * knee) > 0.0);
    CHECK(lens_boundary_term(r, std::min(0.999, 1.01 * knee)) == 0.0);
  }
  // Close to the boundary the term tends to arccos(|z|) / (1 - r^2).
  const double r = 0.999;
  for (double rho : {0.1, 0.5, 0.9}) {
    CHECK((1 - r * r) * lens_boundary_term(r, rho) == doctest::Approx(std::acos(rho)).epsilon(1e-5));
  }
}

TEST_CASE("lens_angle clamps rounding noise only") {
  CHECK(lens_angle(0.5, 0.25, 0.25) == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(lens_angle(0.5, 0.5, 0.5) == doctest::Approx(std::acos(0.5)));
  CHECK_THROWS_AS(lens_angle(0.9, 0.1, 0.1), DomainError);
  CHECK_THROWS_AS(Disc(Point(0.5, 0.0), 0.6), DomainError);
  CHECK_NOTHROW(Disc(Point(0.5, 0.0), 0.6, true));
}
