#include "dpp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "dpp/errors.hpp"

namespace dpp {

namespace {

constexpr unsigned kKronrodPoints = 21;
constexpr unsigned kGaussPoints = (kKronrodPoints - 1) / 2;
constexpr unsigned kPanelPoints = 20;

using Kronrod = boost::math::quadrature::gauss_kronrod<double, kKronrodPoints>;
using Gauss = boost::math::quadrature::gauss<double, kGaussPoints>;
using PanelRule = boost::math::quadrature::gauss<double, kPanelPoints>;

struct Segment {
  double a;
  double b;
  double value;
  double error;
};

// G10/K21 pair on [a, b]. Node layout follows Boost's tables: index 0 is the
// centre (Kronrod only, since the Gauss order is even), odd indices are shared
// with the Gauss rule.
Segment apply_rule(const Integrand& f, double a, double b) {
  const auto& x = Kronrod::abscissa();
  const auto& wk = Kronrod::weights();
  const auto& wg = Gauss::weights();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const double fc = f(mid);
  double kronrod = fc * wk[0];
  double gauss = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double fp = f(mid + half * x[i]);
    const double fm = f(mid - half * x[i]);
    kronrod += (fp + fm) * wk[i];
    if (i % 2 == 1) gauss += (fp + fm) * wg[i / 2];
  }
  kronrod *= half;
  gauss *= half;
  const double floor = 50.0 * std::numeric_limits<double>::epsilon() * std::abs(kronrod);
  return {a, b, kronrod, std::max(std::abs(kronrod - gauss), floor)};
}

double tolerance_for(double value, const QuadratureConfig& config) {
  return std::max(config.abs_tol, config.rel_tol * std::abs(value));
}

[[noreturn]] void fail(std::string_view scheme, double a, double b, double value,
                       double error) {
  throw QuadratureFailure("quadrature (" + std::string(scheme) + ") on [" +
                              std::to_string(a) + ", " + std::to_string(b) +
                              "] stopped with error estimate " +
                              std::to_string(error),
                          value, error);
}

QuadratureResult adaptive_gauss_kronrod(const Integrand& f, double a, double b,
                                        const QuadratureConfig& config) {
  auto worse = [](const Segment& l, const Segment& r) { return l.error < r.error; };
  std::priority_queue<Segment, std::vector<Segment>, decltype(worse)> heap(worse);
  heap.push(apply_rule(f, a, b));
  double value = heap.top().value;
  double error = heap.top().error;

  while (error > tolerance_for(value, config)) {
    const Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (static_cast<int>(heap.size()) >= config.max_subdivisions ||
        !(mid > worst.a && mid < worst.b)) {
      fail("adaptive_gauss_kronrod", a, b, value, error);
    }
    heap.pop();
    const Segment left = apply_rule(f, worst.a, mid);
    const Segment right = apply_rule(f, mid, worst.b);
    heap.push(left);
    heap.push(right);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
  }

  // Re-sum in a fixed order so the result does not depend on refinement history.
  std::vector<Segment> segments;
  segments.reserve(heap.size());
  while (!heap.empty()) {
    segments.push_back(heap.top());
    heap.pop();
  }
  std::sort(segments.begin(), segments.end(),
            [](const Segment& l, const Segment& r) { return l.a < r.a; });
  std::vector<double> values(segments.size());
  std::vector<double> errors(segments.size());
  for (std::size_t i = 0; i < segments.size(); ++i) {
    values[i] = segments[i].value;
    errors[i] = segments[i].error;
  }
  return {pairwise_sum(values), pairwise_sum(errors)};
}

QuadratureResult tanh_sinh(const Integrand& f, double a, double b,
                           const QuadratureConfig& config) {
  const auto levels = static_cast<std::size_t>(
      std::clamp(static_cast<int>(std::ceil(std::log2(config.max_subdivisions))), 4, 20));
  boost::math::quadrature::tanh_sinh<double> rule(levels);
  double error = 0.0;
  double l1 = 0.0;
  const double value = rule.integrate(f, a, b, config.rel_tol, &error, &l1);
  // Boost reports a relative error with respect to the L1 norm.
  const double absolute = error * std::max(l1, std::abs(value));
  if (!std::isfinite(value) || absolute > tolerance_for(value, config)) {
    fail("tanh_sinh", a, b, value, absolute);
  }
  return {value, absolute};
}

double composite_gauss(const Integrand& f, double a, double b, int panels) {
  std::vector<double> parts(static_cast<std::size_t>(panels));
  const double width = (b - a) / panels;
  for (int i = 0; i < panels; ++i) {
    const double lo = a + i * width;
    const double hi = (i + 1 == panels) ? b : lo + width;
    parts[static_cast<std::size_t>(i)] = PanelRule::integrate(f, lo, hi);
  }
  return pairwise_sum(parts);
}

QuadratureResult gauss_legendre_fixed(const Integrand& f, double a, double b,
                                      const QuadratureConfig& config) {
  const int panels = std::max(1, config.radial_nodes / static_cast<int>(kPanelPoints));
  const double coarse = composite_gauss(f, a, b, std::max(1, panels / 2));
  const double fine = composite_gauss(f, a, b, panels);
  const double error = std::abs(fine - coarse);
  if (!std::isfinite(fine) || error > tolerance_for(fine, config)) {
    fail("gauss_legendre_fixed", a, b, fine, error);
  }
  return {fine, error};
}

}  // namespace

std::string_view to_string(QuadratureScheme scheme) {
  switch (scheme) {
    case QuadratureScheme::adaptive_gauss_kronrod:
      return "adaptive_gauss_kronrod";
    case QuadratureScheme::tanh_sinh:
      return "tanh_sinh";
    case QuadratureScheme::gauss_legendre_fixed:
      return "gauss_legendre_fixed";
  }
  return "unknown";
}

QuadratureScheme parse_quadrature_scheme(std::string_view name) {
  if (name == "adaptive_gauss_kronrod" || name == "gk") {
    return QuadratureScheme::adaptive_gauss_kronrod;
  }
  if (name == "tanh_sinh") return QuadratureScheme::tanh_sinh;
  if (name == "gauss_legendre_fixed" || name == "gl") {
    return QuadratureScheme::gauss_legendre_fixed;
  }
  throw DomainError("unknown quadrature scheme '" + std::string(name) + "'");
}

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
    throw DomainError("quadrature tolerances must be positive");
  }
  if (max_subdivisions < 1) throw DomainError("max_subdivisions must be >= 1");
  if (radial_nodes < 1) throw DomainError("radial_nodes must be >= 1");
}

QuadratureResult integrate(const Integrand& f, double a, double b,
                           const QuadratureConfig& config) {
  if (!(a <= b)) throw DomainError("integration bounds must satisfy a <= b");
  if (a == b) return {0.0, 0.0};
  switch (config.scheme) {
    case QuadratureScheme::adaptive_gauss_kronrod:
      return adaptive_gauss_kronrod(f, a, b, config);
    case QuadratureScheme::tanh_sinh:
      return tanh_sinh(f, a, b, config);
    case QuadratureScheme::gauss_legendre_fixed:
      return gauss_legendre_fixed(f, a, b, config);
  }
  throw DomainError("unknown quadrature scheme");
}

QuadratureResult integrate_cosine_mapped(
    const std::function<double(double, double, double)>& f, double a, double b,
    const QuadratureConfig& config) {
  if (!(a <= b)) throw DomainError("integration bounds must satisfy a <= b");
  const double width = b - a;
  if (width == 0.0) return {0.0, 0.0};
  auto mapped = [&](double t) {
    const double s = std::sin(0.5 * t);
    const double c = std::cos(0.5 * t);
    const double from_a = width * s * s;
    const double to_b = width * c * c;
    const double x = from_a <= to_b ? a + from_a : b - to_b;
    // dx/dt = (width/2) sin t = width * s * c
    return f(x, from_a, to_b) * width * s * c;
  };
  return integrate(mapped, 0.0, std::numbers::pi, config);
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace dpp
