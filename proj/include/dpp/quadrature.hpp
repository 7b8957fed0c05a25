#pragma once

#include <functional>
#include <span>
#include <string_view>

namespace dpp {

enum class QuadratureScheme {
  adaptive_gauss_kronrod,
  tanh_sinh,
  gauss_legendre_fixed,
};

std::string_view to_string(QuadratureScheme scheme);
QuadratureScheme parse_quadrature_scheme(std::string_view name);

/// Settings shared by every one-dimensional integral in the library.
///
/// `max_subdivisions` bounds the number of intervals kept by the adaptive
/// Gauss-Kronrod driver (and the refinement depth of tanh-sinh).
/// `radial_nodes` is the total node budget of the fixed Gauss-Legendre scheme.
/// A result is accepted when its error estimate is below
/// max(abs_tol, rel_tol * |value|).
struct QuadratureConfig {
  QuadratureScheme scheme = QuadratureScheme::adaptive_gauss_kronrod;
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  int max_subdivisions = 400;
  int radial_nodes = 400;

  /// Throws DomainError on non-positive tolerances or budgets.
  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};

using Integrand = std::function<double(double)>;

/// Integrates `f` over the finite interval [a, b] (a <= b).
/// Throws QuadratureFailure when the tolerance cannot be met within budget.
QuadratureResult integrate(const Integrand& f, double a, double b,
                           const QuadratureConfig& config);

/// Integrates over [a, b] after the map x = a + (b - a)(1 - cos t)/2,
/// t in [0, pi]. Square-root endpoint behaviour at either end becomes smooth.
/// `f` receives (x, x - a, b - x) with both distances computed without
/// cancellation.
QuadratureResult integrate_cosine_mapped(
    const std::function<double(double, double, double)>& f, double a, double b,
    const QuadratureConfig& config);

/// Pairwise (cascade) summation in index order.
double pairwise_sum(std::span<const double> values);

}  // namespace dpp
