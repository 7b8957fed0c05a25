#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "dpp/kernels.hpp"
#include "dpp/quadrature.hpp"

namespace dpp {

enum class VarianceRoute { shirai, geometric, int1, int3, series };

std::string_view to_string(VarianceRoute route);

struct VarianceResult {
  double value = 0.0;
  double error_estimate = 0.0;
  VarianceRoute route = VarianceRoute::int1;
};

/// Variance of the number of particles of the level-n Ginibre-type process
/// in D_r, from Shirai's double integral. The inner integral is done in
/// closed form: int_0^{t ^ 4r^2} sqrt(1 - x/4r^2) dx/sqrt(x) = 2r(th + sin th cos th)
/// with sin th = sqrt(t)/(2r) clipped to 1.
VarianceResult variance_euclidean_shirai(const EuclideanLevel& level, double r,
                                         const QuadratureConfig& config);

/// Same variance from translation invariance:
/// (2/pi) int_0^inf rho e^{-rho^2} L_n(rho^2)^2 Area(D_r^c n D_r(rho)) drho.
VarianceResult variance_euclidean_geometric(const EuclideanLevel& level, double r,
                                            const QuadratureConfig& config);

/// Variance of N_r for the hyperbolic-type process:
///   V = 4 pi int_0^1 rho (1-rho^2)^{-2} f(rho) I(rho, r) drho,
/// where I is the un-doubled lens integral. The 4 pi collects the overall
/// factor 2 of the Fubini step, the angular 2 pi, and nothing else; I itself
/// carries no factor 2. The radial variable is the distance d = artanh(rho);
/// beyond d = 2 artanh(r) the image disc lies outside D_r and I equals half
/// the hyperbolic area of D_r.
VarianceResult variance_hyperbolic(const HyperbolicLevel& level, double r,
                                   const QuadratureConfig& config);

/// As variance_hyperbolic, with I from hyperbolic_lens_integral_transformed.
VarianceResult variance_hyperbolic_via_transformed(const HyperbolicLevel& level, double r,
                                                   const QuadratureConfig& config);

enum class AsymptoticForm {
  arccos_one_minus_two_rho_sq,  // arccos(1 - 2|z|^2)
  pi_minus_two_arccos_rho,      // pi - 2 arccos(|z|)
};

/// C_m^nu = int_D lambda_0(dz) f(d(z,0)) arccos(1 - 2|z|^2), the limit of
/// (1 - r^2) V_m^nu(N_r) as r -> 1.
double asymptotic_constant(const HyperbolicLevel& level, const QuadratureConfig& config,
                           AsymptoticForm form = AsymptoticForm::arccos_one_minus_two_rho_sq);

/// Upper bound 2(nu - m) - 1 on the asymptotic constant.
double asymptotic_constant_bound(const HyperbolicLevel& level);

struct ContractionRow {
  double curvature_scale = 0.0;  // R
  double scaled_variance = 0.0;  // R^2 V_m^{R^2/2}(N_{r/R})
  double euclidean_target = 0.0; // V_m(N_r) for the Ginibre-type process
  double ratio = 0.0;            // scaled_variance / euclidean_target
  double variance = 0.0;         // V_m^{R^2/2}(N_{r/R}) without the R^2 factor
  double unscaled_ratio = 0.0;   // variance / euclidean_target
};

/// Flat limit of the hyperbolic process: nu = R^2/2, radius r/R, variance
/// scaled by R^2, compared against the Euclidean level-m variance.
///
/// Both processes have about r^2 expected points in the respective discs
/// (density (R^2 - 1)/pi against hyperbolic area ~ pi r^2/R^2), so it is the
/// unscaled variance that tends to the Euclidean one; the R^2-scaled ratio
/// grows like R^2. Both are reported.
std::vector<ContractionRow> contraction_check(int m, double r,
                                              std::span<const double> scales,
                                              const QuadratureConfig& config);

}  // namespace dpp
