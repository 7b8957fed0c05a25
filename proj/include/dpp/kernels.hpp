#pragma once

#include <complex>

#include "dpp/geometry.hpp"

namespace dpp {

/// Landau level n >= 0 of the planar (Ginibre-type) process.
class EuclideanLevel {
 public:
  explicit EuclideanLevel(int n);
  int n() const noexcept { return n_; }

 private:
  int n_;
};

/// Hyperbolic Landau level: magnetic strength nu > 1/2 and index
/// 0 <= m <= floor(nu - 1/2) with 2(nu - m) - 1 > 0.
class HyperbolicLevel {
 public:
  HyperbolicLevel(double nu, int m);

  double nu() const noexcept { return nu_; }
  int m() const noexcept { return m_; }
  /// 2(nu - m) - 1, the Jacobi parameter and kernel prefactor numerator.
  double beta() const noexcept { return beta_; }
  /// 4 m (2 nu - m - 1)
  double energy() const noexcept { return 4.0 * m_ * (2.0 * nu_ - m_ - 1.0); }

 private:
  double nu_;
  int m_;
  double beta_;
};

/// |K_n(z,w)|^2 e^{-|z|^2} e^{-|w|^2} / pi^2 = e^{-|z-w|^2} L_n(|z-w|^2)^2 / pi^2.
double fock_kernel_sq_weighted(const EuclideanLevel& level, Point z, Point w);

/// G_m^nu(z, w) with the principal branch of (1 - z conj(w))^{-2 nu}.
std::complex<double> hyperbolic_kernel(const HyperbolicLevel& level, Point z, Point w);

/// f_{nu,m} at distance artanh(rho) from the origin:
/// [(beta/pi) (1-rho^2)^{nu-m} P_m^{(0,beta)}(1 - 2 rho^2)]^2.
double f_profile(const HyperbolicLevel& level, double rho);

/// f_{nu,m} as a function of the distance d = artanh(rho), evaluated with
/// 1 - rho^2 = sech^2 d so that large distances keep full precision.
double f_profile_at_distance(const HyperbolicLevel& level, double distance);

}  // namespace dpp
