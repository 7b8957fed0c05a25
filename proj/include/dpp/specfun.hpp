#pragma once

#include <cmath>
#include <concepts>

#include "dpp/errors.hpp"
#include "dpp/quadrature.hpp"

namespace dpp {

/// Laguerre polynomial L_n(x) by the forward three-term recurrence
/// (k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1}.
template <std::floating_point T>
T laguerre(int n, T x) {
  if (n < 0) throw DomainError("laguerre: degree must be non-negative");
  if (n == 0) return T(1);
  T prev = T(1);
  T curr = T(1) - x;
  for (int k = 1; k < n; ++k) {
    const T next = ((T(2 * k + 1) - x) * curr - T(k) * prev) / T(k + 1);
    prev = curr;
    curr = next;
  }
  return curr;
}

/// Jacobi polynomial P_m^{(0,beta)}(x), i.e. the alpha = 0 member of the
/// family, by the standard recurrence
///   2k(k+b)(2k+b-2) P_k = (2k+b-1)[(2k+b)(2k+b-2) x - b^2] P_{k-1}
///                          - 2(k-1)(k+b-1)(2k+b) P_{k-2}.
/// Stable for beta up to a few thousand.
template <std::floating_point T>
T jacobi_zero_beta(int m, T beta, T x) {
  if (m < 0) throw DomainError("jacobi_zero_beta: degree must be non-negative");
  if (!(beta > T(-1))) throw DomainError("jacobi_zero_beta: beta must exceed -1");
  if (m == 0) return T(1);
  T prev = T(1);
  T curr = T(1) + (beta + T(2)) * (x - T(1)) / T(2);
  for (int k = 2; k <= m; ++k) {
    const T kk = T(k);
    const T s = T(2) * kk + beta;
    const T lhs = T(2) * kk * (kk + beta) * (s - T(2));
    const T a = (s - T(1)) * (s * (s - T(2)) * x - beta * beta);
    const T c = T(2) * (kk - T(1)) * (kk + beta - T(1)) * s;
    const T next = (a * curr - c * prev) / lhs;
    prev = curr;
    curr = next;
  }
  return curr;
}

/// Rising factorial (a)_j = a (a+1) ... (a+j-1); (a)_0 = 1.
template <std::floating_point T>
T pochhammer(T a, int j) {
  if (j < 0) throw DomainError("pochhammer: count must be non-negative");
  T product = T(1);
  for (int i = 0; i < j; ++i) product *= a + T(i);
  return product;
}

/// log (a)_j for a > 0, via log-gamma. Use when (a)_j overflows.
template <std::floating_point T>
T log_pochhammer(T a, int j) {
  if (j < 0) throw DomainError("log_pochhammer: count must be non-negative");
  if (!(a > T(0))) throw DomainError("log_pochhammer: requires a > 0");
  if (j == 0) return T(0);
  return std::lgamma(a + T(j)) - std::lgamma(a);
}

struct IncompleteBetaRequest {
  double r = 0.0;       // radius; the upper limit is r^2
  int first_index = 1;  // j >= 1
  double second_parameter = 1.0;  // b > 0
};

/// B_r(j, b) = int_0^{r^2} s^{j-1} (1-s)^{b-1} ds by adaptive Gauss-Kronrod.
///
/// For b < 1 with r > 0.99 the variable v = (1-s)^b is used, which turns the
/// integrable endpoint singularity at s = 1 into a bounded integrand.
/// Accuracy is relative (default 1e-13), which implies the absolute targets
/// 1e-12 / 1e-10 since B_r(j, b) <= B_1(1, b) = 1/b.
double incomplete_beta(const IncompleteBetaRequest& request);
double incomplete_beta(const IncompleteBetaRequest& request,
                       const QuadratureConfig& config);

/// Quadrature settings used by incomplete_beta when none are supplied.
QuadratureConfig incomplete_beta_default_config();

}  // namespace dpp
