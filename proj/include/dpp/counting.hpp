#pragma once

#include <cstdint>
#include <vector>

namespace dpp {

/// Success probabilities p_1..p_J of the independent Bernoulli variables
/// whose sum has the law of N_r for the weighted Bergman process (m = 0):
///   p_j = (2nu-1) (2nu)_{j-1} / (j-1)! B_r(j, 2nu-1) = B_r(j, 2nu-1) / B_1(j, 2nu-1).
/// `probabilities[j-1]` holds p_j.
struct BernoulliProfile {
  double nu = 1.0;
  double r = 0.0;
  std::vector<double> probabilities;
  double tail_bound = 0.0;  // bound on sum_{j > J} p_j

  int truncation() const noexcept { return static_cast<int>(probabilities.size()); }
};

struct CountDistribution {
  std::vector<double> pmf;  // P(N_r = k), k = 0..J
  double mean = 0.0;
  double variance = 0.0;
};

struct ProfileOptions {
  int max_terms = 100000;
  double agreement_tol = 1e-10;  // Pochhammer form vs beta-ratio form, relative
};

/// p_j in the Pochhammer form, with the coefficient formed on the log scale.
double success_probability(double nu, double r, int j);
/// p_j as the ratio of incomplete to complete beta integrals.
double success_probability_beta_ratio(double nu, double r, int j);

/// Builds p_1..p_J, stopping at the first J with p_J < epsilon, empirical
/// ratio p_J / p_{J-1} below min(r^2 + 0.01, (1 + r^2)/2), and an analytic
/// majorant of sum_{j>J} p_j below epsilon (see tail_bound). Throws
/// TruncationFailure past `max_terms` and QuadratureFailure if the two forms
/// of p_j disagree.
BernoulliProfile build_profile(double nu, double r, double epsilon,
                               const ProfileOptions& options = {});

/// E[(1+s)^{N_r}] = prod_j (1 + s p_j). Any finite s >= -1 is accepted: the
/// profile is finite, so the product needs no convergence condition.
double generating_function(const BernoulliProfile& profile, double s);

/// Poisson-binomial law of N_r by sequential convolution.
CountDistribution distribution(const BernoulliProfile& profile);

/// Largest k accepted by binomial_moment.
inline constexpr int kMaxBinomialMomentOrder = 8;

/// E[C(N_r, k)] from the sum over permutations of S_k of products over
/// cycles of (-1)^{|c|+1} sum_j p_j^{|c|}, grouped by cycle type.
double binomial_moment(const BernoulliProfile& profile, int k);

struct SeriesVariance {
  double value = 0.0;
  double error = 0.0;
};

/// V(N_r) = sum_j p_j - sum_j p_j^2 over a profile built with `epsilon`.
SeriesVariance variance_series(double nu, double r, double epsilon);

/// Histogram of n_samples draws of sum_j Bernoulli(p_j).
///
/// Draw i uses its own std::mt19937_64 stream seeded with
/// std::seed_seq{seed_lo, seed_hi, i_lo, i_hi}; uniforms are the top 53 bits
/// scaled by 2^-53. The histogram therefore does not depend on `threads`.
std::vector<std::uint64_t> sample_counts(const BernoulliProfile& profile, std::uint64_t seed,
                                         std::int64_t n_samples, int threads = 1);

}  // namespace dpp
