#include "dpp/counting.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <thread>

#include "dpp/errors.hpp"
#include "dpp/quadrature.hpp"
#include "dpp/specfun.hpp"

namespace dpp {

namespace {

void require_profile_inputs(double nu, double r) {
  if (!(nu > 0.5)) throw DomainError("counting: nu must exceed 1/2");
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError("counting: r must lie in [0, 1]");
}

double power_sum(const std::vector<double>& p, int power) {
  std::vector<double> terms(p.size());
  std::transform(p.begin(), p.end(), terms.begin(),
                 [power](double x) { return std::pow(x, power); });
  return pairwise_sum(terms);
}

// Visits the partitions of k as lists of parts in non-increasing order.
void for_each_partition(int k, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> parts;
  std::function<void(int, int)> recurse = [&](int remaining, int largest) {
    if (remaining == 0) {
      visit(parts);
      return;
    }
    for (int part = std::min(remaining, largest); part >= 1; --part) {
      parts.push_back(part);
      recurse(remaining - part, part);
      parts.pop_back();
    }
  };
  recurse(k, k);
}

// Bound on sum_{k>J} p_k from I_x(j,b) = x^j (1-x)^b / (j B(j,b)) 2F1(j+b, 1; j+1; x).
// For b > 1 the hypergeometric factor decreases in j, so every later ratio is
// at most x (J+b)/(J+1). For b <= 1 it lies in [1, 1/(1-x)] while the
// prefactor ratio (j+b)/(j+1) is at most one, giving p_J x/(1-x)^2.
double tail_majorant(double pj, int j, double b, double x) {
  if (b <= 1.0) return pj * x / ((1.0 - x) * (1.0 - x));
  const double q = x * (j + b) / (j + 1.0);
  if (q >= 1.0) return std::numeric_limits<double>::infinity();
  return pj * q / (1.0 - q);
}

}  // namespace

double success_probability(double nu, double r, int j) {
  require_profile_inputs(nu, r);
  if (j < 1) throw DomainError("success_probability: j must be >= 1");
  const double b = 2.0 * nu - 1.0;
  const double log_coeff =
      std::log(b) + log_pochhammer(2.0 * nu, j - 1) - std::lgamma(static_cast<double>(j));
  return std::exp(log_coeff) * incomplete_beta({r, j, b});
}

double success_probability_beta_ratio(double nu, double r, int j) {
  require_profile_inputs(nu, r);
  if (j < 1) throw DomainError("success_probability_beta_ratio: j must be >= 1");
  const double b = 2.0 * nu - 1.0;
  return incomplete_beta({r, j, b}) / incomplete_beta({1.0, j, b});
}

BernoulliProfile build_profile(double nu, double r, double epsilon,
                               const ProfileOptions& options) {
  require_profile_inputs(nu, r);
  if (!(r > 0.0 && r < 1.0)) throw DomainError("build_profile: r must lie in (0, 1)");
  if (!(epsilon > 0.0)) throw DomainError("build_profile: epsilon must be positive");

  BernoulliProfile profile;
  profile.nu = nu;
  profile.r = r;
  auto& p = profile.probabilities;
  const double r2 = r * r;
  const double b = 2.0 * nu - 1.0;
  const double ratio_cap = std::min(r2 + 0.01, 0.5 * (1.0 + r2));

  for (int j = 1; j <= options.max_terms; ++j) {
    const double pj = success_probability(nu, r, j);
    const double check = success_probability_beta_ratio(nu, r, j);
    if (std::abs(pj - check) > options.agreement_tol * std::max(std::abs(check), 1e-300)) {
      throw QuadratureFailure("build_profile: Pochhammer and beta-ratio forms of p_" +
                                  std::to_string(j) + " disagree",
                              pj, std::abs(pj - check));
    }
    p.push_back(pj);
    if (pj == 0.0) {
      profile.tail_bound = 0.0;
      return profile;
    }
    if (j < 2 || pj >= epsilon) continue;
    if (pj / p[j - 2] >= ratio_cap) continue;
    const double tail = tail_majorant(pj, j, b, r2);
    if (tail < epsilon) {
      profile.tail_bound = tail;
      return profile;
    }
  }
  throw TruncationFailure("build_profile: tail bound not reached within " +
                          std::to_string(options.max_terms) + " terms");
}

double generating_function(const BernoulliProfile& profile, double s) {
  if (!(s >= -1.0) || !std::isfinite(s)) {
    throw DomainError("generating_function: s must be finite and >= -1");
  }
  std::vector<double> logs(profile.probabilities.size());
  std::transform(profile.probabilities.begin(), profile.probabilities.end(), logs.begin(),
                 [s](double pj) { return std::log1p(s * pj); });
  return std::exp(pairwise_sum(logs));
}

CountDistribution distribution(const BernoulliProfile& profile) {
  const auto& p = profile.probabilities;
  CountDistribution out;
  out.pmf.assign(p.size() + 1, 0.0);
  out.pmf[0] = 1.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    for (std::size_t k = j + 1; k >= 1; --k) {
      out.pmf[k] = out.pmf[k] * (1.0 - p[j]) + out.pmf[k - 1] * p[j];
    }
    out.pmf[0] *= 1.0 - p[j];
  }
  std::vector<double> spread(p.size());
  std::transform(p.begin(), p.end(), spread.begin(), [](double x) { return x * (1.0 - x); });
  out.mean = pairwise_sum(p);
  out.variance = pairwise_sum(spread);
  return out;
}

double binomial_moment(const BernoulliProfile& profile, int k) {
  if (k < 1 || k > kMaxBinomialMomentOrder) {
    throw DomainError("binomial_moment: k must lie in [1, " +
                      std::to_string(kMaxBinomialMomentOrder) + "]");
  }
  std::vector<double> sums(static_cast<std::size_t>(k) + 1, 0.0);
  for (int l = 1; l <= k; ++l) sums[static_cast<std::size_t>(l)] = power_sum(profile.probabilities, l);

  // A cycle type with m_i cycles of length i covers k!/prod(i^{m_i} m_i!)
  // permutations; dividing by k! leaves 1/prod(i^{m_i} m_i!).
  double total = 0.0;
  for_each_partition(k, [&](const std::vector<int>& parts) {
    double term = 1.0;
    double weight = 1.0;
    int run = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const int len = parts[i];
      term *= (len % 2 == 1 ? 1.0 : -1.0) * sums[static_cast<std::size_t>(len)];
      run = (i > 0 && parts[i - 1] == len) ? run + 1 : 1;
      weight *= len * run;
    }
    total += term / weight;
  });
  return total;
}

SeriesVariance variance_series(double nu, double r, double epsilon) {
  const auto profile = build_profile(nu, r, epsilon);
  const double first = pairwise_sum(profile.probabilities);
  const double second = power_sum(profile.probabilities, 2);
  return {first - second, profile.tail_bound};
}

std::vector<std::uint64_t> sample_counts(const BernoulliProfile& profile, std::uint64_t seed,
                                         std::int64_t n_samples, int threads) {
  if (n_samples < 1) throw DomainError("sample_counts: n_samples must be >= 1");
  if (threads < 1) throw DomainError("sample_counts: threads must be >= 1");
  const auto& p = profile.probabilities;
  const std::size_t bins = p.size() + 1;

  auto run = [&](std::int64_t begin, std::int64_t end, std::vector<std::uint64_t>& hist) {
    hist.assign(bins, 0);
    const auto seed_lo = static_cast<std::uint32_t>(seed);
    const auto seed_hi = static_cast<std::uint32_t>(seed >> 32);
    for (std::int64_t i = begin; i < end; ++i) {
      const auto idx = static_cast<std::uint64_t>(i);
      std::seed_seq seq{seed_lo, seed_hi, static_cast<std::uint32_t>(idx),
                        static_cast<std::uint32_t>(idx >> 32)};
      std::mt19937_64 gen(seq);
      std::size_t count = 0;
      for (double pj : p) {
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        if (u < pj) ++count;
      }
      ++hist[count];
    }
  };

  const int workers = static_cast<int>(std::min<std::int64_t>(threads, n_samples));
  std::vector<std::vector<std::uint64_t>> partial(static_cast<std::size_t>(workers));
  std::vector<std::thread> pool;
  const std::int64_t chunk = (n_samples + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::int64_t begin = w * chunk;
    const std::int64_t end = std::min(n_samples, begin + chunk);
    pool.emplace_back(run, begin, end, std::ref(partial[static_cast<std::size_t>(w)]));
  }
  for (auto& t : pool) t.join();

  std::vector<std::uint64_t> histogram(bins, 0);
  for (const auto& h : partial) {
    for (std::size_t k = 0; k < bins; ++k) histogram[k] += h[k];
  }
  return histogram;
}

}  // namespace dpp
