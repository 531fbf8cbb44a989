#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "nzflow/errors.hpp"
#include "nzflow/multigraph.hpp"
#include "nzflow/orientation.hpp"
#include "nzflow/parallel.hpp"
#include "nzflow/rational.hpp"

namespace nzflow {

// Limiting Poisson mean of the k-cycle count: lambda_k = 4^k / (2k).
inline Rational cycle_poisson_mean(int k) {
  if (k < 1) throw std::domain_error("cycle_poisson_mean: k must be >= 1");
  return Rational(boost::multiprecision::pow(BigInt(4), static_cast<unsigned>(k)), 2 * k);
}

// Number of orientations of a k-cycle with exactly i vertices of in-degree 2
// in the cycle: choose the 2i extremal vertices, then two sweeps remain.
inline BigInt cycle_orientation_count(int k, int i) {
  if (k < 1 || i < 0 || 2 * i > k)
    throw std::domain_error("cycle_orientation_count: need 0 <= 2i <= k");
  return 2 * binomial(k, 2 * i);
}

// Limit of E(Y X_k) / E Y, closed form (4^k + (-4/5)^k) / (2k).
inline Rational weighted_cycle_mean(int k) {
  if (k < 1) throw std::domain_error("weighted_cycle_mean: k must be >= 1");
  return (rational_pow(Rational(4), k) + rational_pow(Rational(-4, 5), k)) / (2 * k);
}

// Same limit through the orientation-count route:
//   (8/5)^k / (2k) * sum_i a_i (3/2)^{2i}.
inline Rational weighted_cycle_mean_via_orientations(int k) {
  if (k < 1) throw std::domain_error("weighted_cycle_mean_via_orientations: k must be >= 1");
  Rational s = 0;
  const Rational nine_fourths(9, 4);
  Rational pw = 1;
  for (int i = 0; 2 * i <= k; ++i) {
    s += Rational(cycle_orientation_count(k, i)) * pw;
    pw *= nine_fourths;
  }
  return rational_pow(Rational(8, 5), k) * s / (2 * k);
}

// delta_k = mu_k / lambda_k - 1 = (-1/5)^k.
inline Rational cycle_mean_shift(int k) {
  if (k < 1) throw std::domain_error("cycle_mean_shift: k must be >= 1");
  return weighted_cycle_mean(k) / cycle_poisson_mean(k) - 1;
}

// Partial sums of exp(sum_k lambda_k delta_k^2) = exp(-log(1 - 4/25)/2),
// which converges geometrically (ratio 4/25) to 5/sqrt(21).
inline double variance_criterion_constant(int k_max) {
  if (k_max < 1) throw std::domain_error("variance_criterion_constant: k_max must be >= 1");
  double s = 0.0;
  double pw = 1.0;
  for (int k = 1; k <= k_max; ++k) {
    pw *= 4.0 / 25.0;
    s += 0.5 * pw / k;  // lambda_k delta_k^2 = (4/25)^k / (2k)
  }
  return std::exp(s);
}

struct CycleMomentRow {
  int k = 0;
  Rational poisson_mean;   // lambda_k
  Rational weighted_mean;  // mu_k (both routes agree by construction)
  Rational mean_shift;     // delta_k
};

inline std::vector<CycleMomentRow> cycle_moment_table(int k_max) {
  std::vector<CycleMomentRow> rows;
  rows.reserve(k_max);
  for (int k = 1; k <= k_max; ++k) {
    CycleMomentRow row;
    row.k = k;
    row.poisson_mean = cycle_poisson_mean(k);
    row.weighted_mean = weighted_cycle_mean(k);
    if (row.weighted_mean != weighted_cycle_mean_via_orientations(k))
      throw std::logic_error("cycle_moment_table: the two weighted-mean routes disagree");
    row.mean_shift = cycle_mean_shift(k);
    rows.push_back(std::move(row));
  }
  return rows;
}

struct JointMomentEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  long long trials = 0;
};

namespace detail {

inline long long falling(long long x, int j) {
  long long r = 1;
  for (int t = 0; t < j; ++t) r *= (x - t);
  return r;
}

}  // namespace detail

// Monte Carlo estimate of E(Y [X_k]_j) / E Y with an exact per-sample count
// Y (so n is capped where backtracking is instant) and a jackknife standard
// error for the ratio estimator. Trials use per-index child seeds and exact
// integer accumulation, so the result is independent of scheduling.
inline JointMomentEstimate mc_joint_moment(int n, long long trials, int k, std::uint64_t seed,
                                           int falling_order = 1, int max_n = 14,
                                           int threads = 0) {
  if (n <= 0 || n % 2 != 0) throw std::domain_error("mc_joint_moment: n must be even and positive");
  if (n > max_n) throw size_cap_error("mc_joint_moment: n exceeds the exact-count cap");
  if (trials < 1) throw std::domain_error("mc_joint_moment: need at least one trial");
  if (threads <= 0) threads = default_thread_count();

  std::vector<long long> num(trials), den(trials);
  parallel_for(trials, threads, [&](long long t) {
    const Pairing p = sample_pairing(n, derive_seed(seed, static_cast<std::uint64_t>(t)));
    const long long y = count_valid(p).convert_to<long long>();
    const long long xk = count_cycles(p, k);
    num[t] = y * detail::falling(xk, falling_order);
    den[t] = y;
  });

  __int128 sn = 0, sd = 0;
  for (long long t = 0; t < trials; ++t) {
    sn += num[t];
    sd += den[t];
  }
  JointMomentEstimate e;
  e.trials = trials;
  e.estimate = static_cast<double>(sn) / static_cast<double>(sd);

  // Leave-one-out jackknife for the ratio.
  double mean_loo = 0.0;
  std::vector<double> loo(trials);
  for (long long t = 0; t < trials; ++t) {
    loo[t] = static_cast<double>(sn - num[t]) / static_cast<double>(sd - den[t]);
    mean_loo += loo[t];
  }
  mean_loo /= static_cast<double>(trials);
  double ss = 0.0;
  for (long long t = 0; t < trials; ++t) {
    const double d = loo[t] - mean_loo;
    ss += d * d;
  }
  e.std_error = std::sqrt(ss * static_cast<double>(trials - 1) / static_cast<double>(trials));
  return e;
}

}  // namespace nzflow
