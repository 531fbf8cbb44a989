#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "nzflow/errors.hpp"
#include "nzflow/lognum.hpp"
#include "nzflow/parallel.hpp"
#include "nzflow/rational.hpp"

namespace nzflow {

// Overlap pattern of two orientations of one pairing: k vertices are
// in-vertices in both; of the same-role vertices, k11 (in/in) and k00
// (out/out) have coinciding special points; of the opposite-role ones, k10
// (in first, out second) and k01 (out first, in second) coincide.
struct OverlapCounts {
  int k = 0, k00 = 0, k01 = 0, k10 = 0, k11 = 0;

  bool operator==(const OverlapCounts&) const = default;
};

inline bool in_index_set(const OverlapCounts& c, int n) {
  if (n <= 0 || n % 2 != 0) return false;
  const int h = n / 2;
  return c.k >= 0 && c.k00 >= 0 && c.k01 >= 0 && c.k10 >= 0 && c.k11 >= 0 && c.k <= h &&
         std::max(c.k00, c.k11) <= c.k && std::max(c.k01, c.k10) <= h - c.k;
}

// Visits every index exactly once, outer loop on k, then (k00, k11), then
// (k01, k10). Dominant terms cluster near k = n/4.
template <class F>
inline void for_each_overlap(int n, F&& f) {
  const int h = n / 2;
  for (int k = 0; k <= h; ++k)
    for (int k00 = 0; k00 <= k; ++k00)
      for (int k11 = 0; k11 <= k; ++k11)
        for (int k01 = 0; k01 <= h - k; ++k01)
          for (int k10 = 0; k10 <= h - k; ++k10) f(OverlapCounts{k, k00, k01, k10, k11});
}

inline std::vector<OverlapCounts> enumerate_index_set(int n) {
  std::vector<OverlapCounts> out;
  for_each_overlap(n, [&](const OverlapCounts& c) { out.push_back(c); });
  return out;
}

// Closed form sum_k (k+1)^2 (n/2-k+1)^2.
inline BigInt index_set_size(int n) {
  if (n <= 0 || n % 2 != 0) throw std::domain_error("index_set_size: n must be even and positive");
  BigInt total = 0;
  const int h = n / 2;
  for (int k = 0; k <= h; ++k) total += BigInt(k + 1) * (k + 1) * (h - k + 1) * (h - k + 1);
  return total;
}

// ---------------------------------------------------------------------------
// First moment of the number of valid orientations:
//   E Y = C(n, n/2) * 5^n * (5n/2)! / M(5n)
//       = n! 5^n (5n/2)!^2 2^{5n/2} / ((n/2)!^2 (5n)!).
// Both closed forms are evaluated and must agree exactly.
// ---------------------------------------------------------------------------

inline Rational first_moment_exact(int n) {
  if (n <= 0 || n % 2 != 0)
    throw std::domain_error("first_moment_exact: n must be even and positive");
  FactorialTable F(5 * n);
  const int half_points = 5 * n / 2;
  const BigInt m5n = F[5 * n] / (F[half_points] << half_points);
  const BigInt pow5 = boost::multiprecision::pow(BigInt(5), static_cast<unsigned>(n));

  Rational via_selection(binomial(n, n / 2) * pow5 * F[half_points], m5n);
  Rational via_factorials(F[n] * pow5 * F[half_points] * F[half_points] << half_points,
                          F[n / 2] * F[n / 2] * F[5 * n]);
  if (via_selection != via_factorials)
    throw std::logic_error("first_moment_exact: closed forms disagree");
  return via_selection;
}

namespace detail {

// lf[i] = log(i!), shared across a summation.
inline std::vector<double> log_factorials(int max_n) {
  std::vector<double> lf(static_cast<size_t>(max_n) + 1);
  for (int i = 0; i <= max_n; ++i) lf[i] = std::lgamma(static_cast<double>(i) + 1.0);
  return lf;
}

inline double log_num_pairings(const std::vector<double>& lf, int s) {
  return lf[s] - lf[s / 2] - (s / 2) * std::log(2.0);
}

}  // namespace detail

// E Y evaluated directly in log space (no asymptotic approximation).
inline LogNumber first_moment_log(int n) {
  if (n <= 0 || n % 2 != 0) throw std::domain_error("first_moment_log: n must be even and positive");
  auto lf = detail::log_factorials(5 * n);
  const double v = (lf[n] - 2.0 * lf[n / 2]) + n * std::log(5.0) + lf[5 * n / 2] -
                   detail::log_num_pairings(lf, 5 * n);
  return LogNumber::from_log(v);
}

// Stirling limit E Y ~ (25/8)^{n/2} sqrt(5).
inline LogNumber first_moment_asymptotic(int n) {
  if (n <= 0 || n % 2 != 0)
    throw std::domain_error("first_moment_asymptotic: n must be even and positive");
  return LogNumber::from_log(0.5 * n * std::log(25.0 / 8.0) + 0.5 * std::log(5.0));
}

// ---------------------------------------------------------------------------
// Second moment. For an overlap index the number of configurations
// (pairing, orientation pair) is
//   n! / (k00! k01! k10! k11! (k-k00)! (k-k11)! (n/2-k-k01)! (n/2-k-k10)!)
//   * 5^n * 4^{n-k00-k01-k10-k11} * m! * (5n/2-m)!,
// where m = n + k + k00 + k11 - k01 - k10 counts the points that are
// in-points under both orientations. Summed over the whole index set and
// divided by M(5n) this gives E[Y^2]: the sum ranges over ordered pairs of
// orientations and contains the identical pairs entirely inside the index
// (n/2, n/2, 0, 0, n/2), where the term equals E[Y] * M(5n). The n = 2
// enumeration test pins that reading against brute force.
// ---------------------------------------------------------------------------

inline BigInt second_moment_config_count(int n, const OverlapCounts& c, const FactorialTable& F) {
  const int h = n / 2;
  const int e4 = n - c.k00 - c.k01 - c.k10 - c.k11;
  const int m = n + c.k + c.k00 + c.k11 - c.k01 - c.k10;
  BigInt num = F[n] * boost::multiprecision::pow(BigInt(5), static_cast<unsigned>(n)) *
               boost::multiprecision::pow(BigInt(4), static_cast<unsigned>(e4)) * F[m] *
               F[5 * n / 2 - m];
  BigInt den = F[c.k00] * F[c.k01] * F[c.k10] * F[c.k11] * F[c.k - c.k00] * F[c.k - c.k11] *
               F[h - c.k - c.k01] * F[h - c.k - c.k10];
  return num / den;  // multinomial is integral, so this divides exactly
}

inline Rational second_moment_term(int n, const OverlapCounts& c, const FactorialTable& F) {
  if (!in_index_set(c, n))
    throw std::domain_error("second_moment_term: index outside the overlap index set");
  return Rational(second_moment_config_count(n, c, F), num_pairings(5 * n));
}

inline Rational second_moment_term(int n, const OverlapCounts& c) {
  FactorialTable F(5 * n);
  return second_moment_term(n, c, F);
}

// Exact E[Y^2] by summation over the full index set; capped because rational
// arithmetic cost grows quickly (the anchor tests only need tiny n).
inline Rational second_moment_exact(int n, int cap_n = 40) {
  if (n <= 0 || n % 2 != 0)
    throw std::domain_error("second_moment_exact: n must be even and positive");
  if (n > cap_n)
    throw size_cap_error("second_moment_exact: n exceeds the exact-arithmetic cap; use the log path");
  FactorialTable F(5 * n);
  BigInt total = 0;
  for_each_overlap(n, [&](const OverlapCounts& c) { total += second_moment_config_count(n, c, F); });
  return Rational(total, num_pairings(5 * n));
}

// Log-space E[Y^2], exact summation of all |I(n)| terms (~n^5/30 of them).
//
// Accumulation is a deterministic two-pass scheme: pass one finds the
// maximum term exponent per k-stripe, pass two accumulates every term as a
// fixed-point integer 2^63 * exp(log term - shift) into a per-stripe 128-bit
// counter. Stripe results combine in k order, so the value is bit-identical
// for any worker count. Terms more than 45 nats below the peak quantise to
// zero; with < 2^34 terms in total this perturbs the sum by < 1e-15 relative.
inline LogNumber second_moment_log(int n, int threads = 0) {
  if (n <= 0 || n % 2 != 0) throw std::domain_error("second_moment_log: n must be even and positive");
  if (threads <= 0) threads = default_thread_count();
  const int h = n / 2;
  const auto lf = detail::log_factorials(5 * n);
  const double L4 = std::log(4.0), L5 = std::log(5.0);
  const double base = lf[n] + n * L5 + n * L4 - detail::log_num_pairings(lf, 5 * n);

  // D[j] folds the two pairing factorials; the per-axis tables fold one
  // multinomial denominator pair plus that axis' share of the 4-power.
  std::vector<double> D(static_cast<size_t>(5 * n / 2) + 1);
  for (int j = 0; j <= 5 * n / 2; ++j) D[j] = lf[j] + lf[5 * n / 2 - j];

  struct StripeTables {
    std::vector<double> same;   // axis k00 / k11: lf[s] + lf[k-s] + s log4
    std::vector<double> mixed;  // axis k01 / k10: lf[t] + lf[h-k-t] + t log4
  };
  auto make_tables = [&](int k) {
    StripeTables t;
    t.same.resize(static_cast<size_t>(k) + 1);
    for (int s = 0; s <= k; ++s) t.same[s] = lf[s] + lf[k - s] + s * L4;
    t.mixed.resize(static_cast<size_t>(h - k) + 1);
    for (int u = 0; u <= h - k; ++u) t.mixed[u] = lf[u] + lf[h - k - u] + u * L4;
    return t;
  };

  std::vector<double> stripe_max(static_cast<size_t>(h) + 1,
                                 -std::numeric_limits<double>::infinity());
  parallel_for(h + 1, threads, [&](long long kk) {
    const int k = static_cast<int>(kk);
    const auto t = make_tables(k);
    double mx = -std::numeric_limits<double>::infinity();
    for (int k00 = 0; k00 <= k; ++k00)
      for (int k11 = 0; k11 <= k; ++k11)
        for (int k01 = 0; k01 <= h - k; ++k01) {
          const double part = base - t.same[k00] - t.same[k11] - t.mixed[k01];
          const int m0 = n + k + k00 + k11 - k01;
          for (int k10 = 0; k10 <= h - k; ++k10) {
            const double x = part - t.mixed[k10] + D[m0 - k10];
            if (x > mx) mx = x;
          }
        }
    stripe_max[k] = mx;
  });
  const double shift = *std::max_element(stripe_max.begin(), stripe_max.end());

  constexpr double kScale = 9223372036854775808.0;  // 2^63
  constexpr double kCut = -45.0;
  std::vector<unsigned __int128> stripe_acc(static_cast<size_t>(h) + 1, 0);
  parallel_for(h + 1, threads, [&](long long kk) {
    const int k = static_cast<int>(kk);
    const auto t = make_tables(k);
    unsigned __int128 acc = 0;
    for (int k00 = 0; k00 <= k; ++k00)
      for (int k11 = 0; k11 <= k; ++k11)
        for (int k01 = 0; k01 <= h - k; ++k01) {
          const double part = base - t.same[k00] - t.same[k11] - t.mixed[k01] - shift;
          const int m0 = n + k + k00 + k11 - k01;
          for (int k10 = 0; k10 <= h - k; ++k10) {
            const double x = part - t.mixed[k10] + D[m0 - k10];
            if (x > kCut) acc += static_cast<std::uint64_t>(std::exp(x) * kScale + 0.5);
          }
        }
    stripe_acc[k] = acc;
  });

  unsigned __int128 total = 0;
  for (int k = 0; k <= h; ++k) total += stripe_acc[k];
  const long double v = static_cast<long double>(total);
  return LogNumber::from_log(shift + static_cast<double>(logl(v)) - 63.0 * std::log(2.0));
}

// Laplace-method limit E[Y^2] ~ (25/8)^n * 25/sqrt(21).
inline LogNumber second_moment_asymptotic(int n) {
  if (n <= 0 || n % 2 != 0)
    throw std::domain_error("second_moment_asymptotic: n must be even and positive");
  return LogNumber::from_log(n * std::log(25.0 / 8.0) + std::log(25.0) - 0.5 * std::log(21.0));
}

// E[Y^2] / (E Y)^2; tends to 5/sqrt(21). Uses the log pipeline, which agrees
// with the exact rationals to ~1e-11 wherever both run.
inline double moment_ratio(int n, int threads = 0) {
  const LogNumber sm = second_moment_log(n, threads);
  const LogNumber fm = first_moment_log(n);
  return std::exp(sm.log_abs - 2.0 * fm.log_abs);
}

inline Rational moment_ratio_exact(int n, int cap_n = 40) {
  const Rational fm = first_moment_exact(n);
  return second_moment_exact(n, cap_n) / (fm * fm);
}

}  // namespace nzflow
