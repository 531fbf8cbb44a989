#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace nzflow {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Factorials 0!..max! computed once and shared across a summation.
class FactorialTable {
 public:
  explicit FactorialTable(int max_n) : fact_(static_cast<size_t>(max_n) + 1) {
    fact_[0] = 1;
    for (int i = 1; i <= max_n; ++i) fact_[i] = fact_[i - 1] * i;
  }

  const BigInt& operator[](int i) const { return fact_.at(static_cast<size_t>(i)); }
  int max() const { return static_cast<int>(fact_.size()) - 1; }

 private:
  std::vector<BigInt> fact_;
};

inline BigInt factorial(int n) {
  if (n < 0) throw std::domain_error("factorial: negative argument");
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

inline BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

// Number of perfect matchings of s points: s! / ((s/2)! 2^{s/2}).
inline BigInt num_pairings(int s) {
  if (s <= 0 || s % 2 != 0) throw std::domain_error("num_pairings: s must be even and positive");
  BigInt r = factorial(s) / (factorial(s / 2) << (s / 2));
  return r;
}

// Natural log of a positive big integer, accurate to a few ulp even when the
// value does not fit in a double.
inline double log_of(const BigInt& x) {
  if (x <= 0) throw std::domain_error("log_of: non-positive value");
  const unsigned bits = boost::multiprecision::msb(x);
  if (bits < 900) return std::log(x.convert_to<double>());
  const unsigned shift = bits - 512;
  BigInt top = x >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

inline double log_of(const Rational& q) {
  if (q <= 0) throw std::domain_error("log_of: non-positive value");
  return log_of(boost::multiprecision::numerator(q)) - log_of(boost::multiprecision::denominator(q));
}

inline Rational rational_pow(const Rational& base, int e) {
  if (e < 0) return Rational(1) / rational_pow(base, -e);
  Rational r = 1, b = base;
  for (int k = e; k > 0; k >>= 1) {
    if (k & 1) r *= b;
    b *= b;
  }
  return r;
}

inline std::string to_string(const Rational& q) { return q.str(); }

}  // namespace nzflow
