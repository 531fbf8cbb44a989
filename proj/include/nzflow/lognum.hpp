#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "nzflow/rational.hpp"

namespace nzflow {

// Signed log-magnitude number: value = sign * exp(log_abs). Used for
// quantities far outside double range, e.g. (25/8)^n for n in the hundreds.
// Multiplication/division are exact up to double rounding of the exponents;
// addition/subtraction go through log1p/exp and stay within ~1e-12 relative
// error per operation for non-cancelling operands.
struct LogNumber {
  int sign = 0;  // -1, 0, +1
  double log_abs = -std::numeric_limits<double>::infinity();

  static LogNumber zero() { return {}; }
  static LogNumber one() { return {1, 0.0}; }

  static LogNumber from_value(double v) {
    if (v == 0.0) return zero();
    return {v > 0 ? 1 : -1, std::log(std::fabs(v))};
  }

  static LogNumber from_log(double la, int s = 1) { return {s, la}; }

  static LogNumber from(const BigInt& x) {
    if (x == 0) return zero();
    const BigInt a = x < 0 ? BigInt(-x) : x;
    return {x > 0 ? 1 : -1, log_of(a)};
  }

  static LogNumber from(const Rational& q) {
    if (q == 0) return zero();
    Rational a = q < 0 ? Rational(-q) : q;
    return {q > 0 ? 1 : -1, log_of(a)};
  }

  bool is_zero() const { return sign == 0; }

  double log10() const {
    if (sign == 0) return -std::numeric_limits<double>::infinity();
    return log_abs / std::log(10.0);
  }

  // May overflow to +/-inf; intended for small-magnitude results only.
  double to_double() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }

  friend LogNumber operator*(const LogNumber& a, const LogNumber& b) {
    if (a.sign == 0 || b.sign == 0) return zero();
    return {a.sign * b.sign, a.log_abs + b.log_abs};
  }

  friend LogNumber operator/(const LogNumber& a, const LogNumber& b) {
    if (b.sign == 0) throw std::domain_error("LogNumber: division by zero");
    if (a.sign == 0) return zero();
    return {a.sign * b.sign, a.log_abs - b.log_abs};
  }

  friend LogNumber operator-(const LogNumber& a) { return {-a.sign, a.log_abs}; }

  friend LogNumber operator+(const LogNumber& a, const LogNumber& b) {
    if (a.sign == 0) return b;
    if (b.sign == 0) return a;
    const LogNumber& hi = a.log_abs >= b.log_abs ? a : b;
    const LogNumber& lo = a.log_abs >= b.log_abs ? b : a;
    const double d = lo.log_abs - hi.log_abs;  // <= 0
    if (hi.sign == lo.sign) return {hi.sign, hi.log_abs + std::log1p(std::exp(d))};
    if (d == 0.0) return zero();
    return {hi.sign, hi.log_abs + std::log1p(-std::exp(d))};
  }

  friend LogNumber operator-(const LogNumber& a, const LogNumber& b) { return a + (-b); }

  // value(a) < value(b)
  friend bool operator<(const LogNumber& a, const LogNumber& b) {
    if (a.sign != b.sign) return a.sign < b.sign;
    if (a.sign == 0) return false;
    return a.sign > 0 ? a.log_abs < b.log_abs : a.log_abs > b.log_abs;
  }
};

inline LogNumber pow_int(LogNumber base, long long e) {
  if (e < 0) return LogNumber::one() / pow_int(base, -e);
  if (base.sign == 0) return e == 0 ? LogNumber::one() : LogNumber::zero();
  int s = (base.sign < 0 && (e & 1)) ? -1 : 1;
  return {s, base.log_abs * static_cast<double>(e)};
}

}  // namespace nzflow
