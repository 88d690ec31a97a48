#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fairdpp {

/// A real number stored as sign and natural log of its magnitude.
///
/// Determinant-like quantities in this library routinely reach e^500 and
/// beyond, so they are never materialized as plain doubles. The zero
/// value is encoded as sign 0 with logMagnitude = -infinity.
struct LogValue {
  int sign = 0;
  double logMagnitude = -std::numeric_limits<double>::infinity();

  static LogValue zero() { return LogValue{}; }
  static LogValue one() { return LogValue{+1, 0.0}; }

  static LogValue fromValue(double v) {
    if (v == 0.0) return zero();
    if (!std::isfinite(v)) throw std::domain_error("LogValue: non-finite input");
    return LogValue{v > 0 ? +1 : -1, std::log(std::fabs(v))};
  }

  /// exp(logMag) with the given sign; logMag may be -inf (gives zero).
  static LogValue fromLog(double logMag, int s = +1) {
    if (s == 0 || logMag == -std::numeric_limits<double>::infinity()) return zero();
    if (std::isnan(logMag)) throw std::domain_error("LogValue: NaN log magnitude");
    return LogValue{s > 0 ? +1 : -1, logMag};
  }

  bool isZero() const { return sign == 0; }

  /// Plain double value; overflows to +-inf for very large magnitudes.
  double value() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(logMagnitude);
  }

  LogValue operator-() const { return LogValue{-sign, logMagnitude}; }

  LogValue operator*(const LogValue& o) const {
    if (sign == 0 || o.sign == 0) return zero();
    return LogValue{sign * o.sign, logMagnitude + o.logMagnitude};
  }

  LogValue operator/(const LogValue& o) const {
    if (o.sign == 0) throw std::domain_error("LogValue: division by zero");
    if (sign == 0) return zero();
    return LogValue{sign * o.sign, logMagnitude - o.logMagnitude};
  }

  /// Signed log-sum-exp. Exact cancellation of equal magnitudes yields zero.
  LogValue operator+(const LogValue& o) const {
    if (sign == 0) return o;
    if (o.sign == 0) return *this;
    const double a = logMagnitude, b = o.logMagnitude;
    if (sign == o.sign) {
      const double hi = std::max(a, b), lo = std::min(a, b);
      return LogValue{sign, hi + std::log1p(std::exp(lo - hi))};
    }
    if (a == b) return zero();
    const bool thisWins = a > b;
    const double hi = thisWins ? a : b, lo = thisWins ? b : a;
    const double mag = hi + std::log1p(-std::exp(lo - hi));
    if (mag == -std::numeric_limits<double>::infinity()) return zero();
    return LogValue{thisWins ? sign : o.sign, mag};
  }

  LogValue operator-(const LogValue& o) const { return *this + (-o); }

  LogValue& operator+=(const LogValue& o) { return *this = *this + o; }
  LogValue& operator*=(const LogValue& o) { return *this = *this * o; }

  bool operator==(const LogValue& o) const {
    return sign == o.sign && (sign == 0 || logMagnitude == o.logMagnitude);
  }

  /// a < b as real numbers.
  bool operator<(const LogValue& o) const {
    if (sign != o.sign) return sign < o.sign;
    if (sign == 0) return false;
    return sign > 0 ? logMagnitude < o.logMagnitude : logMagnitude > o.logMagnitude;
  }
};

inline LogValue pow(const LogValue& x, double e) {
  if (x.sign == 0) return LogValue::zero();
  if (x.sign < 0) throw std::domain_error("LogValue: pow of negative value");
  return LogValue::fromLog(x.logMagnitude * e);
}

}  // namespace fairdpp
