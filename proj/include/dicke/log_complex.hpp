#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <span>

namespace dicke {

/// Wraps an angle into (−π, π].
template <typename Scalar>
Scalar wrap_phase(Scalar phase) {
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  Scalar r = std::remainder(phase, 2 * pi);
  if (r <= -pi) r += 2 * pi;
  return r;
}

/// Complex number stored as (natural log of magnitude, phase). Exact zero
/// is log_mag = −∞. Products of factorial-sized factors stay representable
/// long after the ordinary complex value would overflow.
template <typename Scalar>
class LogComplex {
public:
  Scalar log_mag = -std::numeric_limits<Scalar>::infinity();
  Scalar phase = 0;

  constexpr LogComplex() = default;
  LogComplex(Scalar log_mag_, Scalar phase_) : log_mag(log_mag_), phase(wrap_phase(phase_)) {}

  static LogComplex one() { return {Scalar(0), Scalar(0)}; }
  static LogComplex zero() { return {}; }

  static LogComplex from_complex(std::complex<Scalar> z) {
    if (z == std::complex<Scalar>(0)) return zero();
    return {std::log(std::abs(z)), std::arg(z)};
  }

  static LogComplex from_real(Scalar x) {
    if (x == 0) return zero();
    return {std::log(std::abs(x)), x < 0 ? std::numbers::pi_v<Scalar> : Scalar(0)};
  }

  bool is_zero() const { return log_mag == -std::numeric_limits<Scalar>::infinity(); }

  /// Overflows to inf when log_mag exceeds the exponent range of Scalar.
  std::complex<Scalar> to_complex() const {
    if (is_zero()) return {0, 0};
    return std::polar(std::exp(log_mag), phase);
  }

  LogComplex conj() const {
    LogComplex r = *this;
    r.phase = wrap_phase(-phase);
    return r;
  }

  LogComplex inverse() const { return {-log_mag, -phase}; }

  LogComplex& operator*=(const LogComplex& o) {
    if (is_zero() || o.is_zero()) return *this = zero();
    log_mag += o.log_mag;
    phase = wrap_phase(phase + o.phase);
    return *this;
  }

  LogComplex& operator/=(const LogComplex& o) { return *this *= o.inverse(); }

  friend LogComplex operator*(LogComplex a, const LogComplex& b) { return a *= b; }
  friend LogComplex operator/(LogComplex a, const LogComplex& b) { return a /= b; }
};

/// Result of a rescaled sum, with a record of whether the cancellation
/// guard switched to compensated extended accumulation.
template <typename Scalar>
struct LogSum {
  LogComplex<Scalar> value;
  bool compensated = false;
};

/// |sum| below this fraction of the largest term triggers compensated summation.
inline constexpr double kCancellationThreshold = 1e-8;

namespace detail {

// Neumaier summation in long double.
class CompensatedSum {
public:
  void add(long double x) {
    const long double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
      carry_ += (sum_ - t) + x;
    else
      carry_ += (x - t) + sum_;
    sum_ = t;
  }
  long double value() const { return sum_ + carry_; }

private:
  long double sum_ = 0;
  long double carry_ = 0;
};

}  // namespace detail

/// Sums terms given in log form: every term is rescaled by the largest
/// magnitude before accumulation. If the plain sum loses more than eight
/// digits to cancellation (or `force_compensated` is set), the sum is
/// redone with compensated long-double accumulation.
template <typename Scalar>
LogSum<Scalar> log_sum(std::span<const LogComplex<Scalar>> terms, bool force_compensated = false) {
  Scalar max_log = -std::numeric_limits<Scalar>::infinity();
  for (const auto& t : terms) max_log = std::max(max_log, t.log_mag);
  if (!std::isfinite(max_log)) return {LogComplex<Scalar>::zero(), false};

  std::complex<Scalar> acc(0);
  if (!force_compensated) {
    for (const auto& t : terms) {
      if (t.is_zero()) continue;
      acc += std::polar(std::exp(t.log_mag - max_log), t.phase);
    }
  }

  bool compensated = false;
  if (force_compensated || std::abs(acc) < static_cast<Scalar>(kCancellationThreshold)) {
    compensated = true;
    detail::CompensatedSum re, im;
    for (const auto& t : terms) {
      if (t.is_zero()) continue;
      const long double mag = std::exp(static_cast<long double>(t.log_mag - max_log));
      re.add(mag * std::cos(static_cast<long double>(t.phase)));
      im.add(mag * std::sin(static_cast<long double>(t.phase)));
    }
    acc = {static_cast<Scalar>(re.value()), static_cast<Scalar>(im.value())};
  }

  if (acc == std::complex<Scalar>(0)) return {LogComplex<Scalar>::zero(), compensated};
  return {LogComplex<Scalar>(max_log + std::log(std::abs(acc)), std::arg(acc)), compensated};
}

}  // namespace dicke
