#pragma once

// Extended-real arithmetic carried in the log domain.
// A value v >= 0 is stored as log(v); -inf encodes 0 and +inf encodes +inf.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace mfent {

template <typename Scalar = double>
constexpr Scalar log_zero() {
  return -std::numeric_limits<Scalar>::infinity();
}

template <typename Scalar = double>
constexpr Scalar log_infinity() {
  return std::numeric_limits<Scalar>::infinity();
}

/// log(exp(a) + exp(b)) with both infinities absorbed.
template <typename Scalar>
Scalar log_add(Scalar a, Scalar b) {
  if (a == log_infinity<Scalar>() || b == log_infinity<Scalar>()) return log_infinity<Scalar>();
  if (a == log_zero<Scalar>()) return b;
  if (b == log_zero<Scalar>()) return a;
  const Scalar hi = std::max(a, b);
  const Scalar lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

template <typename Scalar>
Scalar log_sum_exp(std::span<const Scalar> xs) {
  Scalar hi = log_zero<Scalar>();
  for (Scalar x : xs) {
    if (x == log_infinity<Scalar>()) return x;
    hi = std::max(hi, x);
  }
  if (hi == log_zero<Scalar>()) return hi;
  Scalar acc = 0;
  for (Scalar x : xs) acc += std::exp(x - hi);
  return hi + std::log(acc);
}

/// Streaming accumulator for log-sum-exp.
template <typename Scalar = double>
class LogSum {
 public:
  void add(Scalar x) { value_ = log_add(value_, x); }
  Scalar value() const { return value_; }

 private:
  Scalar value_ = log_zero<Scalar>();
};

}  // namespace mfent
