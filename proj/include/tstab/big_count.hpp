#pragma once

// Exact non-negative rational counts with arbitrary-precision parts, plus a
// natural-log view for consumers that work in log space.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace tstab {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// ln(n) for a positive big integer, accurate to double precision.
inline double log_big(const BigInt& n) {
  if (n <= 0) throw std::domain_error("log_big: argument must be positive");
  const auto bits = boost::multiprecision::msb(n);  // index of top set bit
  if (bits <= 512) return std::log(n.convert_to<double>());
  const auto shift = bits - 512;
  const BigInt top = n >> shift;
  constexpr double kLn2 = 0.6931471805599453094;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * kLn2;
}

inline BigInt factorial_big(long long n) {
  if (n < 0) throw std::domain_error("factorial_big: negative argument");
  BigInt f = 1;
  for (long long i = 2; i <= n; ++i) f *= i;
  return f;
}

// Exact rational count: numerator >= 0, denominator >= 1, gcd(num, den) = 1.
// cpp_rational keeps the canonical form; this wrapper adds the non-negativity
// contract and the log view.
class BigCount {
 public:
  BigCount() : value_(0) {}
  BigCount(long long v) : value_(v) { check_non_negative(); }  // NOLINT(runtime/explicit)
  explicit BigCount(BigInt v) : value_(std::move(v)) { check_non_negative(); }
  explicit BigCount(BigRational v) : value_(std::move(v)) { check_non_negative(); }
  BigCount(BigInt num, BigInt den) : value_(std::move(num), std::move(den)) {
    check_non_negative();
  }

  const BigRational& value() const { return value_; }
  BigInt numerator() const { return boost::multiprecision::numerator(value_); }
  BigInt denominator() const { return boost::multiprecision::denominator(value_); }

  bool is_zero() const { return value_.is_zero(); }
  bool is_integer() const { return denominator() == 1; }

  // ln(num) - ln(den); -inf when the count is zero.
  double ln_value() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    return log_big(numerator()) - log_big(denominator());
  }

  double to_double() const { return value_.convert_to<double>(); }

  std::string to_string() const {
    if (is_integer()) return numerator().str();
    return numerator().str() + "/" + denominator().str();
  }

  friend bool operator==(const BigCount& a, const BigCount& b) {
    return a.value_ == b.value_;
  }
  friend bool operator!=(const BigCount& a, const BigCount& b) {
    return a.value_ != b.value_;
  }
  friend bool operator<(const BigCount& a, const BigCount& b) {
    return a.value_ < b.value_;
  }
  friend bool operator<=(const BigCount& a, const BigCount& b) {
    return a.value_ <= b.value_;
  }
  friend bool operator>(const BigCount& a, const BigCount& b) {
    return a.value_ > b.value_;
  }
  friend bool operator>=(const BigCount& a, const BigCount& b) {
    return a.value_ >= b.value_;
  }

  friend BigCount operator*(const BigCount& a, const BigCount& b) {
    return BigCount(a.value_ * b.value_);
  }
  friend BigCount operator+(const BigCount& a, const BigCount& b) {
    return BigCount(a.value_ + b.value_);
  }

 private:
  void check_non_negative() const {
    if (value_ < 0) throw std::domain_error("BigCount: counts cannot be negative");
  }

  BigRational value_;
};

}  // namespace tstab
