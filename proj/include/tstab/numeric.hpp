#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace tstab {

// log(sum_i exp(args[i])) with the usual max shift; -inf for an empty span.
inline double log_sum_exp(std::span<const double> args) {
  if (args.empty()) return -std::numeric_limits<double>::infinity();
  const double m = *std::max_element(args.begin(), args.end());
  if (!std::isfinite(m)) return m;
  double sum = 0.0;
  for (const double a : args) sum += std::exp(a - m);
  return m + std::log(sum);
}

inline double log_sum_exp(const std::vector<double>& args) {
  return log_sum_exp(std::span<const double>(args.data(), args.size()));
}

inline double log_factorial(long long n) {
  return std::lgamma(static_cast<double>(n) + 1.0);
}

inline double log_binomial(long long n, long long k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

}  // namespace tstab
