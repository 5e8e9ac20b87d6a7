#pragma once

// Closed-form evaluators for the concentration and colouring results:
// alpha_{t,p}(n), its two-point window, chi_t reference bounds, the peeling
// target size alpha_hat, and the partition objective h with its exhaustive
// balanced-maximiser check.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tstab/errors.hpp"
#include "tstab/params.hpp"

namespace tstab {

// alpha_{t,p}(n) = 2 log_b n + (t-2) log_b log_b n + log_b(t^t/t!^2)
//                  + t log_b(2bp/e) + 2 log_b(e/2) + 1,
// with the t-dependent terms vanishing identically at t = 0 (0^0 = 1).
inline double alpha_formula(const Params& params, long long n) {
  if (n < 3) throw std::domain_error("alpha_formula: n must be >= 3");
  const double ln_b = std::log(params.b);
  const double L = std::log(static_cast<double>(n)) / ln_b;  // log_b n
  if (!(L > 1.0))
    throw std::domain_error("alpha_formula: log_b log_b n must be positive");
  const double LL = std::log(L) / ln_b;  // log_b log_b n

  double value = 2.0 * L + (params.t - 2.0) * LL +
                 2.0 * std::log(std::numbers::e / 2.0) / ln_b + 1.0;
  if (params.t > 0) {
    const double t = params.t;
    value += (t * std::log(t) - 2.0 * std::lgamma(t + 1.0)) / ln_b;
    value += t * std::log(2.0 * params.b * params.p / std::numbers::e) / ln_b;
  }
  return value;
}

// The predicted concentration window [floor(alpha - eps), floor(alpha + eps)].
struct StabilityWindow {
  double alpha;
  long long lo;
  long long hi;
  double epsilon;

  bool contains(long long v) const { return lo <= v && v <= hi; }
};

inline StabilityWindow stability_window(const Params& params, long long n,
                                        double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0))
    throw std::domain_error("stability_window: epsilon must lie in (0, 1)");
  const double alpha = alpha_formula(params, n);
  return StabilityWindow{alpha,
                         static_cast<long long>(std::floor(alpha - epsilon)),
                         static_cast<long long>(std::floor(alpha + epsilon)),
                         epsilon};
}

// Reference bounds on chi_t(G_{n,p}):
//   lower = n / (alpha - 2/ln b - 1),  upper = n / (alpha - 2/ln b - 2),
// o(1) terms dropped.
inline std::pair<double, double> chi_bounds(const Params& params, long long n) {
  const double alpha = alpha_formula(params, n);
  const double shift = 2.0 / std::log(params.b);
  const double d_lower = alpha - shift - 1.0;
  const double d_upper = alpha - shift - 2.0;
  if (!(d_upper > 0.0))
    throw std::domain_error("chi_bounds: n too small for the asymptotic formula");
  return {static_cast<double>(n) / d_lower, static_cast<double>(n) / d_upper};
}

// Peeling target size alpha_hat_{t,p}(s) = floor(alpha_{t,p}(s) - 1 - eps).
inline long long alpha_hat(const Params& params, long long s, double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0))
    throw std::domain_error("alpha_hat: epsilon must lie in (0, 1)");
  return static_cast<long long>(std::floor(alpha_formula(params, s) - 1.0 - epsilon));
}

// A partition of n into positive parts, sizes kept non-decreasing.
struct PartitionSpec {
  std::vector<long long> sizes;

  explicit PartitionSpec(std::vector<long long> sizes_) : sizes(std::move(sizes_)) {
    if (sizes.empty()) throw std::domain_error("PartitionSpec: no parts");
    for (const long long s : sizes)
      if (s < 1) throw std::domain_error("PartitionSpec: parts must be positive");
    std::sort(sizes.begin(), sizes.end());
  }

  long long n() const {
    long long total = 0;
    for (const long long s : sizes) total += s;
    return total;
  }

  bool balanced() const { return sizes.back() - sizes.front() <= 1; }
};

// h(P) = -sum_i (k_i^2/2 - (t/2) k_i log_b k_i); k log_b k is 0 at k = 1.
inline double partition_h(const Params& params, const PartitionSpec& spec) {
  const double ln_b = std::log(params.b);
  double total = 0.0;
  for (const long long k : spec.sizes) {
    const double kd = static_cast<double>(k);
    const double log_term = (k == 1) ? 0.0 : kd * std::log(kd) / ln_b;
    total += kd * kd / 2.0 - 0.5 * params.t * log_term;
  }
  return -total;
}

namespace detail {

// Enumerates partitions of n into exactly r non-decreasing positive parts.
inline void for_each_partition(
    int n, int r, const std::function<void(const std::vector<long long>&)>& fn) {
  std::vector<long long> parts(static_cast<std::size_t>(r));
  const std::function<void(int, int, long long)> rec = [&](int idx, int left,
                                                           long long min_part) {
    if (idx == r - 1) {
      if (left >= min_part) {
        parts[static_cast<std::size_t>(idx)] = left;
        fn(parts);
      }
      return;
    }
    const int remaining_slots = r - idx;
    for (long long v = min_part; v * remaining_slots <= left; ++v) {
      parts[static_cast<std::size_t>(idx)] = v;
      rec(idx + 1, left - static_cast<int>(v), v);
    }
  };
  rec(0, n, 1);
}

}  // namespace detail

// Diagnostics from the exhaustive balanced-maximiser check.  `violations`
// counts single-vertex moves (largest part -> smallest part, k_1 < k_r - 1)
// that failed to increase h outside the regime where the local step is
// enforced; those are data, not failures.
struct BalancedMaxReport {
  bool balanced_is_max = false;
  bool local_steps_ok = true;
  int logged_violations = 0;
  std::vector<long long> best_partition;
  double h_balanced = 0.0;
  double h_best = 0.0;
};

// True iff h is maximised exactly by the balanced partition of n into r
// parts, and every single-vertex move from the largest to the smallest part
// with k_1 < k_r - 1 increases h, enforced in the regime k_1 >= 2, k_r >= 3
// where the local step applies at enumerable sizes (the statement is
// asymptotic; moves out of a size-1 part genuinely fail at small n and are
// only counted).  Exhaustive enumeration, so n <= 40.
inline BalancedMaxReport verify_balanced_max_report(const Params& params, int n,
                                                    int r) {
  if (n < 1 || r < 1 || r > n)
    throw std::domain_error("verify_balanced_max: need 1 <= r <= n");
  if (n > 40)
    throw OracleScaleError("verify_balanced_max: n > 40 exceeds oracle scale");

  BalancedMaxReport report;
  double best_h = -std::numeric_limits<double>::infinity();
  std::vector<long long> best;
  bool balanced_seen = false;
  double balanced_h = 0.0;
  bool non_balanced_ties_max = false;
  std::vector<std::pair<std::vector<long long>, double>> all;

  detail::for_each_partition(n, r, [&](const std::vector<long long>& parts) {
    PartitionSpec spec(parts);
    const double h = partition_h(params, spec);
    all.emplace_back(parts, h);
    if (h > best_h) {
      best_h = h;
      best = parts;
    }
    if (spec.balanced()) {
      balanced_seen = true;
      balanced_h = h;
    }
  });

  const double tol = 1e-9 * std::max(1.0, std::abs(best_h));
  for (const auto& [parts, h] : all) {
    const bool is_balanced = parts.back() - parts.front() <= 1;
    if (!is_balanced && h >= best_h - tol) non_balanced_ties_max = true;

    const long long k1 = parts.front();
    const long long kr = parts.back();
    if (k1 < kr - 1 && k1 >= 2 && kr >= 3) {
      std::vector<long long> moved = parts;
      moved.front() += 1;
      moved.back() -= 1;
      const double h_moved = partition_h(params, PartitionSpec(moved));
      if (!(h_moved > h)) report.local_steps_ok = false;
    } else if (k1 < kr - 1) {
      std::vector<long long> moved = parts;
      moved.front() += 1;
      moved.back() -= 1;
      const double h_moved = partition_h(params, PartitionSpec(moved));
      if (!(h_moved > h)) ++report.logged_violations;
    }
  }

  report.balanced_is_max =
      balanced_seen && balanced_h >= best_h - tol && !non_balanced_ties_max;
  report.best_partition = best;
  report.h_balanced = balanced_h;
  report.h_best = best_h;
  return report;
}

inline bool verify_balanced_max(const Params& params, int n, int r) {
  const auto report = verify_balanced_max_report(params, n, r);
  return report.balanced_is_max && report.local_steps_ok;
}

}  // namespace tstab
