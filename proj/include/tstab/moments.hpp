#pragma once

// First-moment machinery for t-stable sets of order k in G_{n,p}:
// the per-edge-count weight
//   f(m) = p^m (1-p)^{C(k,2)-m} C_{2m}(t,k) (2m)!/(m! 2^m),
// its maximiser m*, the ratio diagnostics lambda_m = f(m+1)/f(m), and the
// resulting bounds on P(A in S_t) and E[number of t-stable k-sets].
//
// Everything is carried in natural logs (ln-gamma for factorials): f(m)
// spans thousands of orders of magnitude already at k in the hundreds.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "tstab/exact_counts.hpp"
#include "tstab/numeric.hpp"
#include "tstab/params.hpp"
#include "tstab/saddle.hpp"

namespace tstab {

enum class CountMode { Auto, Exact, Saddle };

// Largest t*k for which the exact rational DP is the default.
inline constexpr long long kExactModeMaxTk = 4000;

namespace detail {

inline double log_pairing_factor(long long m) {
  // ln of (2m)!/(m! 2^m)
  return log_factorial(2 * m) - log_factorial(m) - m * std::log(2.0);
}

inline double log_coeff_exact(int t, long long k, long long m) {
  return exact_coeff(t, k, m).ln_value();
}

// ln C_{2m}(t,k) in saddle mode; the boundary coefficients have exact closed
// forms (C_0 = 1, C_{tk} = t!^{-k}), interior ones use the saddle formula.
inline double log_coeff_saddle(int t, long long k, long long m) {
  const long long tk = static_cast<long long>(t) * k;
  if (m == 0) return 0.0;
  if (2 * m == tk)
    return -static_cast<double>(k) * std::lgamma(static_cast<double>(t) + 1.0);
  return approx_log_coeff(t, k, m).log_value;
}

inline CountMode resolve_mode(CountMode mode, int t, long long k,
                              long long exact_budget_tk) {
  if (mode != CountMode::Auto) return mode;
  return (static_cast<long long>(t) * k <= exact_budget_tk) ? CountMode::Exact
                                                            : CountMode::Saddle;
}

}  // namespace detail

// ln f(m).  Exact mode requires t*k within the DP budget; saddle mode
// requires t >= 1 and 0 < 2m < tk (interior).
inline double log_weight(const Params& params, long long k, long long m,
                         CountMode mode = CountMode::Auto,
                         long long exact_budget_tk = kExactModeMaxTk) {
  const long long tk = static_cast<long long>(params.t) * k;
  if (k < 1) throw std::domain_error("log_weight: k must be >= 1");
  if (m < 0 || 2 * m > tk)
    throw std::domain_error("log_weight: m must satisfy 0 <= 2m <= t*k");

  mode = detail::resolve_mode(mode, params.t, k, exact_budget_tk);
  double log_coeff;
  if (mode == CountMode::Exact) {
    if (tk > exact_budget_tk)
      throw std::domain_error("log_weight: t*k exceeds the exact-mode budget");
    log_coeff = detail::log_coeff_exact(params.t, k, m);
  } else {
    if (params.t < 1)
      throw std::domain_error("log_weight: saddle mode requires t >= 1");
    if (m != 0 && 2 * m != tk && (m <= 0 || 2 * m >= tk))
      throw std::domain_error("log_weight: saddle mode requires interior m");
    log_coeff = detail::log_coeff_saddle(params.t, k, m);
  }

  const double pairs = 0.5 * static_cast<double>(k) * static_cast<double>(k - 1);
  return m * std::log(params.p) + (pairs - m) * std::log1p(-params.p) +
         log_coeff + detail::log_pairing_factor(m);
}

// The full weight profile of a given k: ln f(m) for every m in
// [0, floor(tk/2)], the (smallest) argmax m*, and ln sum_m f(m).
struct MomentProfile {
  Params params;
  long long k;
  CountMode mode_used;
  std::vector<double> log_f;  // index m
  long long m_star;
  double log_sum;

  long long max_m() const { return static_cast<long long>(log_f.size()) - 1; }

  // lambda_m = f(m+1)/f(m)
  double ratio(long long m) const {
    if (m < 0 || m + 1 > max_m())
      throw std::domain_error("MomentProfile::ratio: m out of range");
    return std::exp(log_f[static_cast<std::size_t>(m + 1)] -
                    log_f[static_cast<std::size_t>(m)]);
  }
};

inline MomentProfile build_profile(const Params& params, long long k,
                                   CountMode mode = CountMode::Auto,
                                   long long exact_budget_tk = kExactModeMaxTk) {
  if (k < 1) throw std::domain_error("build_profile: k must be >= 1");
  const long long tk = static_cast<long long>(params.t) * k;
  const long long max_m = tk / 2;
  const double pairs = 0.5 * static_cast<double>(k) * static_cast<double>(k - 1);
  const double log_p = std::log(params.p);
  const double log_q = std::log1p(-params.p);

  MomentProfile profile{params, k, detail::resolve_mode(mode, params.t, k, exact_budget_tk),
                        {}, 0, 0.0};
  profile.log_f.resize(static_cast<std::size_t>(max_m) + 1);

  if (params.t == 0) {
    profile.log_f[0] = pairs * log_q;
    profile.m_star = 0;
    profile.log_sum = profile.log_f[0];
    return profile;
  }

  std::vector<double> log_coeffs;  // ln C_{2m}, index m
  log_coeffs.resize(static_cast<std::size_t>(max_m) + 1);
  if (profile.mode_used == CountMode::Exact) {
    if (tk > exact_budget_tk)
      throw std::domain_error("build_profile: t*k exceeds the exact-mode budget");
    const auto row = log_coeff_row(params.t, k);
    for (long long m = 0; m <= max_m; ++m)
      log_coeffs[static_cast<std::size_t>(m)] = row[static_cast<std::size_t>(2 * m)];
  } else {
    for (long long m = 0; m <= max_m; ++m)
      log_coeffs[static_cast<std::size_t>(m)] =
          detail::log_coeff_saddle(params.t, k, m);
  }

  for (long long m = 0; m <= max_m; ++m) {
    profile.log_f[static_cast<std::size_t>(m)] =
        m * log_p + (pairs - m) * log_q + log_coeffs[static_cast<std::size_t>(m)] +
        detail::log_pairing_factor(m);
  }

  profile.m_star = 0;
  for (long long m = 1; m <= max_m; ++m) {
    if (profile.log_f[static_cast<std::size_t>(m)] >
        profile.log_f[static_cast<std::size_t>(profile.m_star)])
      profile.m_star = m;  // strict: ties resolve to the smallest m
  }
  profile.log_sum = log_sum_exp(profile.log_f);
  return profile;
}

// Leading-order location of the maximiser: 2m* = tk - sqrt(tk/(b p)) + o(sqrt k).
inline double mstar_prediction(const Params& params, long long k) {
  if (params.t == 0) return 0.0;
  const double tk = static_cast<double>(params.t) * static_cast<double>(k);
  return 0.5 * (tk - std::sqrt(tk / (params.b * params.p)));
}

struct ProbBound {
  double log_bound;        // computed finite-k bound
  double log_closed_form;  // the asymptotic closed form, for comparison
};

namespace detail {
// ln [ b^{-k+1} (t b p k / e)^t / t!^2 ], the per-two-vertices factor of the
// closed forms; the t-dependent terms vanish identically at t = 0 (0^0 = 1).
inline double log_closed_inner(const Params& params, long long k) {
  double inner = -(static_cast<double>(k) - 1.0) * std::log(params.b);
  if (params.t > 0) {
    inner += params.t * std::log(params.t * params.b * params.p *
                                 static_cast<double>(k) / std::numbers::e) -
             2.0 * std::lgamma(static_cast<double>(params.t) + 1.0);
  }
  return inner;
}
}  // namespace detail

// ln P(A in S_t) <= ln[(tk/2 + 1) f(m*)], plus the asymptotic closed form
// (k/2) ln[ b^{-k+1} (t b p k/e)^t / t!^2 ].
inline ProbBound log_prob_stable_upper(const Params& params, long long k,
                                       CountMode mode = CountMode::Auto) {
  const MomentProfile profile = build_profile(params, k, mode);
  const double terms = static_cast<double>(params.t) * static_cast<double>(k) / 2.0 + 1.0;
  const double bound =
      std::log(terms) + profile.log_f[static_cast<std::size_t>(profile.m_star)];
  const double closed =
      0.5 * static_cast<double>(k) * detail::log_closed_inner(params, k);
  return ProbBound{bound, closed};
}

enum class BoundSide { Upper, Lower };

// ln E[alpha_t^{(k)}(G_{n,p})] bounds.
//   upper: ln C(n,k) + ln sum_m f(m)
//   lower: ln C(n,k) + ln(e^{-t-t^2}/2) + ln f(m*)
// The closed form reported alongside is (k/2) ln[ e^2 n^2 b^{-k+1} k^{t-2}
// (t b p/e)^t / t!^2 ].
inline ProbBound log_expected_count(const Params& params, long long n,
                                    long long k, BoundSide side,
                                    CountMode mode = CountMode::Auto) {
  if (k < 1 || k > n)
    throw std::domain_error("log_expected_count: need 1 <= k <= n");
  const MomentProfile profile = build_profile(params, k, mode);
  const double log_choose = log_binomial(n, k);

  double bound;
  if (side == BoundSide::Upper) {
    bound = log_choose + profile.log_sum;
  } else {
    const double t = params.t;
    bound = log_choose - t - t * t - std::log(2.0) +
            profile.log_f[static_cast<std::size_t>(profile.m_star)];
  }

  // log_closed_inner carries (t b p k/e)^t; dividing by k^2 turns its k^t
  // into the k^{t-2} of the expectation formula.
  const double closed_inner = 2.0 + 2.0 * std::log(static_cast<double>(n)) +
                              detail::log_closed_inner(params, k) -
                              2.0 * std::log(static_cast<double>(k));
  const double closed = 0.5 * static_cast<double>(k) * closed_inner;
  return ProbBound{bound, closed};
}

}  // namespace tstab
