#pragma once

// Saddle-point machinery for the coefficients of R_t(z)^k:
//   * solve_saddle: the unique positive root r0 of r R_t'(r)/R_t(r) = y
//     together with the curvature factor s(y) = r0 * phi'(r0),
//   * approx_log_coeff: the Gaussian saddle-point approximation of
//     ln [z^{2m}] R_t(z)^k,
//   * contour_log_coeff: direct numeric evaluation of the Cauchy coefficient
//     integral on the saddle circle (an independent cross-check oracle).

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "tstab/errors.hpp"
#include "tstab/trunc_exp_poly.hpp"

namespace tstab {

struct SaddleData {
  double y;   // target of the saddle equation, in (0, t)
  double r0;  // unique positive solution of phi(r) = y
  double s;   // r0 * phi'(r0) > 0
};

// Leading-order prediction r0 ~ t/(t-y) as y -> t; also the Newton seed.
inline double saddle_radius_leading(int t, double y) {
  if (t < 1) throw std::domain_error("saddle_radius_leading: t must be >= 1");
  if (!(y < t)) throw std::domain_error("saddle_radius_leading: requires y < t");
  return t / (t - y);
}

namespace detail {
inline constexpr double kSaddleRelTol = 1e-12;
}

// Solves phi(r) = y to relative residual 1e-12 on y.  Newton from
// max(t/(t-y), 1e-3) with a monotone-bisection fallback; phi is strictly
// increasing so the bracket [1e-9, 1e3 * t/(t-y)] is safe once expanded to
// straddle y.
inline SaddleData solve_saddle(const TruncExpPoly& poly, double y) {
  const int t = poly.degree();
  if (t < 1) throw std::domain_error("solve_saddle: t must be >= 1");
  if (!(y > 0.0) || !(y < t))
    throw std::domain_error("solve_saddle: y must lie in (0, t)");

  const double tol = detail::kSaddleRelTol * y;
  double r = std::max(saddle_radius_leading(t, y), 1e-3);
  bool converged = false;
  for (int iter = 0; iter < 100; ++iter) {
    const double f = poly.phi(r) - y;
    if (std::abs(f) <= tol) {
      converged = true;
      break;
    }
    const double fp = poly.phi_prime(r);
    const double next = r - f / fp;
    if (!(next > 0.0) || !std::isfinite(next)) break;
    r = next;
  }

  if (!converged && std::abs(poly.phi(r) - y) > tol) {
    double lo = 1e-9;
    double hi = 1e3 * saddle_radius_leading(t, y);
    for (int grow = 0; grow < 64 && poly.phi(hi) < y; ++grow) hi *= 2.0;
    if (poly.phi(hi) < y)
      throw std::runtime_error("solve_saddle: failed to bracket the root");
    for (int iter = 0; iter < 400; ++iter) {
      r = 0.5 * (lo + hi);
      const double f = poly.phi(r) - y;
      if (std::abs(f) <= tol || (hi - lo) <= 1e-16 * lo) break;
      if (f < 0.0)
        lo = r;
      else
        hi = r;
    }
  }

  return SaddleData{y, r, r * poly.phi_prime(r)};
}

inline bool in_asymptotic_window(int t, long long k, long long m) {
  const double sk = std::sqrt(static_cast<double>(k));
  const double lk = std::log(static_cast<double>(k));
  const double y = 2.0 * static_cast<double>(m) / static_cast<double>(k);
  return (t - lk / sk) <= y && y <= (t - 1.0 / (sk * lk));
}

struct ApproxLogCoeff {
  double log_value;  // ln of the saddle-point approximation of [z^{2m}] R_t^k
  bool in_window;    // whether 2m/k lies in the range where the formula is tight
};

// ln of (2 pi k s)^{-1/2} R_t(r0)^k / r0^{2m} at y = 2m/k.  Evaluated in log
// space throughout; valid for any interior m, with in_window reporting
// whether the approximation carries its uniform guarantee.
inline ApproxLogCoeff approx_log_coeff(int t, long long k, long long m) {
  if (t < 1) throw std::domain_error("approx_log_coeff: t must be >= 1");
  if (k < 2) throw std::domain_error("approx_log_coeff: k must be >= 2");
  if (m <= 0 || 2 * m >= static_cast<long long>(t) * k)
    throw std::domain_error("approx_log_coeff: requires 0 < 2m < t*k");

  const TruncExpPoly poly(t);
  const double y = 2.0 * static_cast<double>(m) / static_cast<double>(k);
  const SaddleData sd = solve_saddle(poly, y);
  const double log_value = -0.5 * std::log(2.0 * std::numbers::pi * k * sd.s) +
                           k * poly.log_eval(sd.r0) - 2.0 * m * std::log(sd.r0);
  return ApproxLogCoeff{log_value, in_asymptotic_window(t, k, m)};
}

// ln [z^{2m}] R_t(z)^k by numeric contour integration on the circle |z| = r,
// r the saddle radius (or a fixed large radius when 2m = tk, where the saddle
// equation has no finite solution).  The integrand is normalised by
// R_t(r)^k / r^{2m} so its modulus never exceeds 1; with n_nodes above the
// trigonometric degree the periodic trapezoid rule is exact up to rounding.
inline double contour_log_coeff(int t, long long k, long long m,
                                int n_nodes = 4096) {
  if (t < 1) throw std::domain_error("contour_log_coeff: t must be >= 1");
  if (k < 1) throw std::domain_error("contour_log_coeff: k must be >= 1");
  const long long tk = static_cast<long long>(t) * k;
  if (m <= 0 || 2 * m > tk)
    throw std::domain_error("contour_log_coeff: requires 0 < 2m <= t*k");
  if (n_nodes < 64)
    throw std::domain_error("contour_log_coeff: need at least 64 nodes");

  const TruncExpPoly poly(t);
  double r;
  if (2 * m < tk) {
    r = solve_saddle(poly, 2.0 * static_cast<double>(m) / static_cast<double>(k)).r0;
  } else {
    // Top coefficient: any radius works for Cauchy's formula; pick one where
    // the normalised mean stays O(1).
    r = 10.0 * std::max<double>(1.0, static_cast<double>(tk));
  }

  // Normalised coefficient weights q_i = c_i r^i / R_t(r), computed via logs
  // so large radii cannot overflow.
  const double log_R = poly.log_eval(r);
  const double log_r = std::log(r);
  std::vector<double> q(static_cast<std::size_t>(t) + 1);
  for (int i = 0; i <= t; ++i)
    q[static_cast<std::size_t>(i)] =
        std::exp(i * log_r - std::lgamma(static_cast<double>(i) + 1.0) - log_R);

  const std::complex<double> I(0.0, 1.0);
  std::complex<double> sum = 0.0;
  long long nonzero = 0;
  for (int j = 0; j < n_nodes; ++j) {
    const double phi = -std::numbers::pi +
                       2.0 * std::numbers::pi * j / static_cast<double>(n_nodes);
    std::complex<double> w = 0.0;
    for (int i = 0; i <= t; ++i)
      w += q[static_cast<std::size_t>(i)] *
           std::exp(I * (static_cast<double>(i) * phi));
    std::complex<double> g;
    if (std::abs(w) == 0.0) {
      g = 0.0;
    } else {
      g = std::exp(static_cast<double>(k) * std::log(w) -
                   I * (2.0 * static_cast<double>(m) * phi));
    }
    if (std::abs(g) > 0.0) ++nonzero;
    sum += g;
  }
  const double mean = sum.real() / static_cast<double>(n_nodes);
  if (nonzero <= 1 || !(mean > 0.0) || !std::isfinite(mean))
    throw PrecisionLossError(
        "contour_log_coeff: normalised integrand underflowed off the saddle "
        "(t=" + std::to_string(t) + ", k=" + std::to_string(k) +
        ", m=" + std::to_string(m) + ")");

  return k * log_R - 2.0 * static_cast<double>(m) * log_r + std::log(mean);
}

}  // namespace tstab
