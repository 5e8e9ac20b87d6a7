#pragma once

// Truncated exponential polynomial R_t(z) = sum_{i=0}^t z^i / i! and the
// quantities derived from it that the saddle-point machinery needs:
// evaluation, a log-stable evaluation for large arguments, and the map
// phi(r) = r R_t'(r) / R_t(r) together with its exact derivative.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "tstab/big_count.hpp"

namespace tstab {

class TruncExpPoly {
 public:
  explicit TruncExpPoly(int t) : t_(t) {
    if (t < 0) throw std::domain_error("TruncExpPoly: t must be non-negative");
    coeffs_.reserve(static_cast<std::size_t>(t) + 1);
    dcoeffs_.reserve(static_cast<std::size_t>(t) + 1);
    BigRational c = 1;
    for (int i = 0; i <= t; ++i) {
      if (i > 0) c /= i;
      coeffs_.push_back(c);
      dcoeffs_.push_back(c.convert_to<double>());
    }
  }

  int degree() const { return t_; }
  const std::vector<BigRational>& coeffs() const { return coeffs_; }

  std::complex<double> eval(std::complex<double> z) const {
    std::complex<double> acc = dcoeffs_.back();
    for (int i = t_ - 1; i >= 0; --i)
      acc = acc * z + dcoeffs_[static_cast<std::size_t>(i)];
    return acc;
  }

  double eval(double z) const {
    double acc = dcoeffs_.back();
    for (int i = t_ - 1; i >= 0; --i) acc = acc * z + dcoeffs_[static_cast<std::size_t>(i)];
    return acc;
  }

  // ln R_t(r) for r >= 0, safe when r^t overflows a double.
  // For r >= 1 uses the identity R_t(r) = (r^t / t!) * Q_t(1/r) where
  // Q_s(u) = sum_{l=0}^s s!/(s-l)! u^l, whose value stays in [1, e*t!].
  double log_eval(double r) const {
    if (r < 0) throw std::domain_error("TruncExpPoly::log_eval: r must be >= 0");
    if (r < 1.0 || t_ == 0) return std::log(eval(r));
    return t_ * std::log(r) - std::lgamma(static_cast<double>(t_) + 1.0) +
           std::log(eval_q(t_, 1.0 / r));
  }

  // phi(r) = r R_t'(r) / R_t(r).  Strictly increasing on r > 0 with range
  // (0, t); requires t >= 1.
  double phi(double r) const {
    require_saddle_args(r);
    if (r <= 1.0) {
      const double n = r * eval_deriv(r);
      return n / eval(r);
    }
    // r R_{t-1}(r) / R_t(r) scaled by r^{-t} t! on both sides.
    const double u = 1.0 / r;
    return t_ * eval_q(t_ - 1, u) / eval_q(t_, u);
  }

  // d/dr phi(r), evaluated from the closed rational form (no finite
  // differences).  Needed for s(y) = r0 * phi'(r0) and for Newton steps.
  double phi_prime(double r) const {
    require_saddle_args(r);
    if (r <= 1.0) {
      // phi = N/R with N = r R'; phi' = (N'R - NR')/R^2, N' = R' + r R''.
      const double R = eval(r);
      const double R1 = eval_deriv(r);
      const double R2 = eval_deriv2(r);
      const double N = r * R1;
      const double N1 = R1 + r * R2;
      return (N1 * R - N * R1) / (R * R);
    }
    // In u = 1/r: phi(r) = t Q_{t-1}(u)/Q_t(u), so
    // phi'(r) = -t u^2 (Q'_{t-1} Q_t - Q_{t-1} Q'_t) / Q_t^2.
    const double u = 1.0 / r;
    const double qt = eval_q(t_, u);
    const double qtm1 = eval_q(t_ - 1, u);
    const double dqt = eval_q_deriv(t_, u);
    const double dqtm1 = eval_q_deriv(t_ - 1, u);
    return -t_ * u * u * (dqtm1 * qt - qtm1 * dqt) / (qt * qt);
  }

 private:
  void require_saddle_args(double r) const {
    if (t_ == 0)
      throw std::domain_error("TruncExpPoly: phi is undefined for t = 0");
    if (!(r > 0)) throw std::domain_error("TruncExpPoly: r must be positive");
  }

  // Q_s(u) = sum_{l=0}^s s!/(s-l)! u^l.
  static double eval_q(int s, double u) {
    double coeff = 1.0;
    double pow_u = 1.0;
    double acc = 1.0;
    for (int l = 1; l <= s; ++l) {
      coeff *= static_cast<double>(s - l + 1);
      pow_u *= u;
      acc += coeff * pow_u;
    }
    return acc;
  }

  static double eval_q_deriv(int s, double u) {
    double coeff = 1.0;
    double pow_u = 1.0;
    double acc = 0.0;
    for (int l = 1; l <= s; ++l) {
      coeff *= static_cast<double>(s - l + 1);
      acc += l * coeff * pow_u;
      pow_u *= u;
    }
    return acc;
  }

  double eval_deriv(double z) const {  // R_t'(z) = R_{t-1}(z)
    if (t_ == 0) return 0.0;
    double acc = dcoeffs_[static_cast<std::size_t>(t_ - 1)];
    for (int i = t_ - 2; i >= 0; --i) acc = acc * z + dcoeffs_[static_cast<std::size_t>(i)];
    return acc;
  }

  double eval_deriv2(double z) const {  // R_t''(z) = R_{t-2}(z)
    if (t_ <= 1) return 0.0;
    double acc = dcoeffs_[static_cast<std::size_t>(t_ - 2)];
    for (int i = t_ - 3; i >= 0; --i) acc = acc * z + dcoeffs_[static_cast<std::size_t>(i)];
    return acc;
  }

  int t_;
  std::vector<BigRational> coeffs_;
  std::vector<double> dcoeffs_;
};

}  // namespace tstab
