#pragma once

#include <cmath>
#include <stdexcept>

namespace tstab {

// The fixed model triple (t, p, b = 1/(1-p)) shared by every formula.
struct Params {
  int t;
  double p;
  double b;

  Params(int t_, double p_) : t(t_), p(p_), b(1.0 / (1.0 - p_)) {
    if (t < 0) throw std::domain_error("Params: t must be non-negative");
    if (!(p > 0.0) || !(p < 1.0))
      throw std::domain_error("Params: p must lie in (0, 1)");
  }

  static Params from_base(int t_, double b_) {
    if (!(b_ > 1.0)) throw std::domain_error("Params: b must exceed 1");
    return Params(t_, 1.0 - 1.0 / b_);
  }

  double log_b(double x) const { return std::log(x) / std::log(b); }
};

}  // namespace tstab
