#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "tstab/exact_counts.hpp"
#include "tstab/saddle.hpp"
#include "tstab/trunc_exp_poly.hpp"

using tstab::TruncExpPoly;

namespace {

// Independent binomial for the t = 1 identity C_{2m}(1,k) = C(k, 2m).
double log_binom_exact(long long n, long long k) {
  tstab::BigInt c = 1;
  for (long long i = 0; i < k; ++i) {
    c *= (n - i);
    c /= (i + 1);
  }
  return tstab::log_big(c);
}

}  // namespace

TEST_CASE("R_t evaluation") {
  REQUIRE(TruncExpPoly(1).eval(2.0) == Catch::Approx(3.0));
  REQUIRE(TruncExpPoly(0).eval(123.456) == Catch::Approx(1.0));
  REQUIRE(TruncExpPoly(2).eval(std::sqrt(2.0)) ==
          Catch::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-14));

  const std::complex<double> z(0.5, -1.25);
  const auto v = TruncExpPoly(3).eval(z);
  const auto expected = 1.0 + z + z * z / 2.0 + z * z * z / 6.0;
  REQUIRE(std::abs(v - expected) < 1e-14);

  // Real non-negative arguments give real values >= 1.
  for (double r : {0.0, 0.3, 1.0, 7.5, 200.0})
    REQUIRE(TruncExpPoly(4).eval(r) >= 1.0);
}

TEST_CASE("coefficients are exactly 1/i!") {
  for (int t : {0, 1, 2, 5, 9}) {
    const TruncExpPoly poly(t);
    const auto& c = poly.coeffs();
    REQUIRE(static_cast<int>(c.size()) == t + 1);
    REQUIRE(c[0] == 1);
    for (int i = 1; i <= t; ++i) REQUIRE(c[static_cast<std::size_t>(i)] * i ==
                                         c[static_cast<std::size_t>(i - 1)]);
  }
}

TEST_CASE("log_eval agrees with direct log and survives huge radii") {
  const TruncExpPoly poly(3);
  for (double r : {0.01, 0.5, 1.0, 3.0, 50.0})
    REQUIRE(poly.log_eval(r) == Catch::Approx(std::log(poly.eval(r))).epsilon(1e-13));
  // r^t would overflow a double well before this.
  const TruncExpPoly big(8);
  const double r = 1e60;
  const double expected = 8 * std::log(r) - std::lgamma(9.0);
  REQUIRE(big.log_eval(r) == Catch::Approx(expected).epsilon(1e-10));
}

TEST_CASE("phi closed forms and domain") {
  REQUIRE(TruncExpPoly(1).phi(1.0) == Catch::Approx(0.5));
  REQUIRE(TruncExpPoly(2).phi(std::sqrt(2.0)) == Catch::Approx(1.0).epsilon(1e-14));
  REQUIRE(TruncExpPoly(3).phi(1e-8) < 1e-6);  // -> 0 at the left endpoint

  REQUIRE_THROWS_AS(TruncExpPoly(0).phi(1.0), std::domain_error);
  REQUIRE_THROWS_AS(TruncExpPoly(2).phi(0.0), std::domain_error);
  REQUIRE_THROWS_AS(TruncExpPoly(2).phi(-1.0), std::domain_error);
}

TEST_CASE("phi is strictly increasing with range (0, t)") {
  for (int t : {1, 2, 3, 5}) {
    const TruncExpPoly poly(t);
    double prev = 0.0;
    for (double lr = -3.0; lr <= 6.0; lr += 0.05) {
      const double r = std::pow(10.0, lr);
      const double v = poly.phi(r);
      REQUIRE(v > prev);
      REQUIRE(v > 0.0);
      REQUIRE(v < t);
      prev = v;
    }
  }
}

TEST_CASE("phi_prime matches the closed forms at both branch regimes") {
  // t = 1: phi = r/(1+r), phi' = 1/(1+r)^2, on both sides of r = 1.
  const TruncExpPoly poly(1);
  for (double r : {0.25, 0.9, 1.5, 40.0, 1e9}) {
    REQUIRE(poly.phi_prime(r) ==
            Catch::Approx(1.0 / ((1.0 + r) * (1.0 + r))).epsilon(1e-12));
  }
  // Central difference cross-check for t = 3.
  const TruncExpPoly p3(3);
  for (double r : {0.4, 1.7, 12.0}) {
    const double h = 1e-6 * r;
    const double fd = (p3.phi(r + h) - p3.phi(r - h)) / (2.0 * h);
    REQUIRE(p3.phi_prime(r) == Catch::Approx(fd).epsilon(1e-7));
  }
}

TEST_CASE("solve_saddle closed-form cases") {
  const auto a = tstab::solve_saddle(TruncExpPoly(1), 0.5);
  REQUIRE(a.r0 == Catch::Approx(1.0).epsilon(1e-12));
  REQUIRE(a.s == Catch::Approx(0.25).epsilon(1e-12));

  const auto b = tstab::solve_saddle(TruncExpPoly(2), 1.0);
  REQUIRE(b.r0 == Catch::Approx(std::sqrt(2.0)).epsilon(1e-12));
  REQUIRE(b.s == Catch::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-12));

  const auto c = tstab::solve_saddle(TruncExpPoly(1), 0.9);
  REQUIRE(c.r0 == Catch::Approx(9.0).epsilon(1e-12));
  REQUIRE(c.s == Catch::Approx(0.09).epsilon(1e-12));

  REQUIRE_THROWS_AS(tstab::solve_saddle(TruncExpPoly(2), 0.0), std::domain_error);
  REQUIRE_THROWS_AS(tstab::solve_saddle(TruncExpPoly(2), 2.0), std::domain_error);
  REQUIRE_THROWS_AS(tstab::solve_saddle(TruncExpPoly(0), 0.5), std::domain_error);
}

TEST_CASE("solve_saddle round trip across the whole range") {
  for (int t : {1, 2, 3, 4}) {
    const TruncExpPoly poly(t);
    for (int i = 1; i <= 99; ++i) {
      const double y = t * (0.01 * i);
      const auto sd = tstab::solve_saddle(poly, y);
      REQUIRE(sd.s > 0.0);
      REQUIRE(std::abs(poly.phi(sd.r0) - y) <= 1e-10 * y);
    }
  }
}

TEST_CASE("saddle radius asymptotics as y approaches t") {
  for (int t : {1, 2, 3, 4}) {
    const TruncExpPoly poly(t);
    double prev_gap_ratio = 1e100;
    for (int j : {10, 20, 30, 40}) {
      const double y = t - std::pow(2.0, -j);
      const auto sd = tstab::solve_saddle(poly, y);
      const double leading = tstab::saddle_radius_leading(t, y);
      REQUIRE(std::abs(sd.r0 - leading) <= t + 1.0);  // O(1) gap
      const double s_ratio = sd.s * sd.r0 / t;        // -> 1
      REQUIRE(std::abs(s_ratio - 1.0) <= prev_gap_ratio + 1e-12);
      prev_gap_ratio = std::abs(s_ratio - 1.0);
    }
    REQUIRE(prev_gap_ratio < 1e-3);
  }
}

TEST_CASE("saddle_radius_leading values and pole") {
  REQUIRE(tstab::saddle_radius_leading(1, 0.9) == Catch::Approx(10.0));
  REQUIRE(tstab::saddle_radius_leading(2, 1.0) == Catch::Approx(2.0));
  REQUIRE(tstab::saddle_radius_leading(5, 5.0 - 1e-12) > 1e12);
  REQUIRE_THROWS_AS(tstab::saddle_radius_leading(5, 5.0), std::domain_error);
}

TEST_CASE("approx_log_coeff reproduces the binomial benchmark") {
  // C_{90}(1,100) = C(100,90); the saddle approximation should land within
  // a percent at this scale.
  const auto approx = tstab::approx_log_coeff(1, 100, 45);
  REQUIRE(approx.in_window);
  const double exact = log_binom_exact(100, 90);
  const double ratio = std::exp(approx.log_value - exact);
  REQUIRE(ratio == Catch::Approx(1.009).margin(0.002));
}

TEST_CASE("approx_log_coeff domain and window flag") {
  REQUIRE_THROWS_AS(tstab::approx_log_coeff(1, 100, 0), std::domain_error);
  REQUIRE_THROWS_AS(tstab::approx_log_coeff(1, 100, 50), std::domain_error);
  REQUIRE_THROWS_AS(tstab::approx_log_coeff(0, 100, 10), std::domain_error);
  const auto tiny = tstab::approx_log_coeff(2, 4, 1);
  REQUIRE_FALSE(tiny.in_window);
  REQUIRE(std::isfinite(tiny.log_value));
}

TEST_CASE("contour quadrature recovers exact coefficients") {
  // C_{6}(1,10) = C(10,6) = 210.
  REQUIRE(std::exp(tstab::contour_log_coeff(1, 10, 3)) ==
          Catch::Approx(210.0).epsilon(1e-9));
  // Top coefficient: [z^4] (1+z+z^2/2)^2 = 1/4.
  REQUIRE(std::exp(tstab::contour_log_coeff(2, 2, 2)) ==
          Catch::Approx(0.25).epsilon(1e-9));
  // DP oracle cross-check.
  const double exact = tstab::exact_coeff(3, 6, 4).ln_value();
  REQUIRE(tstab::contour_log_coeff(3, 6, 4) ==
          Catch::Approx(exact).epsilon(1e-6));

  REQUIRE_THROWS_AS(tstab::contour_log_coeff(1, 10, 0), std::domain_error);
  REQUIRE_THROWS_AS(tstab::contour_log_coeff(1, 10, 6), std::domain_error);
  REQUIRE_THROWS_AS(tstab::contour_log_coeff(1, 10, 3, 32), std::domain_error);
}

TEST_CASE("saddle approximation tightens along k-doubling") {
  // |ln(approx/exact)| decreasing in k at 2m = k - ceil(sqrt(k)).
  double prev = 1e100;
  for (long long k : {100, 400, 1600}) {
    const long long two_m =
        k - static_cast<long long>(std::ceil(std::sqrt(static_cast<double>(k))));
    const long long m = two_m / 2;
    const double approx = tstab::approx_log_coeff(1, k, m).log_value;
    const double exact = log_binom_exact(k, 2 * m);
    const double gap = std::abs(approx - exact);
    REQUIRE(gap < prev);
    prev = gap;
  }
  REQUIRE(prev < 0.05);
}
