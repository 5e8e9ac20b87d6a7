#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "tstab/graph.hpp"
#include "tstab/moments.hpp"
#include "tstab/prng.hpp"
#include "tstab/stable_sets.hpp"

using tstab::BoundSide;
using tstab::CountMode;
using tstab::Params;

TEST_CASE("log_weight closed cases") {
  const Params p(1, 0.5);
  // m = 0: no edges at all.
  REQUIRE(tstab::log_weight(p, 7, 0) ==
          Catch::Approx(21.0 * std::log(0.5)).epsilon(1e-14));
  // f(1) = 6 * 1 * (1/2) * (1/2)^5 = 0.09375 at t=1, k=4.
  REQUIRE(tstab::log_weight(p, 4, 1) ==
          Catch::Approx(std::log(0.09375)).epsilon(1e-13));

  REQUIRE_THROWS_AS(tstab::log_weight(p, 4, 3), std::domain_error);
  REQUIRE_THROWS_AS(tstab::log_weight(p, 0, 0), std::domain_error);
  REQUIRE_THROWS_AS(tstab::log_weight(p, 4, 1, CountMode::Exact, 2),
                    std::domain_error);  // budget exceeded
  REQUIRE_THROWS_AS(tstab::log_weight(Params(0, 0.5), 4, 1, CountMode::Saddle),
                    std::domain_error);
}

TEST_CASE("exact and saddle modes agree near the peak") {
  const Params p(2, 0.5);
  const long long k = 100;
  const auto profile = tstab::build_profile(p, k, CountMode::Exact);
  for (long long m = profile.m_star - 2; m <= profile.m_star + 2; ++m) {
    const double exact = tstab::log_weight(p, k, m, CountMode::Exact);
    const double saddle = tstab::log_weight(p, k, m, CountMode::Saddle);
    REQUIRE(std::abs(exact - saddle) <= 0.05);
  }
}

TEST_CASE("exact and saddle modes agree across the window") {
  for (int t : {1, 2, 3}) {
    for (long long k : {200, 600}) {
      const Params p(t, 0.4);
      const double sk = std::sqrt(static_cast<double>(k));
      const double lk = std::log(static_cast<double>(k));
      const long long m_lo =
          static_cast<long long>(std::ceil(0.5 * k * (t - lk / sk)));
      const long long m_hi =
          static_cast<long long>(std::floor(0.5 * k * (t - 1.0 / (sk * lk))));
      const long long stride = std::max<long long>(1, (m_hi - m_lo) / 5);
      for (long long m = m_lo; m <= m_hi; m += stride) {
        const double exact = tstab::log_weight(p, k, m, CountMode::Exact);
        const double saddle = tstab::log_weight(p, k, m, CountMode::Saddle);
        REQUIRE(std::abs(exact - saddle) <= 0.1);
      }
    }
  }
}

TEST_CASE("profile at t=0 collapses to the edgeless term") {
  const Params p(0, 0.3);
  const auto profile = tstab::build_profile(p, 25);
  REQUIRE(profile.log_f.size() == 1);
  REQUIRE(profile.m_star == 0);
  REQUIRE(profile.log_sum ==
          Catch::Approx(300.0 * std::log(0.7)).epsilon(1e-14));
}

TEST_CASE("m* sits where the theory says (t=1, p=1/2, k=400)") {
  const Params p(1, 0.5);
  const auto profile = tstab::build_profile(p, 400, CountMode::Exact);
  // 2m* = 400 - 20 + o(20), i.e. m* within 8 of 190.
  REQUIRE(std::abs(profile.m_star - 190) <= 8);
  REQUIRE(tstab::mstar_prediction(p, 400) == Catch::Approx(190.0));
}

TEST_CASE("lambda_m crosses 1 exactly once (t=1, k=400, p=1/2)") {
  const Params p(1, 0.5);
  const auto profile = tstab::build_profile(p, 400, CountMode::Exact);
  int sign_changes = 0;
  bool above = profile.ratio(0) > 1.0;
  REQUIRE(above);  // lambda starts above 1
  for (long long m = 1; m < profile.max_m(); ++m) {
    const bool now = profile.ratio(m) > 1.0;
    if (now != above) {
      ++sign_changes;
      above = now;
    }
  }
  REQUIRE(sign_changes == 1);
  REQUIRE_FALSE(above);  // and ends below 1
}

TEST_CASE("profiles are unimodal at desk scale") {
  for (int t : {1, 2, 3}) {
    for (double pr : {0.3, 0.5, 0.7}) {
      for (long long k : {11, 60, 237}) {
        const Params p(t, pr);
        const auto profile = tstab::build_profile(p, k, CountMode::Exact);
        int sign_changes = 0;
        bool above = true;
        for (long long m = 0; m < profile.max_m(); ++m) {
          const bool now = profile.ratio(m) > 1.0;
          if (m == 0) {
            above = now;
            continue;
          }
          if (now != above) {
            ++sign_changes;
            above = now;
          }
        }
        REQUIRE(sign_changes <= 1);
      }
    }
  }
}

TEST_CASE("mstar_prediction closed values") {
  REQUIRE(tstab::mstar_prediction(Params(1, 0.5), 100) == Catch::Approx(45.0));
  REQUIRE(tstab::mstar_prediction(Params(2, 0.5), 200) == Catch::Approx(190.0));
  REQUIRE(tstab::mstar_prediction(Params(0, 0.5), 100) == 0.0);
  // p -> 1 kills the sqrt correction.
  REQUIRE(tstab::mstar_prediction(Params(1, 0.999999), 100) ==
          Catch::Approx(50.0).margin(0.01));
}

TEST_CASE("probability upper bound: t=0 exact and term bracketing") {
  const Params p0(0, 0.5);
  const auto bound0 = tstab::log_prob_stable_upper(p0, 12);
  REQUIRE(bound0.log_bound == Catch::Approx(66.0 * std::log(0.5)).epsilon(1e-14));
  REQUIRE(bound0.log_closed_form ==
          Catch::Approx(66.0 * std::log(0.5)).epsilon(1e-14));

  // log_sum within ln(#terms) of the max term.
  const Params p(2, 0.3);
  const auto profile = tstab::build_profile(p, 60);
  const double max_term = profile.log_f[static_cast<std::size_t>(profile.m_star)];
  REQUIRE(profile.log_sum >= max_term);
  REQUIRE(profile.log_sum <= max_term + std::log(60.0 + 1.0));
}

TEST_CASE("probability upper bound dominates an exact tiny-k enumeration") {
  // P(A in S_1) for k=4, p=1/2: 10 of the 64 graphs have max degree <= 1.
  const Params p(1, 0.5);
  const auto bound = tstab::log_prob_stable_upper(p, 4);
  REQUIRE(std::exp(bound.log_bound) >= 10.0 / 64.0);

  // Monte Carlo estimate never exceeds the bound either.
  int hits = 0;
  const int trials = 20000;
  for (int i = 0; i < trials; ++i) {
    const auto g = tstab::sample_gnp(4, 0.5, tstab::derive_stream(99, i));
    if (tstab::is_t_stable(g, g.full_vertex_set(), 1)) ++hits;
  }
  REQUIRE(static_cast<double>(hits) / trials <= std::exp(bound.log_bound));
}

TEST_CASE("expected-count bounds: order, gap, and exact t=0 case") {
  // t=0, k=2, n=3: E = 3 * (1/2).
  const Params p0(0, 0.5);
  const auto upper0 = tstab::log_expected_count(p0, 3, 2, BoundSide::Upper);
  REQUIRE(upper0.log_bound == Catch::Approx(std::log(1.5)).epsilon(1e-14));

  for (int t : {0, 1, 2}) {
    const Params p(t, 0.4);
    for (long long k : {5, 20, 45}) {
      const long long n = 200;
      const auto up = tstab::log_expected_count(p, n, k, BoundSide::Upper);
      const auto lo = tstab::log_expected_count(p, n, k, BoundSide::Lower);
      REQUIRE(lo.log_bound <= up.log_bound);
      const double cap = std::log(t * k / 2.0 + 1.0) + t + t * t + std::log(2.0);
      REQUIRE(up.log_bound - lo.log_bound <= cap + 1e-9);
      REQUIRE(lo.log_closed_form == up.log_closed_form);
    }
  }
  REQUIRE_THROWS_AS(tstab::log_expected_count(p0, 5, 6, BoundSide::Upper),
                    std::domain_error);
}

TEST_CASE("t=0 closed form: upper equals ln C(n,k) + C(k,2) ln(1-p) exactly") {
  const Params p(0, 0.35);
  for (long long k : {2, 9, 30}) {
    const long long n = 5000;
    const auto up = tstab::log_expected_count(p, n, k, BoundSide::Upper);
    const double expected =
        tstab::log_binomial(n, k) + 0.5 * k * (k - 1) * std::log1p(-0.35);
    REQUIRE(up.log_bound == Catch::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("first-moment threshold flips around alpha at n = 10^6") {
  const long long n = 1000000;
  const Params p(1, 0.5);
  const double lg = [](double x) { return std::log2(x); }(static_cast<double>(n));
  const double alpha = 2 * lg - std::log2(lg) + std::log2(2.0 / std::numbers::e) +
                       2 * std::log2(std::numbers::e / 2.0) + 1.0;
  const long long k_hi = static_cast<long long>(std::ceil(alpha + 0.2));
  const long long k_lo = static_cast<long long>(std::floor(alpha - 0.2));
  REQUIRE(tstab::log_expected_count(p, n, k_hi, BoundSide::Upper).log_bound < 0.0);
  const double lower =
      tstab::log_expected_count(p, n, k_lo, BoundSide::Lower).log_bound;
  REQUIRE(lower > 0.0);
  // (eps - o(1)) ln n head-room per the lower-bound expansion.
  REQUIRE(lower > 0.1 * std::log(static_cast<double>(n)));
}
