#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "tstab/big_count.hpp"
#include "tstab/prng.hpp"

using tstab::BigCount;
using tstab::BigInt;
using tstab::BigRational;

TEST_CASE("log_big matches lgamma on factorials") {
  BigInt f = 1;
  for (int n = 2; n <= 400; ++n) {
    f *= n;
    const double expected = std::lgamma(static_cast<double>(n) + 1.0);
    REQUIRE(tstab::log_big(f) == Catch::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("log_big handles huge powers of two exactly") {
  BigInt x = BigInt(1) << 5000;
  REQUIRE(tstab::log_big(x) ==
          Catch::Approx(5000.0 * std::log(2.0)).epsilon(1e-14));
  REQUIRE_THROWS_AS(tstab::log_big(BigInt(0)), std::domain_error);
}

TEST_CASE("BigCount keeps canonical form") {
  BigCount c(BigInt(6), BigInt(4));
  REQUIRE(c.numerator() == 3);
  REQUIRE(c.denominator() == 2);
  REQUIRE(c.to_string() == "3/2");
  REQUIRE(BigCount(BigInt(10), BigInt(5)).is_integer());
  REQUIRE_THROWS_AS(BigCount(BigRational(-1)), std::domain_error);
}

TEST_CASE("ln_value of zero is -inf, otherwise consistent with the ratio") {
  REQUIRE(std::isinf(BigCount(0).ln_value()));
  REQUIRE(BigCount(0).ln_value() < 0);

  tstab::SplitMix64 gen(42);
  for (int i = 0; i < 200; ++i) {
    const long long num = static_cast<long long>(gen.next_below(1'000'000)) + 1;
    const long long den = static_cast<long long>(gen.next_below(1'000'000)) + 1;
    BigCount c{BigInt(num), BigInt(den)};
    const double direct = std::log(static_cast<double>(num) / den);
    REQUIRE(std::exp(c.ln_value()) ==
            Catch::Approx(std::exp(direct)).epsilon(1e-12));
  }
}

TEST_CASE("arithmetic and comparisons act on exact values") {
  BigCount a(BigInt(1), BigInt(3));
  BigCount b(BigInt(2), BigInt(3));
  REQUIRE(a + b == BigCount(1));
  REQUIRE(a * b == BigCount(BigInt(2), BigInt(9)));
  REQUIRE(a < b);
  REQUIRE(b <= BigCount(1));
}
