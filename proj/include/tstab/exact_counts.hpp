#pragma once

// Exact arbitrary-precision counting of bounded-degree degree sequences:
//   exact_coeff       C_{2m}(t,k) = [z^{2m}] R_t(z)^k  (exact rational)
//   allocation_count  S_{2m}(t,k) = (2m)! C_{2m}(t,k)  (exact integer)
//   pairing_bound     C_{2m}(t,k) (2m)!/(m! 2^m), an upper bound on the
//                     number of graphs with k vertices, m edges, max degree <= t
//   brute_graph_count exhaustive tiny-scale oracle over all edge subsets
//
// The power DP runs over t!-scaled integer coefficients (t! R_t has integer
// coefficients t!/i!), so every intermediate is an exact BigInt; results are
// reduced to canonical rationals on the way out.

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tstab/big_count.hpp"
#include "tstab/errors.hpp"

namespace tstab {

// Coefficients a_j of (t! R_t(z))^k for j = 0..max_deg (truncated).
inline std::vector<BigInt> scaled_power_coeffs(int t, long long k,
                                               long long max_deg) {
  if (t < 0 || k < 1 || max_deg < 0)
    throw std::domain_error("scaled_power_coeffs: bad arguments");
  // base[i] = t!/i!, built descending from base[t] = 1.
  std::vector<BigInt> base(static_cast<std::size_t>(t) + 1);
  base[static_cast<std::size_t>(t)] = 1;
  for (int i = t; i >= 1; --i)
    base[static_cast<std::size_t>(i - 1)] = base[static_cast<std::size_t>(i)] * i;

  std::vector<BigInt> acc{BigInt(1)};
  std::vector<BigInt> next;
  for (long long step = 0; step < k; ++step) {
    const long long old_len = static_cast<long long>(acc.size());
    const long long new_len = std::min<long long>(old_len + t, max_deg + 1);
    next.assign(static_cast<std::size_t>(new_len), BigInt(0));
    for (long long j = 0; j < old_len; ++j) {
      const BigInt& a = acc[static_cast<std::size_t>(j)];
      if (a.is_zero()) continue;
      const long long top = std::min<long long>(t, new_len - 1 - j);
      for (long long i = 0; i <= top; ++i)
        next[static_cast<std::size_t>(j + i)] += a * base[static_cast<std::size_t>(i)];
    }
    acc.swap(next);
  }
  return acc;
}

// C_{2m}(t,k): the coefficient of z^{2m} in R_t(z)^k.  Exact zero (not an
// error) when 2m > tk; domain error on negative inputs or k < 1.
inline BigCount exact_coeff(int t, long long k, long long m) {
  if (t < 0 || k < 1 || m < 0)
    throw std::domain_error("exact_coeff: t >= 0, k >= 1, m >= 0 required");
  const long long deg = 2 * m;
  if (deg > static_cast<long long>(t) * k) return BigCount(0);
  auto coeffs = scaled_power_coeffs(t, k, deg);
  if (deg >= static_cast<long long>(coeffs.size())) return BigCount(0);
  BigInt den = 1;
  const BigInt tfact = factorial_big(t);
  for (long long i = 0; i < k; ++i) den *= tfact;
  return BigCount(std::move(coeffs[static_cast<std::size_t>(deg)]), std::move(den));
}

// ln [z^j] R_t(z)^k for every j = 0..tk in one DP pass.  All coefficients in
// that range are strictly positive, so the logs are finite.
inline std::vector<double> log_coeff_row(int t, long long k) {
  if (t < 0 || k < 1) throw std::domain_error("log_coeff_row: bad arguments");
  const long long tk = static_cast<long long>(t) * k;
  auto coeffs = scaled_power_coeffs(t, k, tk);
  const double adjust = static_cast<double>(k) * log_big(factorial_big(t));
  std::vector<double> row(static_cast<std::size_t>(tk) + 1);
  for (long long j = 0; j <= tk; ++j)
    row[static_cast<std::size_t>(j)] =
        log_big(coeffs[static_cast<std::size_t>(j)]) - adjust;
  return row;
}

// S_{2m}(t,k) = (2m)! C_{2m}(t,k): allocations of 2m labelled balls into k
// bins with at most t balls per bin.  Always an exact integer.
inline BigCount allocation_count(int t, long long k, long long m) {
  BigCount c = exact_coeff(t, k, m);
  BigCount s(c.value() * BigRational(factorial_big(2 * m)));
  if (!s.is_integer())
    throw std::logic_error("allocation_count: expected an integer count");
  return s;
}

// Configuration-model bound C_{2m}(t,k) (2m)!/(m! 2^m) on the number of
// labelled graphs with k vertices, m edges and maximum degree <= t.
inline BigCount pairing_bound(int t, long long k, long long m) {
  BigCount c = exact_coeff(t, k, m);
  BigInt den = factorial_big(m);
  den <<= static_cast<unsigned>(m);
  return BigCount(c.value() * BigRational(factorial_big(2 * m), den));
}

// Number of labelled graphs on k vertices with exactly m edges, max degree
// <= t for every m at once, by a Gray-code sweep over all 2^C(k,2) edge
// subsets.  Oracle scale only: k <= 8.
inline std::vector<std::uint64_t> brute_graph_count_row(int k, int t) {
  if (k < 0 || t < 0) throw std::domain_error("brute_graph_count_row: bad arguments");
  if (k > 8)
    throw OracleScaleError("brute_graph_count_row: k > 8 exceeds oracle scale");
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < k; ++u)
    for (int v = u + 1; v < k; ++v) edges.emplace_back(u, v);
  const int e = static_cast<int>(edges.size());
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(e) + 1, 0);

  std::vector<int> deg(static_cast<std::size_t>(std::max(k, 1)), 0);
  std::vector<bool> present(static_cast<std::size_t>(std::max(e, 1)), false);
  int over = 0;   // vertices with degree > t
  int m_cur = 0;  // edges currently present
  counts[0] = 1;  // the empty graph
  const std::uint64_t total = (e >= 64) ? 0 : (1ULL << e);
  for (std::uint64_t step = 1; step < total; ++step) {
    const int idx = std::countr_zero(step);
    const auto [u, v] = edges[static_cast<std::size_t>(idx)];
    if (!present[static_cast<std::size_t>(idx)]) {
      present[static_cast<std::size_t>(idx)] = true;
      if (++deg[static_cast<std::size_t>(u)] == t + 1) ++over;
      if (++deg[static_cast<std::size_t>(v)] == t + 1) ++over;
      ++m_cur;
    } else {
      present[static_cast<std::size_t>(idx)] = false;
      if (deg[static_cast<std::size_t>(u)]-- == t + 1) --over;
      if (deg[static_cast<std::size_t>(v)]-- == t + 1) --over;
      --m_cur;
    }
    if (over == 0) ++counts[static_cast<std::size_t>(m_cur)];
  }
  return counts;
}

inline BigCount brute_graph_count(int k, int m, int t) {
  if (m < 0) throw std::domain_error("brute_graph_count: m must be >= 0");
  auto row = brute_graph_count_row(k, t);
  if (m >= static_cast<int>(row.size())) return BigCount(0);
  return BigCount(BigInt(row[static_cast<std::size_t>(m)]));
}

}  // namespace tstab
