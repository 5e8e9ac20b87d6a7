#pragma once

// Greedy peeling colouring: while at least n/ln^3 n vertices remain, carve
// out a t-stable set of the target size alpha_hat_{t,p}(|V'|); whatever is
// left gets singleton colours.  The target is sought with seeded greedy
// restarts; if all restarts miss, the largest set found is used and the miss
// is recorded (the existence guarantee behind the target size is asymptotic,
// so finite runs may fall short).

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "tstab/formulas.hpp"
#include "tstab/graph.hpp"
#include "tstab/params.hpp"
#include "tstab/prng.hpp"
#include "tstab/stable_sets.hpp"

namespace tstab {

inline constexpr int kPeelRestarts = 50;

struct PeelResult {
  std::vector<std::vector<int>> classes;
  int target_misses = 0;    // rounds where no restart reached the target size
  int peeled_rounds = 0;    // classes produced by peeling (rest are singletons)

  int colour_count() const { return static_cast<int>(classes.size()); }
};

inline PeelResult peel_colouring(const Graph& g, const Params& params,
                                 double epsilon, std::uint64_t seed,
                                 int restarts = kPeelRestarts) {
  const int n = g.order();
  if (n < 3) throw std::domain_error("peel_colouring: n must be >= 3");
  if (!(epsilon > 0.0) || !(epsilon < 1.0))
    throw std::domain_error("peel_colouring: epsilon must lie in (0, 1)");

  PeelResult result;
  DynBitset remaining = g.full_vertex_set();
  const double ln_n = std::log(static_cast<double>(n));
  const double stop_below = static_cast<double>(n) / (ln_n * ln_n * ln_n);

  for (std::uint64_t round = 0; remaining.count() >= stop_below; ++round) {
    const int live = remaining.count();
    if (live < 3) break;

    long long target;
    try {
      target = alpha_hat(params, live, epsilon);
    } catch (const std::domain_error&) {
      break;  // formula domain exhausted; finish with singletons
    }
    if (target < 1) break;
    if (target > live) target = live;

    const std::uint64_t round_seed = derive_stream(seed, round);
    std::vector<int> best;
    bool hit = false;
    for (int attempt = 0; attempt < restarts; ++attempt) {
      auto set = greedy_stable_set(
          g, params.t, derive_stream(round_seed, static_cast<std::uint64_t>(attempt)),
          remaining);
      if (static_cast<long long>(set.size()) >= target) {
        // Prefixes of the greedy build are t-stable, so trim to the target.
        set.resize(static_cast<std::size_t>(target));
        best = std::move(set);
        hit = true;
        break;
      }
      if (set.size() > best.size()) best = std::move(set);
    }
    if (!hit) ++result.target_misses;
    if (best.empty()) break;  // nothing addable; singletons take over

    for (const int v : best) remaining.reset(v);
    result.classes.push_back(std::move(best));
    ++result.peeled_rounds;
  }

  remaining.for_each_set([&](int v) { result.classes.push_back({v}); });
  return result;
}

}  // namespace tstab
