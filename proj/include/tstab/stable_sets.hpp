#pragma once

// Maximum t-stable set computation: an exact branch-and-bound solver and a
// seeded greedy heuristic.  A set S is t-stable when the subgraph induced on
// S has maximum degree at most t.
//
// The solver's budget is deterministic: it is charged in search nodes at
// kSearchNodesPerMs nodes per "millisecond", so identical inputs always give
// identical results (including identical timeout decisions) regardless of
// machine load or thread schedule.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tstab/graph.hpp"
#include "tstab/prng.hpp"

namespace tstab {

// Calibrated rate for converting budget_ms into a node budget.
inline constexpr double kSearchNodesPerMs = 2000.0;

inline bool is_t_stable(const Graph& g, const DynBitset& s, int t) {
  bool ok = true;
  s.for_each_set([&](int v) {
    if (g.degree_into(v, s) > t) ok = false;
  });
  return ok;
}

struct StableSearchResult {
  std::optional<int> alpha;  // empty when the budget ran out
  std::uint64_t nodes = 0;   // branch-and-bound nodes explored
  int best_seen = 0;         // best t-stable set size found (valid either way)

  bool timed_out() const { return !alpha.has_value(); }
  double elapsed_ms() const {
    return static_cast<double>(nodes) / kSearchNodesPerMs;
  }
};

namespace detail {

class StableSetSearch {
 public:
  StableSetSearch(const Graph& g, int t, std::uint64_t node_budget)
      : g_(g),
        t_(t),
        node_budget_(node_budget),
        cnt_(static_cast<std::size_t>(g.order()), 0) {}

  StableSearchResult run(const DynBitset& allowed, int initial_best) {
    best_ = initial_best;
    nodes_ = 0;
    out_of_budget_ = false;
    chosen_count_ = 0;
    search(allowed);
    StableSearchResult result;
    result.nodes = nodes_;
    result.best_seen = best_;
    if (!out_of_budget_) result.alpha = best_;
    return result;
  }

 private:
  void search(DynBitset cand) {
    if (++nodes_ > node_budget_) {
      out_of_budget_ = true;
      return;
    }
    if (chosen_count_ > best_) best_ = chosen_count_;

    while (cand.any()) {
      if (chosen_count_ + cand.count() <= best_) return;  // cardinality bound

      // Branch on the candidate with the highest residual degree.
      int v = -1;
      int vdeg = -1;
      cand.for_each_set([&](int u) {
        const int d = g_.neighbours(u).intersect_count(cand);
        if (d > vdeg) {
          vdeg = d;
          v = u;
        }
      });

      // Include v.
      DynBitset child = cand;
      child.reset(v);
      ++chosen_count_;
      in_set_.push_back(v);
      g_.neighbours(v).for_each_set([&](int u) {
        ++cnt_[static_cast<std::size_t>(u)];
      });
      // Neighbours whose count now exceeds t can never join.
      g_.neighbours(v).for_each_set([&](int u) {
        if (child.test(u) && cnt_[static_cast<std::size_t>(u)] > t_) child.reset(u);
      });
      // Members that just became saturated forbid all their outside
      // neighbours (adding one would push the member past t).
      for (const int u : in_set_) {
        if (u != v && cnt_[static_cast<std::size_t>(u)] == t_ &&
            g_.has_edge(u, v))
          child.subtract(g_.neighbours(u));
      }
      if (cnt_[static_cast<std::size_t>(v)] == t_) child.subtract(g_.neighbours(v));

      search(child);

      g_.neighbours(v).for_each_set([&](int u) {
        --cnt_[static_cast<std::size_t>(u)];
      });
      in_set_.pop_back();
      --chosen_count_;
      if (out_of_budget_) return;

      cand.reset(v);  // exclude v and keep scanning this frame
    }
  }

  const Graph& g_;
  int t_;
  std::uint64_t node_budget_;
  std::vector<int> cnt_;
  std::vector<int> in_set_;
  int chosen_count_ = 0;
  int best_ = 0;
  std::uint64_t nodes_ = 0;
  bool out_of_budget_ = false;
};

}  // namespace detail

// Greedy maximal t-stable set inside `allowed`: repeatedly add the eligible
// vertex with the fewest neighbours in the current set; ties go to the
// smallest index in the seeded permutation order (stream "greedy-v1").
// Returned in insertion order; every prefix is itself t-stable.
inline std::vector<int> greedy_stable_set(const Graph& g, int t,
                                          std::uint64_t seed,
                                          const DynBitset& allowed) {
  if (t < 0) throw std::domain_error("greedy_stable_set: t must be >= 0");
  const int n = g.order();
  const auto perm = random_permutation(n, seed);
  std::vector<int> rank(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) rank[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = i;

  std::vector<int> cnt(static_cast<std::size_t>(n), 0);
  std::vector<int> picked;
  DynBitset eligible = allowed;
  DynBitset chosen(n);

  while (eligible.any()) {
    int best = -1;
    eligible.for_each_set([&](int v) {
      if (best < 0 || cnt[static_cast<std::size_t>(v)] < cnt[static_cast<std::size_t>(best)] ||
          (cnt[static_cast<std::size_t>(v)] == cnt[static_cast<std::size_t>(best)] &&
           rank[static_cast<std::size_t>(v)] < rank[static_cast<std::size_t>(best)]))
        best = v;
    });

    const int v = best;
    picked.push_back(v);
    chosen.set(v);
    eligible.reset(v);
    g.neighbours(v).for_each_set([&](int u) {
      ++cnt[static_cast<std::size_t>(u)];
      if (eligible.test(u) && cnt[static_cast<std::size_t>(u)] > t) eligible.reset(u);
      // u just became a saturated member: its outside neighbours are frozen.
      if (chosen.test(u) && cnt[static_cast<std::size_t>(u)] == t)
        eligible.subtract(g.neighbours(u));
    });
    if (cnt[static_cast<std::size_t>(v)] == t) eligible.subtract(g.neighbours(v));
  }
  return picked;
}

inline std::vector<int> greedy_stable_set(const Graph& g, int t,
                                          std::uint64_t seed) {
  return greedy_stable_set(g, t, seed, g.full_vertex_set());
}

// Exact t-stability number by branch-and-bound.  budget_ms <= 0 means
// unlimited; otherwise the search may stop early and report a timeout value
// instead of an answer.  Restricting to `allowed` solves the induced
// subgraph problem.
inline StableSearchResult exact_stability_number(const Graph& g, int t,
                                                 long long budget_ms = -1,
                                                 const DynBitset* allowed = nullptr) {
  if (t < 0) throw std::domain_error("exact_stability_number: t must be >= 0");
  const DynBitset all = allowed ? *allowed : g.full_vertex_set();
  const std::uint64_t node_budget =
      budget_ms <= 0 ? ~0ULL
                     : static_cast<std::uint64_t>(
                           static_cast<double>(budget_ms) * kSearchNodesPerMs);

  // Warm start: a greedy set is a valid lower bound and sharpens pruning.
  const auto warm = greedy_stable_set(g, t, 0, all);

  detail::StableSetSearch search(g, t, node_budget);
  return search.run(all, static_cast<int>(warm.size()));
}

}  // namespace tstab
