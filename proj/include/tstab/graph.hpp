#pragma once

// Simple undirected labelled graph on vertices {0,...,n-1} with bitset
// adjacency rows.  Rows stay symmetric with a zero diagonal by construction.

#include <stdexcept>
#include <utility>
#include <vector>

#include "tstab/bitset.hpp"
#include "tstab/prng.hpp"

namespace tstab {

class Graph {
 public:
  Graph() : n_(0) {}
  explicit Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n), DynBitset(n)) {
    if (n < 0) throw std::domain_error("Graph: negative order");
  }

  int order() const { return n_; }

  long long edge_count() const {
    long long total = 0;
    for (const auto& row : adj_) total += row.count();
    return total / 2;
  }

  void add_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::domain_error("Graph: no self-loops");
    adj_[static_cast<std::size_t>(u)].set(v);
    adj_[static_cast<std::size_t>(v)].set(u);
  }

  void remove_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    adj_[static_cast<std::size_t>(u)].reset(v);
    adj_[static_cast<std::size_t>(v)].reset(u);
  }

  bool has_edge(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    return adj_[static_cast<std::size_t>(u)].test(v);
  }

  int degree(int v) const {
    check_vertex(v);
    return adj_[static_cast<std::size_t>(v)].count();
  }

  const DynBitset& neighbours(int v) const {
    check_vertex(v);
    return adj_[static_cast<std::size_t>(v)];
  }

  // Number of neighbours of v inside the vertex set `s`.
  int degree_into(int v, const DynBitset& s) const {
    return neighbours(v).intersect_count(s);
  }

  DynBitset full_vertex_set() const {
    DynBitset s(n_);
    s.set_all();
    return s;
  }

 private:
  void check_vertex(int v) const {
    if (v < 0 || v >= n_) throw std::domain_error("Graph: vertex out of range");
  }

  int n_;
  std::vector<DynBitset> adj_;
};

// G_{n,p} sampler, stream "gnp-v1": one SplitMix64 draw per unordered pair in
// row-major order (0,1),(0,2),...,(n-2,n-1); the pair is an edge iff
// draw < round(p * 2^64).  Deterministic in (n, p, seed).
inline Graph sample_gnp(int n, double p, std::uint64_t seed) {
  if (n < 0) throw std::domain_error("sample_gnp: negative order");
  if (!(p >= 0.0) || !(p <= 1.0))
    throw std::domain_error("sample_gnp: p must lie in [0, 1]");
  Graph g(n);
  SplitMix64 gen(seed);
  const bool all = (p >= 1.0);
  const bool none = (p <= 0.0);
  const auto threshold =
      static_cast<std::uint64_t>(p * 18446744073709551616.0);  // p * 2^64
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const std::uint64_t draw = gen.next();
      if (none) continue;
      if (all || draw < threshold) g.add_edge(u, v);
    }
  }
  return g;
}

}  // namespace tstab
