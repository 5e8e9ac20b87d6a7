#pragma once

// Word-packed dynamic bitset sized once at construction.  Covers exactly the
// operations the graph search needs (set algebra, popcounts, bit scans)
// without the general-purpose surface of the standard containers.

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace tstab {

class DynBitset {
 public:
  DynBitset() : nbits_(0) {}
  explicit DynBitset(int nbits)
      : nbits_(nbits),
        words_(static_cast<std::size_t>((nbits + 63) / 64), 0ULL) {
    if (nbits < 0) throw std::domain_error("DynBitset: negative size");
  }

  int size() const { return nbits_; }

  void set(int i) { words_[word(i)] |= bit(i); }
  void reset(int i) { words_[word(i)] &= ~bit(i); }
  bool test(int i) const { return (words_[word(i)] & bit(i)) != 0; }

  void set_all() {
    if (nbits_ == 0) return;
    for (auto& w : words_) w = ~0ULL;
    trim();
  }
  void clear() {
    for (auto& w : words_) w = 0ULL;
  }

  int count() const {
    int c = 0;
    for (const auto w : words_) c += std::popcount(w);
    return c;
  }
  bool any() const {
    for (const auto w : words_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  int intersect_count(const DynBitset& other) const {
    int c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
      c += std::popcount(words_[i] & other.words_[i]);
    return c;
  }

  bool intersects(const DynBitset& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & other.words_[i]) return true;
    return false;
  }

  DynBitset& operator&=(const DynBitset& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
  }
  DynBitset& operator|=(const DynBitset& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
  }
  // this &= ~other
  DynBitset& subtract(const DynBitset& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
    return *this;
  }

  friend DynBitset operator&(DynBitset a, const DynBitset& b) { return a &= b; }

  friend bool operator==(const DynBitset& a, const DynBitset& b) {
    return a.nbits_ == b.nbits_ && a.words_ == b.words_;
  }

  // First set bit at index >= from, or -1.
  int next_set(int from) const {
    if (from >= nbits_) return -1;
    std::size_t wi = word(from);
    std::uint64_t w = words_[wi] & (~0ULL << (from & 63));
    while (true) {
      if (w) return static_cast<int>(wi * 64) + std::countr_zero(w);
      if (++wi == words_.size()) return -1;
      w = words_[wi];
    }
  }

  template <typename Fn>
  void for_each_set(Fn&& fn) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w) {
        const int b = std::countr_zero(w);
        fn(static_cast<int>(wi * 64) + b);
        w &= w - 1;
      }
    }
  }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count()));
    for_each_set([&](int v) { out.push_back(v); });
    return out;
  }

 private:
  static std::size_t word(int i) { return static_cast<std::size_t>(i) >> 6; }
  static std::uint64_t bit(int i) { return 1ULL << (i & 63); }
  void trim() {
    const int rem = nbits_ & 63;
    if (rem != 0) words_.back() &= (1ULL << rem) - 1;
  }

  int nbits_;
  std::vector<std::uint64_t> words_;
};

}  // namespace tstab
