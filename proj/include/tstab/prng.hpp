#pragma once

// Deterministic 64-bit PRNG (stream name: "splitmix64-v1").
//
// All randomness in this library flows from SplitMix64 so that results are
// bit-exact across platforms and thread schedules.  Sub-streams are derived
// by index, never by wall clock: derive_stream(parent, i) equals the
// (i+1)-th output of a SplitMix64 generator seeded with `parent`.

#include <cstdint>
#include <vector>

namespace tstab {

inline constexpr std::uint64_t kSplitMix64Gamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t splitmix64_finalize(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    return splitmix64_finalize(state_ += kSplitMix64Gamma);
  }

  constexpr std::uint64_t operator()() noexcept { return next(); }
  static constexpr std::uint64_t min() noexcept { return 0; }
  static constexpr std::uint64_t max() noexcept { return ~0ULL; }

  // Unbiased-enough bounded draw (Lemire multiply-shift); deterministic and
  // branch-free, which is all the experiment harness needs.
  constexpr std::uint64_t next_below(std::uint64_t n) noexcept {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

 private:
  std::uint64_t state_;
};

// Seed for child stream `index` of `parent`.
constexpr std::uint64_t derive_stream(std::uint64_t parent,
                                      std::uint64_t index) noexcept {
  return splitmix64_finalize(parent + (index + 1) * kSplitMix64Gamma);
}

// Fisher-Yates permutation of {0,...,n-1} driven by `seed`.
inline std::vector<int> random_permutation(int n, std::uint64_t seed) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  SplitMix64 gen(seed);
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(gen.next_below(static_cast<std::uint64_t>(i) + 1));
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }
  return perm;
}

}  // namespace tstab
