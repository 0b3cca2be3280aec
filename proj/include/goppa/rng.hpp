#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

namespace goppa {

// splitmix64 step, used to stretch user seeds and derive per-worker streams
// without risking overlap with the main sequence.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Deterministic generator: same seed, same sequence, on every platform.
// All randomized operations in the library take one of these explicitly;
// there is no hidden global generator anywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Independent stream for worker `stream` of a search partitioned by seed.
  static Rng derive(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    s ^= 0xd1342543de82ef95ull * (stream + 1);
    std::uint64_t b = splitmix64(s);
    return Rng(a ^ b);
  }

  std::uint64_t next() { return eng_(); }

  // Uniform in [0, bound); rejection sampled so the distribution is exact.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return x % bound;
  }

  unsigned bit() { return static_cast<unsigned>(eng_() & 1u); }

 private:
  std::mt19937_64 eng_;
};

// w distinct positions out of n, uniform over all weight-w patterns: the
// first w steps of a Fisher-Yates shuffle, result sorted for stable output.
inline std::vector<std::uint32_t> fixed_weight_sample(std::size_t n, std::size_t w, Rng& rng) {
  if (w > n) throw std::invalid_argument("weight exceeds length");
  std::vector<std::uint32_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0u);
  for (std::size_t i = 0; i < w; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(w);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace goppa
