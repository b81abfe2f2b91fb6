#pragma once

// Seeded RNG used everywhere randomness is needed. splitmix64 expands the
// user seed and derives named substreams; xoshiro256** generates the stream.
// Self-contained on purpose: std::shuffle / distributions are not specified
// bit-for-bit across standard libraries, and reports must be reproducible
// for a fixed (instance, seed, config).
//
// Stream splitting rule: substream(tag) reseeds with
// splitmix64(root_seed ^ fnv1a64(tag)), so each pipeline phase draws from an
// independent stream and reordering phases does not perturb the others.

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

namespace oripack {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : root_(seed) {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64_next(sm);
  }

  std::uint64_t root_seed() const { return root_; }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in [0, bound), bound > 0. Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t bound) {
    __uint128_t m = static_cast<__uint128_t>(next()) * bound;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < bound) {
      const std::uint64_t threshold = -bound % bound;
      while (lo < threshold) {
        m = static_cast<__uint128_t>(next()) * bound;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  std::size_t index(std::size_t size) { return static_cast<std::size_t>(below(size)); }

  // Uniform double in [0, 1) with 53 random bits.
  double real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return real() < p;
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = index(i);
      std::swap(v[i - 1], v[j]);
    }
  }

  // Independent stream derived from the root seed and a phase tag.
  Rng substream(std::string_view tag) const {
    std::uint64_t sm = root_ ^ fnv1a64(tag);
    return Rng(splitmix64_next(sm));
  }

  Rng substream(std::string_view tag, std::uint64_t index) const {
    std::uint64_t sm = root_ ^ fnv1a64(tag) ^ (0x9e3779b97f4a7c15ULL * (index + 1));
    return Rng(splitmix64_next(sm));
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::uint64_t root_;
  std::array<std::uint64_t, 4> s_{};
};

}  // namespace oripack
