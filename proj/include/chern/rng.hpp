// Deterministic randomness for sweeps. A single user seed is combined with a
// textual case key through SplitMix64, so the seed -> case mapping is
// reproducible across platforms and recordable in reports.
#pragma once

#include <cstdint>
#include <string_view>

namespace chern {

inline std::uint64_t splitmix64_step(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() { return splitmix64_step(state_); }

  // Uniform in [lo, hi], hi - lo small (rejection-free modulo bias is fine at
  // the sweep sizes used here and keeps the mapping trivial to reimplement).
  long next_in(long lo, long hi) {
    auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(next() % span);
  }

  long nonzero_in(long lo, long hi) {
    for (;;) {
      long v = next_in(lo, hi);
      if (v != 0) return v;
    }
  }

 private:
  std::uint64_t state_;
};

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

// Per-case generator: SplitMix64 seeded with mix(seed xor fnv1a(case key)).
inline SplitMix64 case_rng(std::uint64_t seed, std::string_view case_key) {
  std::uint64_t s = seed ^ fnv1a(case_key);
  splitmix64_step(s);
  return SplitMix64(s);
}

}  // namespace chern
