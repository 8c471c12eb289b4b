#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace mstlab {

// SplitMix64. Chosen because its output sequence is defined purely in terms
// of 64-bit integer arithmetic, so identical seeds give identical draws on
// every platform and compiler. std::uniform_real_distribution makes no such
// guarantee.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1), 53-bit resolution.
  double next_u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Exp(1); uses log1p so the result is finite for every draw.
  double next_exp1() { return -std::log1p(-next_u01()); }

 private:
  std::uint64_t state_;
};

// Derives an independent stream from (base seed, purpose tag, replica index).
// Streams for different tags or indices are decorrelated by construction, so
// replicas can be generated in any order or in parallel.
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view tag,
                                 std::uint64_t index = 0) {
  std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a over the tag bytes
  for (char c : tag) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 0x100000001b3ull;
  }
  Rng mix(base ^ h);
  mix.next_u64();
  Rng fin(mix.next_u64() ^ (index * 0x9e3779b97f4a7c15ull));
  return fin.next_u64();
}

}  // namespace mstlab
