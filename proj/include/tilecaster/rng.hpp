#pragma once

#include <cstdint>

namespace tilecaster {

// Counter-based generator: draw i of a stream is a pure function of
// (key, i), so a stream's output never depends on who else is drawing.
struct RngState {
  std::uint64_t key = 0;
  std::uint64_t counter = 0;
  friend bool operator==(const RngState&, const RngState&) = default;
};

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// Independent child stream `index` of `seed`.
constexpr RngState split(std::uint64_t seed, std::uint64_t index) {
  return {mix64(mix64(seed + kGolden) ^ mix64((index + 1) * 0xd1b54a32d192ed03ULL)), 0};
}

// Child stream of an existing stream; does not advance the parent.
constexpr RngState split(const RngState& parent, std::uint64_t index) {
  return split(parent.key ^ mix64(parent.counter), index);
}

constexpr std::uint64_t next_u64(RngState& s) {
  const std::uint64_t c = s.counter++;
  return mix64(s.key ^ mix64(c * kGolden + 0x632be59bd9b4e019ULL));
}

// Uniform integer in [0, n) by Lemire's multiply-and-reject; n > 0.
inline std::uint64_t uniform_index(RngState& s, std::uint64_t n) {
  unsigned __int128 m = static_cast<unsigned __int128>(next_u64(s)) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(next_u64(s)) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(RngState& s) {
  return static_cast<double>(next_u64(s) >> 11) * 0x1.0p-53;
}

}  // namespace tilecaster
