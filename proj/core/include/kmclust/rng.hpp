#pragma once

#include <cstdint>
#include <string_view>

namespace kmclust {

// splitmix64; the whole project draws randomness through this so that runs
// are reproducible from a single master seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t u64() { return splitmix64(state_); }

  // uniform in [0, 1)
  double unit() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

  // uniform in [0, bound); bound > 0
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(u64()) * bound) >> 64);
  }

  // uniform integer in [lo, hi] inclusive
  std::int64_t in_range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool coin(double p) { return unit() < p; }

 private:
  std::uint64_t state_;
};

inline std::uint64_t hash_label(std::string_view label) {
  std::uint64_t h = 0xCBF29CE484222325ull;  // FNV-1a
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ull;
  }
  return h;
}

// Labeled derivation: every subroutine/probe draws from its own stream so
// reruns of sub-components are independently reproducible.
inline Rng derive_rng(std::uint64_t master, std::string_view label, std::uint64_t a = 0,
                      std::uint64_t b = 0) {
  std::uint64_t s = master;
  std::uint64_t mixed = splitmix64(s) ^ hash_label(label);
  mixed = splitmix64(mixed) ^ a;
  mixed = splitmix64(mixed) ^ b;
  splitmix64(mixed);
  return Rng{mixed};
}

inline std::uint64_t derive_seed(std::uint64_t master, std::string_view label, std::uint64_t a = 0,
                                 std::uint64_t b = 0) {
  return derive_rng(master, label, a, b).u64();
}

}  // namespace kmclust
