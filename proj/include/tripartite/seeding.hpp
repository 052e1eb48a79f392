#pragma once

// Sub-seed derivation for reproducible batch runs.
//
// Rule: derive_seed(master, t1, ..., tn) = h_n where
//   h_0 = splitmix64(master)
//   h_i = splitmix64(h_{i-1} ^ t_i)
// Streams only depend on their tags, so results do not depend on the order
// in which work items are evaluated.

#include <cstdint>
#include <initializer_list>
#include <random>

namespace tripartite {

using Seed = std::uint64_t;
using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr Seed derive_seed(Seed master, std::initializer_list<std::uint64_t> tags) noexcept {
  std::uint64_t h = splitmix64(master);
  for (auto t : tags) h = splitmix64(h ^ t);
  return h;
}

inline Rng make_rng(Seed seed) { return Rng(seed); }

// Stream tags used by the library and the CLI.
namespace stream {
inline constexpr std::uint64_t pauli_string = 0x5041554c49ULL;  // per-string shot sampling
inline constexpr std::uint64_t random_state = 0x5354415445ULL;
inline constexpr std::uint64_t qst = 0x515354ULL;
inline constexpr std::uint64_t direct = 0x444952ULL;
}  // namespace stream

}  // namespace tripartite
