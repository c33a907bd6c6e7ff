#pragma once

#include <cstdint>
#include <random>

namespace qsl {

// splitmix64 step (Steele et al.), used as a mixing function.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based stream derivation: the (master, counter) pair maps to a
// 64-bit seed independently of evaluation order, so parallel and serial
// sweeps over grid points draw identical streams.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter) {
  std::uint64_t s = master;
  std::uint64_t a = splitmix64(s);
  s = a ^ (counter * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
  std::uint64_t b = splitmix64(s);
  return b;
}

inline std::mt19937_64 make_engine(std::uint64_t master, std::uint64_t counter) {
  return std::mt19937_64(derive_seed(master, counter));
}

}  // namespace qsl
