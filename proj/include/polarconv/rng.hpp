#pragma once

#include <cstdint>
#include <random>

namespace polarconv {

// Deterministic random source. All randomized procedures in the library draw
// from this wrapper, which maps raw mt19937_64 output to doubles itself so
// results do not depend on the standard library's distribution internals.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  // Uniform integer in [0, n).
  std::size_t index(std::size_t n) {
    // Rejection-free modulo is fine here: n is tiny compared to 2^64 and any
    // bias is far below statistical relevance for sampling duties.
    return static_cast<std::size_t>(eng_() % (n == 0 ? 1 : n));
  }

  // Derive an independent child stream; used so that sibling procedures with
  // the same master seed do not share draws.
  Rng fork(std::uint64_t salt) {
    return Rng(eng_() ^ (0x9e3779b97f4a7c15ULL * (salt + 1)));
  }

private:
  std::mt19937_64 eng_;
};

} // namespace polarconv
