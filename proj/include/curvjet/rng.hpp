#pragma once

#include <cstdint>

#include "curvjet/rational.hpp"

namespace curvjet {

// Deterministic cross-platform generator (splitmix64). Standard-library
// distributions are implementation-defined, so sampling is done by hand.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on [lo, hi], inclusive.
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  Rational small_rational(int max_num = 3, int max_den = 3) {
    return rat(uniform_int(-max_num, max_num), uniform_int(1, max_den));
  }

  Rational small_nonzero(int max_num = 3, int max_den = 3) {
    Rational r;
    do {
      r = small_rational(max_num, max_den);
    } while (sgn(r) == 0);
    return r;
  }

 private:
  std::uint64_t state_;
};

}  // namespace curvjet
