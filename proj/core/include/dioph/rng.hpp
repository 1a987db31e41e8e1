#pragma once

#include <cstdint>
#include <string>

#include "dioph/rat.hpp"

namespace dioph {

// Splittable counter-based generator. A draw is hash(seed, counter++); a split
// derives an independent child from hash(seed, label). Identical (seed, label,
// draw-order) always reproduces the same values, across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), ctr_(0) {}

  std::uint64_t next_u64() { return mix(seed_, ctr_++); }

  Rng split(const std::string& label) const {
    std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a over the label
    for (unsigned char c : label) {
      h ^= c;
      h *= 0x100000001b3ull;
    }
    return Rng(mix(seed_, h));
  }

  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw PreconditionViolation("Rng::below(0)");
    std::uint64_t lim = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= lim);
    return v % n;
  }

  long range(long lo, long hi) {  // inclusive
    return lo + (long)below((std::uint64_t)(hi - lo + 1));
  }

  bool coin() { return next_u64() & 1; }

  // uniform numerator over a fixed positive denominator, value in (0, 1)
  Rat unit_rational(const Int& den) {
    unsigned long d = den.get_ui();
    std::uint64_t num = 1 + below(d - 1);
    return make_rat(Int((unsigned long)num), den);
  }

 private:
  static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    // splitmix64 finalizer over a xor-combined state
    std::uint64_t z = a + 0x9e3779b97f4a7c15ull * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t ctr_;
};

}  // namespace dioph
