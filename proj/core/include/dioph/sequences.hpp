#pragma once

#include <optional>
#include <vector>

#include "dioph/norms.hpp"
#include "dioph/real.hpp"

namespace dioph {

// One linear-form best approximation. m = (m_0, m_1, ..., m_r); the level is
// M = max_{j>=1} |m_j| with m_0 the nearest-integer completion. Sign is
// canonical: the trailing nonzero coefficient among m_1..m_r is positive.
struct LinearFormBA {
  std::vector<Int> m;
  Int M;
  Enclosure zeta;                        // certified enclosure of |m . (1, alpha)|
  std::optional<Rat> zeta_exact;         // engaged for exact rational targets
  std::optional<QuadraticReal> zeta_quad;
  int nu = 0;

  std::vector<Int> coeffs() const { return {m.begin() + 1, m.end()}; }
};

struct LinearFormSequence {
  std::vector<RealScalar> target;
  std::vector<LinearFormBA> entries;
  Int bound = 0;           // levels 1..bound scanned
  bool exhaustive = false; // entries are exactly the best approximations at M <= bound
};

// One best simultaneous approximation under a gauge f.
struct SimultaneousBA {
  Int p;
  std::vector<Int> a;
  GaugeValue D;                 // f(p alpha - a)
  std::vector<RealScalar> xi;   // remainder p alpha - a, exact when target is
  int nu = 0;
};

struct SimultaneousSequence {
  explicit SimultaneousSequence(Norm f) : norm(std::move(f)) {}

  std::vector<RealScalar> target;
  Norm norm;
  std::vector<SimultaneousBA> entries;
  Int bound = 0;
  bool exhaustive = false;
  // engaged when the scan hit f(p alpha - a) = 0: the target is rational for
  // this scan and the sequence is complete and final
  bool exact_hit = false;
};

// Normalized direction xi / f(xi) as exact rationals; engaged when the entry
// carries exact rational remainders and an exact or sqrt-rational gauge value.
// The Euclidean case returns xi itself with the normalization square held in
// D; callers that need certified direction geometry use analysis helpers.
std::optional<std::vector<Rat>> direction_rational(const Norm& f, const SimultaneousBA& e);

}  // namespace dioph
