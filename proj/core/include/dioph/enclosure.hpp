#pragma once

#include <string>

#include "dioph/rat.hpp"

namespace dioph {

// Closed rational interval [lo, hi] certified to contain the represented real.
struct Enclosure {
  Rat lo;
  Rat hi;

  Enclosure() : lo(0), hi(0) {}
  Enclosure(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw PreconditionViolation("enclosure with lo > hi");
  }
  static Enclosure point(const Rat& q) { return Enclosure(q, q); }

  Rat width() const { return hi - lo; }
  Rat mid() const { return (lo + hi) / 2; }
  bool is_point() const { return lo == hi; }
  bool contains(const Rat& q) const { return lo <= q && q <= hi; }
  bool contains_zero() const { return lo <= 0 && 0 <= hi; }
  bool subset_of(const Enclosure& o) const { return o.lo <= lo && hi <= o.hi; }

  // Certified strict comparisons: true only when provable.
  bool certainly_lt(const Enclosure& o) const { return hi < o.lo; }
  bool certainly_gt(const Enclosure& o) const { return lo > o.hi; }
  bool certainly_lt(const Rat& q) const { return hi < q; }
  bool certainly_gt(const Rat& q) const { return lo > q; }
  bool certainly_ge(const Rat& q) const { return lo >= q; }
  bool certainly_le(const Rat& q) const { return hi <= q; }

  std::string str() const { return "[" + lo.get_str() + ", " + hi.get_str() + "]"; }
};

Enclosure operator+(const Enclosure& a, const Enclosure& b);
Enclosure operator-(const Enclosure& a, const Enclosure& b);
Enclosure operator-(const Enclosure& a);
Enclosure operator*(const Enclosure& a, const Enclosure& b);
Enclosure operator+(const Enclosure& a, const Rat& q);
Enclosure operator-(const Enclosure& a, const Rat& q);
Enclosure operator*(const Enclosure& a, const Rat& q);
Enclosure abs_enc(const Enclosure& a);

// Intersection; throws PreconditionViolation when empty (sound inputs always overlap).
Enclosure intersect(const Enclosure& a, const Enclosure& b);

// Enclosure of sqrt(q), q >= 0 rational, of width <= 2^-bits.
Enclosure sqrt_enclosure(const Rat& q, long bits);

// Enclosure of q^(1/n), q >= 0 rational, n >= 1.
Enclosure nth_root_enclosure(const Rat& q, int n, long bits);

// Enclosure of exp(-x) for rational x >= 0, relative width <= 2^-bits.
Enclosure exp_neg_enclosure(const Rat& x, long bits);

// Outward rounding to dyadic endpoints with denominator 2^bits (relative for
// tiny magnitudes); keeps soundness while capping operand growth.
Enclosure round_out(const Enclosure& e, long bits);

// floor(sqrt(n)) for n >= 0.
Int isqrt(const Int& n);

// Exact comparison of a + b*sqrt(d) against 0 (d > 0, not a perfect square needed only
// for irrationality; the sign logic is valid for any d >= 0).
int sign_a_plus_b_sqrt_d(const Rat& a, const Rat& b, const Int& d);

}  // namespace dioph
