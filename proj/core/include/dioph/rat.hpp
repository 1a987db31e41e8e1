#pragma once

#include <optional>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "dioph/errors.hpp"

namespace dioph {

using Int = mpz_class;
using Rat = mpq_class;  // gmp keeps these canonical: gcd 1, positive denominator

inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw ParseError("zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline Rat rat_from_long(long num, long den = 1) { return make_rat(Int(num), Int(den)); }

inline int sign(const Rat& q) { return sgn(q); }
inline int sign(const Int& z) { return sgn(z); }

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }
inline Int int_abs(const Int& z) { return z < 0 ? Int(-z) : z; }

inline Int rat_floor(const Rat& q) {
  Int f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f;
}

inline Int rat_ceil(const Rat& q) {
  Int c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return c;
}

inline bool is_half_integer(const Rat& q) { return q.get_den() == 2; }

// Nearest integer to q. Exact half-integers have no nearest integer.
inline Int round_nearest(const Rat& q) {
  if (is_half_integer(q)) throw HalfIntegerTie("exact half-integer: " + q.get_str());
  return rat_floor(q + Rat(1, 2));
}

inline std::optional<Int> round_nearest_opt(const Rat& q) {
  if (is_half_integer(q)) return std::nullopt;
  return rat_floor(q + Rat(1, 2));
}

// ||q||: exact distance from q to the nearest integer (1/2 at ties).
inline Rat dist_to_z(const Rat& q) {
  Rat fr = q - Rat(rat_floor(q));
  Rat alt = 1 - fr;
  return fr <= alt ? fr : alt;
}

inline Int int_pow(Int base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rat rat_pow(const Rat& base, long e) {
  if (e >= 0) return Rat(int_pow(base.get_num(), (unsigned long)e), int_pow(base.get_den(), (unsigned long)e));
  if (base == 0) throw PreconditionViolation("0 to a negative power");
  return Rat(int_pow(base.get_den(), (unsigned long)(-e)), int_pow(base.get_num(), (unsigned long)(-e)));
}

inline Rat pow2(long e) {
  Rat q = 1;
  if (e >= 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), (unsigned long)e);
  } else {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), (unsigned long)(-e));
  }
  return q;
}

// "p/q" or "p". Also accepts a leading sign.
Rat parse_fraction(const std::string& s);

// Decimal literal read as an exact rational: "1.25" -> 5/4, "-0.5" -> -1/2.
Rat parse_decimal(const std::string& s);

inline std::string rat_str(const Rat& q) { return q.get_str(); }

// Decimal rendering with explicit truncation, for reports (never used in comparisons).
std::string rat_decimal(const Rat& q, int digits);

double rat_double(const Rat& q);

}  // namespace dioph
