#pragma once

#include <string>

#include "dioph/enclosure.hpp"
#include "dioph/rat.hpp"

namespace dioph {

// a + b*sqrt(d) with rational a, b and square-free d > 1. All arithmetic and
// comparisons inside one field Q(sqrt(d)) are exact.
class QuadraticReal {
 public:
  QuadraticReal(Rat a, Rat b, Int d);

  const Rat& a() const { return a_; }
  const Rat& b() const { return b_; }
  const Int& d() const { return d_; }

  bool is_rational() const { return b_ == 0; }
  bool same_field(const QuadraticReal& o) const { return b_ == 0 || o.b_ == 0 || d_ == o.d_; }

  int sign() const { return sign_a_plus_b_sqrt_d(a_, b_, b_ == 0 ? Int(0) : d_); }

  QuadraticReal operator+(const QuadraticReal& o) const;
  QuadraticReal operator-(const QuadraticReal& o) const;
  QuadraticReal operator-() const { return QuadraticReal(-a_, -b_, d_); }
  QuadraticReal operator*(const Rat& q) const { return QuadraticReal(a_ * q, b_ * q, d_); }
  QuadraticReal operator+(const Rat& q) const { return QuadraticReal(a_ + q, b_, d_); }
  QuadraticReal operator-(const Rat& q) const { return QuadraticReal(a_ - q, b_, d_); }

  // 1/(a + b sqrt d) = (a - b sqrt d) / (a^2 - b^2 d); throws on zero.
  QuadraticReal inverse() const;

  QuadraticReal operator*(const QuadraticReal& o) const;

  // Exact sign of this + coeff * sqrt(arg) for arg >= 0 in the same field.
  int sign_plus_sqrt(const QuadraticReal& coeff, const QuadraticReal& arg) const;

  // <, ==, > within the same field; throws PreconditionViolation across fields.
  int compare(const QuadraticReal& o) const;
  int compare(const Rat& q) const;

  Int floor() const;

  Enclosure enclose(long bits) const;

  std::string str() const;

  static bool is_square_free(const Int& d);

 private:
  Rat a_, b_;
  Int d_;
};

}  // namespace dioph
