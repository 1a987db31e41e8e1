#include "dioph/quadratic.hpp"

namespace dioph {

QuadraticReal::QuadraticReal(Rat a, Rat b, Int d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
  if (b_ != 0) {
    if (d_ <= 1) throw PreconditionViolation("quadratic discriminant must be > 1");
    if (!is_square_free(d_)) throw PreconditionViolation("discriminant not square-free: " + d_.get_str());
  } else {
    d_ = 0;
  }
}

bool QuadraticReal::is_square_free(const Int& d) {
  if (d <= 0) return false;
  if (d == 1) return true;
  Int n = d;
  for (Int p = 2; p * p * p <= n; ++p) {
    if (p > 2000000)
      throw PreconditionViolation("discriminant too large to verify square-free: " + d.get_str());
    if (n % (p * p) == 0) return false;
    while (n % p == 0) n /= p;
  }
  // all prime factors of the remainder exceed its cube root, so a square
  // divisor forces the remainder to be a perfect square
  Int r = isqrt(n);
  return r * r != n;
}

QuadraticReal QuadraticReal::operator+(const QuadraticReal& o) const {
  if (!same_field(o)) throw PreconditionViolation("mixed quadratic fields");
  Int d = b_ != 0 ? d_ : o.d_;
  return QuadraticReal(a_ + o.a_, b_ + o.b_, d);
}

QuadraticReal QuadraticReal::operator-(const QuadraticReal& o) const {
  if (!same_field(o)) throw PreconditionViolation("mixed quadratic fields");
  Int d = b_ != 0 ? d_ : o.d_;
  return QuadraticReal(a_ - o.a_, b_ - o.b_, d);
}

int QuadraticReal::compare(const QuadraticReal& o) const {
  if (!same_field(o)) throw PreconditionViolation("mixed quadratic fields");
  Int d = b_ != 0 ? d_ : o.d_;
  return sign_a_plus_b_sqrt_d(a_ - o.a_, b_ - o.b_, d);
}

int QuadraticReal::compare(const Rat& q) const { return sign_a_plus_b_sqrt_d(a_ - q, b_, d_); }

QuadraticReal QuadraticReal::inverse() const {
  if (sign() == 0) throw PreconditionViolation("inverse of zero");
  if (b_ == 0) return QuadraticReal(1 / a_, 0, 0);
  Rat nrm = a_ * a_ - b_ * b_ * Rat(d_);  // nonzero: sqrt(d) is irrational
  return QuadraticReal(a_ / nrm, -b_ / nrm, d_);
}

QuadraticReal QuadraticReal::operator*(const QuadraticReal& o) const {
  if (!same_field(o)) throw PreconditionViolation("mixed fields in multiplication");
  Int d = b_ != 0 ? d_ : o.d_;
  if (d == 0) return QuadraticReal(a_ * o.a_, 0, 0);
  return QuadraticReal(a_ * o.a_ + b_ * o.b_ * Rat(d), a_ * o.b_ + b_ * o.a_, d);
}

int QuadraticReal::sign_plus_sqrt(const QuadraticReal& coeff, const QuadraticReal& arg) const {
  if (arg.sign() < 0) throw PreconditionViolation("sqrt of a negative field element");
  int sc = coeff.sign();
  if (sc == 0 || arg.sign() == 0) return sign();
  int sa = sign();
  if (sa == 0) return sc;
  if (sa == sc) return sa;
  // opposite signs: compare this^2 against coeff^2 * arg inside the field
  QuadraticReal lhs = *this * *this;
  QuadraticReal rhs = coeff * coeff * arg;
  int c = lhs.compare(rhs);
  if (c == 0) return 0;
  return c > 0 ? sa : sc;
}

Int QuadraticReal::floor() const {
  if (b_ == 0) return rat_floor(a_);
  // binary search seeded by a coarse enclosure; invariant lo <= floor(x) <= hi
  Enclosure e = enclose(8);
  Int lo = rat_floor(e.lo), hi = rat_floor(e.hi);
  while (lo < hi) {
    Int mid = lo + hi + 1;
    mpz_fdiv_q_2exp(mid.get_mpz_t(), mid.get_mpz_t(), 1);  // ceil((lo+hi)/2)
    if (compare(Rat(mid)) >= 0)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

Enclosure QuadraticReal::enclose(long bits) const {
  if (b_ == 0) return Enclosure::point(a_);
  Enclosure s = sqrt_enclosure(Rat(d_), bits + 4);
  return (s * b_) + a_;
}

std::string QuadraticReal::str() const {
  if (b_ == 0) return a_.get_str();
  return "(" + a_.get_str() + ") + (" + b_.get_str() + ")*sqrt(" + d_.get_str() + ")";
}

}  // namespace dioph
