#include "dioph/enclosure.hpp"

#include <algorithm>
#include <cctype>

namespace dioph {

Rat parse_fraction(const std::string& s) {
  std::string t = s;
  if (!t.empty() && t[0] == '+') t = t.substr(1);
  if (t.empty()) throw ParseError("empty fraction");
  try {
    auto slash = t.find('/');
    if (slash == std::string::npos) return make_rat(Int(t), 1);
    return make_rat(Int(t.substr(0, slash)), Int(t.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw ParseError("bad fraction: " + s);
  }
}

Rat parse_decimal(const std::string& s) {
  if (s.empty()) throw ParseError("empty decimal");
  std::string t = s;
  bool neg = false;
  if (t[0] == '+' || t[0] == '-') {
    neg = t[0] == '-';
    t = t.substr(1);
  }
  auto dot = t.find('.');
  std::string ip = dot == std::string::npos ? t : t.substr(0, dot);
  std::string fp = dot == std::string::npos ? "" : t.substr(dot + 1);
  if (ip.empty() && fp.empty()) throw ParseError("bad decimal: " + s);
  for (char c : ip + fp)
    if (!std::isdigit((unsigned char)c)) throw ParseError("bad decimal: " + s);
  Int num = ip.empty() ? Int(0) : Int(ip);
  Int den = 1;
  for (char c : fp) {
    num = num * 10 + (c - '0');
    den *= 10;
  }
  Rat q = make_rat(num, den);
  return neg ? Rat(-q) : q;
}

std::string rat_decimal(const Rat& q, int digits) {
  Rat a = rat_abs(q);
  Int scale = int_pow(Int(10), (unsigned long)digits);
  Int scaled = rat_floor(Rat(a.get_num() * scale, a.get_den()));
  std::string ds = scaled.get_str();
  while ((int)ds.size() <= digits) ds = "0" + ds;
  std::string out = ds.substr(0, ds.size() - digits) + "." + ds.substr(ds.size() - digits);
  if (sgn(q) < 0) out = "-" + out;
  return out;
}

double rat_double(const Rat& q) { return q.get_d(); }

Enclosure operator+(const Enclosure& a, const Enclosure& b) { return {a.lo + b.lo, a.hi + b.hi}; }
Enclosure operator-(const Enclosure& a, const Enclosure& b) { return {a.lo - b.hi, a.hi - b.lo}; }
Enclosure operator-(const Enclosure& a) { return {-a.hi, -a.lo}; }

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
  Rat c1 = a.lo * b.lo, c2 = a.lo * b.hi, c3 = a.hi * b.lo, c4 = a.hi * b.hi;
  return {std::min(std::min(c1, c2), std::min(c3, c4)), std::max(std::max(c1, c2), std::max(c3, c4))};
}

Enclosure operator+(const Enclosure& a, const Rat& q) { return {a.lo + q, a.hi + q}; }
Enclosure operator-(const Enclosure& a, const Rat& q) { return {a.lo - q, a.hi - q}; }
Enclosure operator*(const Enclosure& a, const Rat& q) {
  if (sgn(q) >= 0) return {a.lo * q, a.hi * q};
  return {a.hi * q, a.lo * q};
}

Enclosure abs_enc(const Enclosure& a) {
  if (a.lo >= 0) return a;
  if (a.hi <= 0) return -a;
  return {Rat(0), std::max<Rat>(-a.lo, a.hi)};
}

Enclosure intersect(const Enclosure& a, const Enclosure& b) {
  Rat lo = std::max(a.lo, b.lo), hi = std::min(a.hi, b.hi);
  if (lo > hi) throw PreconditionViolation("empty enclosure intersection");
  return {lo, hi};
}

Int isqrt(const Int& n) {
  if (n < 0) throw PreconditionViolation("isqrt of negative");
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

Enclosure sqrt_enclosure(const Rat& q, long bits) {
  if (q < 0) throw PreconditionViolation("sqrt of negative rational");
  if (q == 0) return Enclosure::point(0);
  // sqrt(num/den) = sqrt(num*den)/den; bracket sqrt(num*den*4^k) by integers.
  Int m = q.get_num() * q.get_den();
  Int four_k = int_pow(Int(2), (unsigned long)(2 * bits));
  Int s = isqrt(m * four_k);
  Rat den = Rat(q.get_den()) * pow2(bits);
  Rat lo = Rat(s) / den;
  Rat hi = Rat(s + 1) / den;
  return {lo, hi};
}

Enclosure nth_root_enclosure(const Rat& q, int n, long bits) {
  if (n < 1) throw PreconditionViolation("nth_root_enclosure needs n >= 1");
  if (q < 0) throw PreconditionViolation("nth root of negative rational");
  if (q == 0) return Enclosure::point(0);
  if (n == 1) return Enclosure::point(q);
  // q^(1/n) = (num den^(n-1))^(1/n) / den; bracket the integer root scaled by 2^(n*bits)
  Int m = q.get_num() * int_pow(q.get_den(), (unsigned long)(n - 1));
  Int scale = int_pow(Int(2), (unsigned long)(n * bits));
  Int root;
  mpz_root(root.get_mpz_t(), Int(m * scale).get_mpz_t(), (unsigned long)n);
  Rat den = Rat(q.get_den()) * pow2(bits);
  return {Rat(root) / den, Rat(root + 1) / den};
}

namespace {

// exp(-t) for rational t in [0,1], alternating Taylor series with bracketing partial sums.
Enclosure exp_neg_small(const Rat& t, long bits) {
  Rat target = pow2(-bits - 2);
  Rat term = 1;  // t^k / k!
  // For t in [0,1] the terms decrease from k = 1 on, so consecutive partial
  // sums bracket the limit: S_odd <= exp(-t) <= S_even.
  Rat lo = 0, hi = 1;
  Rat acc = 1;
  long k = 1;
  while (true) {
    term = term * t / k;
    if (k % 2 == 1) {
      lo = acc - term;  // subtracting the odd-index term gives a lower bound
      acc = lo;
    } else {
      hi = acc + term;
      acc = hi;
    }
    if (term < target && k % 2 == 0) break;
    ++k;
    if (k > 10000) throw PrecisionExhausted("exp series failed to converge");
  }
  if (lo < 0) lo = 0;
  return {lo, hi};
}

}  // namespace

Enclosure round_out(const Enclosure& e, long bits) {
  // scale into [1/2, 1)-ish blocks so tiny magnitudes keep relative precision
  auto down = [&](const Rat& q) -> Rat {
    if (q == 0) return q;
    long mag = (long)mpz_sizeinbase(Int(q.get_num()).get_mpz_t(), 2) -
               (long)mpz_sizeinbase(Int(q.get_den()).get_mpz_t(), 2);
    long shift = bits - mag;
    if (shift <= 0) return q;
    return Rat(rat_floor(q * pow2(shift))) * pow2(-shift);
  };
  auto up = [&](const Rat& q) -> Rat {
    if (q == 0) return q;
    long mag = (long)mpz_sizeinbase(Int(q.get_num()).get_mpz_t(), 2) -
               (long)mpz_sizeinbase(Int(q.get_den()).get_mpz_t(), 2);
    long shift = bits - mag;
    if (shift <= 0) return q;
    return Rat(rat_ceil(q * pow2(shift))) * pow2(-shift);
  };
  return Enclosure(down(e.lo), up(e.hi));
}

Enclosure exp_neg_enclosure(const Rat& x, long bits) {
  if (x < 0) throw PreconditionViolation("exp_neg_enclosure expects x >= 0");
  if (x == 0) return Enclosure::point(1);
  if (x > 4000000)
    throw PrecisionExhausted("exp(-x) underflows the representable dyadic range at x = " +
                             rat_decimal(x, 2));
  // Halve until the argument is <= 1, then square back up; each squaring at
  // most doubles relative error, so carry extra bits and round outward to
  // dyadics to cap operand growth.
  long m = 0;
  Rat t = x;
  while (t > 1) {
    t /= 2;
    ++m;
  }
  long work = bits + 2 * m + 16;
  Enclosure e = round_out(exp_neg_small(t, work), work);
  for (long i = 0; i < m; ++i) {
    e = e * e;
    if (e.lo < 0) e.lo = 0;
    e = round_out(e, work);
  }
  return e;
}

int sign_a_plus_b_sqrt_d(const Rat& a, const Rat& b, const Int& d) {
  if (d < 0) throw PreconditionViolation("negative discriminant");
  int sa = sgn(a), sb = sgn(b);
  if (sb == 0 || d == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // opposite signs: compare a^2 against b^2 d
  Rat a2 = a * a, b2d = b * b * Rat(d);
  if (a2 == b2d) return 0;
  // |a| > |b|sqrt(d) ? sign is sa : sign is sb
  return a2 > b2d ? sa : sb;
}

}  // namespace dioph
