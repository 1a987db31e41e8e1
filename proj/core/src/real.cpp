#include "dioph/real.hpp"

#include <fstream>
#include <sstream>

namespace dioph {

Enclosure ExactStream::at(const Rat& eps) const {
  if (eps <= 0) throw PreconditionViolation("eps must be positive");
  return {v_ - eps, v_ + eps};
}

SqrtStream::SqrtStream(Rat q) : q_(std::move(q)) {
  if (q_ <= 0) throw PreconditionViolation("SqrtStream expects q > 0");
}

Enclosure SqrtStream::at(const Rat& eps) const {
  if (eps <= 0) throw PreconditionViolation("eps must be positive");
  long bits = 1;
  while (pow2(-bits) > eps) ++bits;
  return sqrt_enclosure(q_, bits);
}

FileStream::FileStream(const std::string& path) : path_(path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open stream file: " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string lo, hi;
    if (!(ls >> lo >> hi)) throw ParseError("bad stream line in " + path + ": " + line);
    Enclosure e(parse_fraction(lo), parse_fraction(hi));
    if (!lines_.empty() && !e.subset_of(lines_.back()))
      throw ParseError("stream file lines not nested in " + path);
    lines_.push_back(e);
  }
  if (lines_.empty()) throw ParseError("empty stream file: " + path);
}

Enclosure FileStream::at(const Rat& eps) const {
  if (eps <= 0) throw PreconditionViolation("eps must be positive");
  for (const auto& e : lines_)
    if (e.width() <= 2 * eps) return e;
  throw PrecisionExhausted("stream file " + path_ + " exhausted at eps = " + eps.get_str());
}

BoxStream::BoxStream(Enclosure box, std::string label) : box_(std::move(box)), label_(std::move(label)) {}

Enclosure BoxStream::at(const Rat& eps) const {
  if (eps <= 0) throw PreconditionViolation("eps must be positive");
  if (box_.width() <= 2 * eps) return box_;
  throw PrecisionExhausted("box value cannot be refined below its width " + box_.width().get_str());
}

std::string BoxStream::describe() const { return label_; }

bool RealScalar::is_rational() const { return std::holds_alternative<Rat>(v_); }

std::optional<Rat> RealScalar::exact_rational() const {
  if (is_rational()) return rational();
  if (is_quadratic() && quadratic().is_rational()) return quadratic().a();
  return std::nullopt;
}

Enclosure RealScalar::enclose(const Rat& eps) const {
  if (is_rational()) return Enclosure::point(rational());
  if (is_quadratic()) {
    long bits = 1;
    while (pow2(-bits) > eps) ++bits;
    return quadratic().enclose(bits);
  }
  return stream().at(eps);
}

std::string RealScalar::describe() const {
  if (is_rational()) return rational().get_str();
  if (is_quadratic()) return quadratic().str();
  return stream().describe();
}

Rat default_max_precision() { return pow2(-256); }

namespace {

// Exact comparison when both operands are exact and live in one field.
std::optional<int> exact_compare(const RealScalar& x, const RealScalar& y) {
  auto xr = x.exact_rational(), yr = y.exact_rational();
  if (xr && yr) return cmp(*xr, *yr);
  if (x.is_quadratic() && yr) return x.quadratic().compare(*yr);
  if (xr && y.is_quadratic()) return -y.quadratic().compare(*xr);
  if (x.is_quadratic() && y.is_quadratic() && x.quadratic().same_field(y.quadratic()))
    return x.quadratic().compare(y.quadratic());
  return std::nullopt;
}

}  // namespace

Ordering compare_certified(const RealScalar& x, const RealScalar& y, const Rat& max_precision) {
  if (max_precision <= 0) throw PreconditionViolation("max_precision must be positive");
  if (auto c = exact_compare(x, y)) {
    if (*c < 0) return Ordering::LT;
    if (*c > 0) return Ordering::GT;
    return Ordering::EQ;
  }
  // refinement ladder down to the cap
  Rat eps(1, 16);
  while (true) {
    Enclosure ex, ey;
    try {
      ex = x.enclose(eps);
      ey = y.enclose(eps);
    } catch (const PrecisionExhausted&) {
      return Ordering::UNDECIDED;
    }
    if (ex.certainly_lt(ey)) return Ordering::LT;
    if (ex.certainly_gt(ey)) return Ordering::GT;
    if (eps <= max_precision) return Ordering::UNDECIDED;
    eps = eps * eps <= max_precision ? max_precision : eps * eps;
  }
}

NearestIntegerResult dist_to_nearest_integer(const RealScalar& x, const Rat& precision) {
  if (precision <= 0) throw PreconditionViolation("precision must be positive");
  if (auto q = x.exact_rational()) {
    if (is_half_integer(*q)) throw HalfIntegerTie("half-integer input: " + q->get_str());
    Int n = round_nearest(*q);
    return {Enclosure::point(rat_abs(*q - Rat(n))), n};
  }
  if (x.is_quadratic()) {
    const QuadraticReal& q = x.quadratic();
    Int fl = q.floor();
    // an irrational quadratic is never a half-integer
    QuadraticReal frac = q - Rat(fl);
    Int n = frac.compare(Rat(1, 2)) > 0 ? Int(fl + 1) : fl;
    QuadraticReal diff = q - Rat(n);
    QuadraticReal ad = diff.sign() < 0 ? -diff : diff;
    long bits = 1;
    while (pow2(-bits) > precision) ++bits;
    return {ad.enclose(bits), n};
  }
  // stream: refine until one integer is provably nearest
  Rat eps(1, 16);
  while (true) {
    Enclosure e = x.stream().at(eps);  // PrecisionExhausted propagates
    Int flo = rat_floor(e.lo + Rat(1, 2)), fhi = rat_floor(e.hi + Rat(1, 2));
    if (flo == fhi && !is_half_integer(e.lo) && !is_half_integer(e.hi)) {
      Int n = flo;
      Enclosure diff = abs_enc(e - Rat(n));
      if (diff.width() <= precision) return {diff, n};
    }
    if (eps <= precision / 4)
      throw PrecisionExhausted("cannot separate from a half-integer at precision " +
                               precision.get_str());
    eps = eps * eps;
    if (eps < precision / 4) eps = precision / 4;
  }
}

LinCombStream::LinCombStream(std::vector<std::pair<Rat, RealScalar>> terms, Rat shift)
    : terms_(std::move(terms)), shift_(std::move(shift)) {}

Enclosure LinCombStream::at(const Rat& eps) const {
  if (eps <= 0) throw PreconditionViolation("eps must be positive");
  Enclosure acc = Enclosure::point(shift_);
  long k = 0;
  for (const auto& [q, x] : terms_)
    if (q != 0) ++k;
  if (k == 0) return acc;
  // budget eps/(k |q_i|) per term keeps the total width within 2 eps
  for (const auto& [q, x] : terms_) {
    if (q == 0) continue;
    Enclosure e = x.enclose(eps / (Rat(k) * rat_abs(q)));
    acc = acc + e * q;
  }
  return acc;
}

std::string LinCombStream::describe() const {
  std::string s = "lincomb(" + shift_.get_str();
  for (const auto& [q, x] : terms_) s += " + (" + q.get_str() + ")*" + x.describe();
  return s + ")";
}

RealScalar lin_comb(const std::vector<std::pair<Rat, RealScalar>>& terms, const Rat& shift) {
  bool all_rat = true;
  Int field = 0;
  bool mixed = false;
  for (const auto& [q, x] : terms) {
    if (q == 0) continue;
    if (x.is_stream()) {
      all_rat = false;
      mixed = true;
    } else if (x.is_quadratic() && !x.quadratic().is_rational()) {
      all_rat = false;
      if (field == 0)
        field = x.quadratic().d();
      else if (field != x.quadratic().d())
        mixed = true;
    }
  }
  if (all_rat) {
    Rat s = shift;
    for (const auto& [q, x] : terms)
      if (q != 0) s += q * *x.exact_rational();
    return RealScalar(s);
  }
  if (!mixed) {
    QuadraticReal s(shift, 0, 0);
    for (const auto& [q, x] : terms) {
      if (q == 0) continue;
      if (x.is_quadratic())
        s = s + x.quadratic() * q;
      else
        s = s + Rat(q * *x.exact_rational());
    }
    if (s.is_rational()) return RealScalar(s.a());
    return RealScalar(s);
  }
  std::vector<std::pair<Rat, RealScalar>> kept;
  Rat s = shift;
  for (const auto& [q, x] : terms) {
    if (q == 0) continue;
    if (auto r = x.exact_rational())
      s += q * *r;
    else
      kept.emplace_back(q, x);
  }
  return RealScalar(std::make_shared<LinCombStream>(std::move(kept), s));
}

RealScalar parse_scalar(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("scalar needs a tag prefix: " + text);
  std::string tag = text.substr(0, colon), body = text.substr(colon + 1);
  if (tag == "rat") return RealScalar(parse_fraction(body));
  if (tag == "dec") return RealScalar(parse_decimal(body));
  if (tag == "stream")
    return RealScalar(std::make_shared<FileStream>(body));
  if (tag == "quad") {
    // (a+b*sqrt(d))/c  with integer a, b, d, c; c optional
    std::string s = body;
    if (s.empty() || s[0] != '(') throw ParseError("quad grammar: (a+b*sqrt(d))/c");
    size_t close = std::string::npos;
    int depth = 0;
    for (size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '(') ++depth;
      if (s[i] == ')' && --depth == 0) {
        close = i;
        break;
      }
    }
    if (close == std::string::npos) throw ParseError("quad grammar: missing ')'");
    std::string inner = s.substr(1, close - 1);
    std::string rest = s.substr(close + 1);
    Rat c = 1;
    if (!rest.empty()) {
      if (rest[0] != '/') throw ParseError("quad grammar: expected '/denominator'");
      c = parse_fraction(rest.substr(1));
      if (c == 0) throw ParseError("quad denominator is zero");
    }
    auto star = inner.find("*sqrt(");
    if (star == std::string::npos) throw ParseError("quad grammar: missing b*sqrt(d)");
    auto dend = inner.find(')', star);
    std::string dstr = inner.substr(star + 6, dend == std::string::npos
                                                  ? inner.size() - (star + 6)
                                                  : dend - (star + 6));
    // split "a+b" / "a-b" at the sign that precedes the coefficient
    std::string ab = inner.substr(0, star);
    size_t split = std::string::npos;
    for (size_t i = 1; i < ab.size(); ++i)
      if (ab[i] == '+' || ab[i] == '-') split = i;
    if (split == std::string::npos) throw ParseError("quad grammar: missing a±b");
    Rat a = parse_fraction(ab.substr(0, split));
    std::string bpart = ab.substr(split);  // keeps the sign
    Rat b = bpart == "+" ? Rat(1) : bpart == "-" ? Rat(-1) : parse_fraction(bpart);
    Int d(dstr);
    QuadraticReal q(a / c, b / c, d);
    if (q.b() == 0) return RealScalar(q.a());
    return RealScalar(q);
  }
  throw ParseError("unknown scalar tag: " + tag);
}

}  // namespace dioph
