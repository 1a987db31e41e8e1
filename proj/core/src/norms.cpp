#include "dioph/norms.hpp"

#include <algorithm>

#include "dioph/mat.hpp"

namespace dioph {

namespace {

// pi to 40 digits, enough for any Euclidean-ball volume certificate here
const char* kPiLo = "31415926535897932384626433832795028841971/10000000000000000000000000000000000000000";
const char* kPiHi = "31415926535897932384626433832795028841972/10000000000000000000000000000000000000000";

Enclosure pi_enclosure() { return {parse_fraction(kPiLo), parse_fraction(kPiHi)}; }

std::vector<Rat> to_rat_vec(const std::vector<RealScalar>& x) {
  std::vector<Rat> out;
  out.reserve(x.size());
  for (const auto& s : x) {
    auto q = s.exact_rational();
    if (!q) throw PreconditionViolation("expected rational vector");
    out.push_back(*q);
  }
  return out;
}

bool all_exact_rational(const std::vector<RealScalar>& x) {
  for (const auto& s : x)
    if (!s.exact_rational()) return false;
  return true;
}

// Common field discriminant when every coordinate is exact and at least one is
// a proper quadratic; nullopt when fields mix or a stream is present.
std::optional<Int> common_quadratic_field(const std::vector<RealScalar>& x) {
  Int d = 0;
  for (const auto& s : x) {
    if (s.is_stream()) return std::nullopt;
    if (s.is_quadratic() && !s.quadratic().is_rational()) {
      if (d == 0)
        d = s.quadratic().d();
      else if (d != s.quadratic().d())
        return std::nullopt;
    }
  }
  if (d == 0) return std::nullopt;
  return d;
}

QuadraticReal as_quad(const RealScalar& s) {
  if (s.is_quadratic()) return s.quadratic();
  return QuadraticReal(*s.exact_rational(), 0, 0);
}

QuadraticReal quad_abs(const QuadraticReal& q) { return q.sign() < 0 ? -q : q; }

QuadraticReal quad_mul(const QuadraticReal& x, const QuadraticReal& y) { return x * y; }

}  // namespace

bool GaugeValue::is_zero() const {
  if (exact) return *exact == 0;
  if (sq) return *sq == 0;
  if (exact_quad) return exact_quad->sign() == 0;
  if (sq_quad) return sq_quad->sign() == 0;
  return false;  // enclosure-only values are never certified zero
}

GaugeValue GaugeValue::from_exact(const Rat& v, long) {
  GaugeValue g;
  g.exact = v;
  g.enc = Enclosure::point(v);
  return g;
}

GaugeValue GaugeValue::from_exact_quad(const QuadraticReal& v, long bits) {
  if (v.is_rational()) return from_exact(v.a());
  GaugeValue g;
  g.exact_quad = v;
  g.enc = v.enclose(bits);
  return g;
}

GaugeValue GaugeValue::from_sq(const Rat& s, long bits) {
  GaugeValue g;
  g.sq = s;
  g.enc = sqrt_enclosure(s, bits);
  return g;
}

GaugeValue GaugeValue::from_sq_quad(const QuadraticReal& s, long bits) {
  if (s.is_rational()) return from_sq(s.a(), bits);
  GaugeValue g;
  g.sq_quad = s;
  Enclosure se = s.enclose(bits + 8);
  if (se.lo < 0) se.lo = 0;
  Enclosure lo = sqrt_enclosure(se.lo, bits);
  Enclosure hi = sqrt_enclosure(se.hi, bits);
  g.enc = {lo.lo, hi.hi};
  return g;
}

GaugeValue GaugeValue::from_enclosure(const Enclosure& e) {
  GaugeValue g;
  g.enc = e;
  return g;
}

std::string GaugeValue::str() const {
  if (exact) return exact->get_str();
  if (sq) return "sqrt(" + sq->get_str() + ")";
  if (exact_quad) return exact_quad->str();
  if (sq_quad) return "sqrt(" + sq_quad->str() + ")";
  return enc.str();
}

Ordering gauge_compare(const GaugeValue& a, const GaugeValue& b) {
  auto from_int = [](int c) { return c < 0 ? Ordering::LT : c > 0 ? Ordering::GT : Ordering::EQ; };
  if (a.exact && b.exact) return from_int(cmp(*a.exact, *b.exact));
  if (a.exact && b.sq) return from_int(sgn(*a.exact * *a.exact - *b.sq));
  if (a.sq && b.exact) return from_int(sgn(*a.sq - *b.exact * *b.exact));
  if (a.sq && b.sq) return from_int(cmp(*a.sq, *b.sq));
  // quadratic forms: values are nonnegative, so compare squares in the field
  auto sq_of = [](const GaugeValue& g) -> std::optional<QuadraticReal> {
    if (g.sq_quad) return g.sq_quad;
    if (g.exact_quad) return quad_mul(*g.exact_quad, *g.exact_quad);
    if (g.exact) return QuadraticReal(*g.exact * *g.exact, 0, 0);
    if (g.sq) return QuadraticReal(*g.sq, 0, 0);
    return std::nullopt;
  };
  if (a.is_exact() && b.is_exact()) {
    auto qa = sq_of(a), qb = sq_of(b);
    if (qa && qb && qa->same_field(*qb)) return from_int(qa->compare(*qb));
  }
  if (a.enc.certainly_lt(b.enc)) return Ordering::LT;
  if (a.enc.certainly_gt(b.enc)) return Ordering::GT;
  return Ordering::UNDECIDED;
}

Norm Norm::sup(int dim) {
  if (dim < 1) throw PreconditionViolation("norm dimension must be >= 1");
  Norm n;
  n.kind_ = NormKind::Sup;
  n.dim_ = dim;
  n.spec_ = "sup";
  n.finish_geometry();
  return n;
}

Norm Norm::euclidean(int dim) {
  if (dim < 1) throw PreconditionViolation("norm dimension must be >= 1");
  Norm n;
  n.kind_ = NormKind::Euclidean;
  n.dim_ = dim;
  n.spec_ = "l2";
  n.finish_geometry();
  return n;
}

Norm Norm::polytope(int dim, std::vector<Facet> facets) {
  if (dim < 1) throw PreconditionViolation("norm dimension must be >= 1");
  if (facets.empty()) throw PreconditionViolation("polytope norm needs facets");
  IntMat rows;
  for (auto& f : facets) {
    if ((int)f.c.size() != dim) throw PreconditionViolation("facet dimension mismatch");
    if (f.d <= 0) throw PreconditionViolation("facet bound must be positive");
    bool nonzero = false;
    for (const auto& q : f.c) nonzero = nonzero || q != 0;
    if (!nonzero) throw PreconditionViolation("zero facet normal");
    Int scale = 1;
    for (const auto& q : f.c) {
      Int den(q.get_den());
      scale = scale / gcd(scale, den) * den;
    }
    std::vector<Int> row;
    for (const auto& q : f.c) row.push_back(Int(q.get_num()) * (scale / Int(q.get_den())));
    rows.push_back(std::move(row));
  }
  // a symmetric slab intersection is bounded iff the normals span R^dim
  if (int_rank(rows) != dim)
    throw PreconditionViolation("unbounded polytope: facet normals do not span");
  Norm n;
  n.kind_ = NormKind::Polytope;
  n.dim_ = dim;
  n.facets_ = std::move(facets);
  {
    std::string s = "poly:[";
    for (size_t i = 0; i < n.facets_.size(); ++i) {
      s += i ? ",[" : "[";
      for (const auto& q : n.facets_[i].c) s += q.get_str() + ",";
      s += n.facets_[i].d.get_str() + "]";
    }
    n.spec_ = s + "]";
  }
  n.finish_geometry();
  return n;
}

Norm Norm::fstar() {
  std::vector<Facet> fs;
  fs.push_back({{Rat(1), Rat(1)}, Rat(4)});
  fs.push_back({{Rat(1), Rat(-1)}, Rat(1)});
  Norm n = polytope(2, std::move(fs));
  n.spec_ = "poly:fstar";
  return n;
}

Norm Norm::parse(const std::string& text, int dim) {
  if (text == "sup") return sup(dim);
  if (text == "l2") return euclidean(dim);
  if (text == "poly:fstar") {
    if (dim != 2) throw ParseError("poly:fstar is 2-dimensional");
    return fstar();
  }
  if (text.rfind("poly:[", 0) == 0) {
    std::string body = text.substr(5);
    std::vector<Facet> fs;
    if (body.size() < 2 || body.front() != '[' || body.back() != ']')
      throw ParseError("bad poly grammar");
    std::string inner = body.substr(1, body.size() - 2);
    size_t i = 0;
    while (i < inner.size()) {
      if (inner[i] == ',') {
        ++i;
        continue;
      }
      if (inner[i] != '[') throw ParseError("bad poly grammar near: " + inner.substr(i));
      auto close = inner.find(']', i);
      if (close == std::string::npos) throw ParseError("bad poly grammar: missing ]");
      std::string row = inner.substr(i + 1, close - i - 1);
      i = close + 1;
      std::vector<Rat> nums;
      size_t j = 0;
      while (j <= row.size()) {
        auto comma = row.find(',', j);
        std::string tok = row.substr(j, comma == std::string::npos ? std::string::npos : comma - j);
        if (!tok.empty())
          nums.push_back(tok.find('.') != std::string::npos ? parse_decimal(tok) : parse_fraction(tok));
        if (comma == std::string::npos) break;
        j = comma + 1;
      }
      if ((int)nums.size() != dim + 1) throw ParseError("facet row needs dim+1 entries");
      Facet f;
      f.c.assign(nums.begin(), nums.end() - 1);
      f.d = nums.back();
      fs.push_back(std::move(f));
    }
    return polytope(dim, std::move(fs));
  }
  throw ParseError("unknown norm: " + text);
}

Rat Norm::gauge_rational(const std::vector<Rat>& x) const {
  if ((int)x.size() != dim_) throw PreconditionViolation("gauge dimension mismatch");
  if (kind_ == NormKind::Sup) {
    Rat m = 0;
    for (const auto& q : x) {
      Rat a = rat_abs(q);
      if (a > m) m = a;
    }
    return m;
  }
  if (kind_ == NormKind::Polytope) {
    Rat m = 0;
    for (const auto& f : facets_) {
      Rat dot = 0;
      for (int j = 0; j < dim_; ++j) dot += f.c[j] * x[j];
      Rat a = rat_abs(dot) / f.d;
      if (a > m) m = a;
    }
    return m;
  }
  throw PreconditionViolation("Euclidean gauge is irrational; use gauge_sq_rational");
}

Rat Norm::gauge_sq_rational(const std::vector<Rat>& x) const {
  if (kind_ != NormKind::Euclidean) throw PreconditionViolation("gauge_sq_rational is Euclidean-only");
  if ((int)x.size() != dim_) throw PreconditionViolation("gauge dimension mismatch");
  Rat s = 0;
  for (const auto& q : x) s += q * q;
  return s;
}

Enclosure Norm::gauge_enclosure(const std::vector<Enclosure>& x, long bits) const {
  if ((int)x.size() != dim_) throw PreconditionViolation("gauge dimension mismatch");
  auto emax = [](const Enclosure& a, const Enclosure& b) {
    return Enclosure{std::max(a.lo, b.lo), std::max(a.hi, b.hi)};
  };
  if (kind_ == NormKind::Sup) {
    Enclosure m = Enclosure::point(0);
    for (const auto& e : x) m = emax(m, abs_enc(e));
    return m;
  }
  if (kind_ == NormKind::Polytope) {
    Enclosure m = Enclosure::point(0);
    for (const auto& f : facets_) {
      Enclosure dot = Enclosure::point(0);
      for (int j = 0; j < dim_; ++j) dot = dot + x[j] * f.c[j];
      m = emax(m, abs_enc(dot) * (Rat(1) / f.d));
    }
    return m;
  }
  Enclosure s = Enclosure::point(0);
  for (const auto& e : x) {
    Enclosure a = abs_enc(e);
    s = s + a * a;
  }
  Enclosure lo = sqrt_enclosure(s.lo, bits), hi = sqrt_enclosure(s.hi, bits);
  return {lo.lo, hi.hi};
}

GaugeValue Norm::gauge(const std::vector<RealScalar>& x, const Rat& eps) const {
  if ((int)x.size() != dim_) throw PreconditionViolation("gauge dimension mismatch");
  if (all_exact_rational(x)) {
    auto v = to_rat_vec(x);
    if (kind_ == NormKind::Euclidean) return GaugeValue::from_sq(gauge_sq_rational(v));
    return GaugeValue::from_exact(gauge_rational(v));
  }
  if (common_quadratic_field(x)) {
    std::vector<QuadraticReal> v;
    v.reserve(x.size());
    for (const auto& s : x) v.push_back(as_quad(s));
    if (kind_ == NormKind::Euclidean) {
      QuadraticReal s(0, 0, 0);
      for (const auto& q : v) s = s + quad_mul(q, q);
      return GaugeValue::from_sq_quad(s);
    }
    QuadraticReal m(0, 0, 0);
    if (kind_ == NormKind::Sup) {
      for (const auto& q : v) {
        QuadraticReal a = quad_abs(q);
        if (a.compare(m) > 0) m = a;
      }
    } else {
      for (const auto& f : facets_) {
        QuadraticReal dot(0, 0, 0);
        for (int j = 0; j < dim_; ++j) dot = dot + v[j] * f.c[j];
        QuadraticReal a = quad_abs(dot) * (Rat(1) / f.d);
        if (a.compare(m) > 0) m = a;
      }
    }
    return GaugeValue::from_exact_quad(m);
  }
  // enclosure route (streams or mixed quadratic fields)
  std::vector<Enclosure> es;
  es.reserve(x.size());
  for (const auto& s : x) es.push_back(s.enclose(eps));
  long bits = 1;
  while (pow2(-bits) > eps) ++bits;
  return GaugeValue::from_enclosure(gauge_enclosure(es, bits));
}

void Norm::finish_geometry() {
  if (kind_ == NormKind::Sup) {
    box_radius_ = 1;
    Rf_ = 1;
    rf_up_ = 1;
    volume_ = Enclosure::point(rat_pow(Rat(2), dim_));
    if (dim_ == 2)
      verts2_ = {{Rat(1), Rat(1)}, {Rat(-1), Rat(1)}, {Rat(-1), Rat(-1)}, {Rat(1), Rat(-1)}};
    return;
  }
  if (kind_ == NormKind::Euclidean) {
    Rat rf_hi = sqrt_enclosure(Rat(dim_), 16).hi;
    box_radius_ = std::max<long>(1, rat_ceil(rf_hi / 2 + Rat(1, 2)).get_si());
    Rf_ = 1;
    rf_up_ = rf_hi;
    Enclosure pi = pi_enclosure();
    if (dim_ == 1)
      volume_ = Enclosure::point(2);
    else {
      // V_n = V_{n-2} * 2 pi / n with V_1 = 2, V_2 = pi
      Enclosure v = dim_ % 2 == 0 ? pi : pi * Rat(4, 3);
      int start = dim_ % 2 == 0 ? 2 : 3;
      for (int k = start + 2; k <= dim_; k += 2) v = v * pi * Rat(2, k);
      volume_ = v;
    }
    return;
  }

  // Polytope: enumerate vertices (dim <= 3) for R_f, the volume fan, and SVG.
  std::vector<std::vector<Rat>> verts;
  auto satisfied = [&](const std::vector<Rat>& x) {
    for (const auto& f : facets_) {
      Rat dot = 0;
      for (int j = 0; j < dim_; ++j) dot += f.c[j] * x[j];
      if (rat_abs(dot) > f.d) return false;
    }
    return true;
  };
  auto push_unique = [&](const std::vector<Rat>& x) {
    for (const auto& v : verts)
      if (v == x) return;
    verts.push_back(x);
  };

  if (dim_ == 1) {
    Rat best = 0;
    bool first = true;
    for (const auto& f : facets_) {
      Rat ext = f.d / rat_abs(f.c[0]);
      if (first || ext < best) best = ext, first = false;
    }
    verts = {{best}, {Rat(-best)}};
  } else if (dim_ == 2) {
    size_t F = facets_.size();
    for (size_t i = 0; i < F; ++i)
      for (size_t j = i + 1; j < F; ++j)
        for (int si : {1, -1})
          for (int sj : {1, -1}) {
            const auto& a = facets_[i];
            const auto& b = facets_[j];
            Rat det = a.c[0] * b.c[1] - a.c[1] * b.c[0];
            if (det == 0) continue;
            Rat rhs0 = Rat(si) * a.d, rhs1 = Rat(sj) * b.d;
            std::vector<Rat> x = {(rhs0 * b.c[1] - a.c[1] * rhs1) / det,
                                  (a.c[0] * rhs1 - rhs0 * b.c[0]) / det};
            if (satisfied(x)) push_unique(x);
          }
  } else if (dim_ == 3) {
    auto det3 = [](const std::vector<Rat>& r0, const std::vector<Rat>& r1,
                   const std::vector<Rat>& r2) -> Rat {
      return Rat(r0[0] * (r1[1] * r2[2] - r1[2] * r2[1]) - r0[1] * (r1[0] * r2[2] - r1[2] * r2[0]) +
                 r0[2] * (r1[0] * r2[1] - r1[1] * r2[0]));
    };
    size_t F = facets_.size();
    for (size_t i = 0; i < F; ++i)
      for (size_t j = i + 1; j < F; ++j)
        for (size_t k = j + 1; k < F; ++k) {
          const auto& a = facets_[i];
          const auto& b = facets_[j];
          const auto& c = facets_[k];
          Rat D = det3(a.c, b.c, c.c);
          if (D == 0) continue;
          for (int si : {1, -1})
            for (int sj : {1, -1})
              for (int sk : {1, -1}) {
                std::vector<Rat> rhs = {Rat(si) * a.d, Rat(sj) * b.d, Rat(sk) * c.d};
                std::vector<Rat> x(3);
                for (int col = 0; col < 3; ++col) {
                  std::vector<Rat> r0 = a.c, r1 = b.c, r2 = c.c;
                  r0[col] = rhs[0];
                  r1[col] = rhs[1];
                  r2[col] = rhs[2];
                  x[col] = det3(r0, r1, r2) / D;
                }
                if (satisfied(x)) push_unique(x);
              }
        }
  }

  if (dim_ <= 3) {
    if (verts.empty()) throw PreconditionViolation("degenerate polytope ball");
    Rat Rf = 0;
    for (const auto& v : verts)
      for (const auto& q : v) Rf = std::max(Rf, rat_abs(q));
    Rat rf = 0;
    for (int mask = 0; mask < (1 << dim_); ++mask) {
      std::vector<Rat> corner(dim_);
      for (int j = 0; j < dim_; ++j) corner[j] = (mask >> j) & 1 ? Rat(1) : Rat(-1);
      rf = std::max(rf, gauge_rational(corner));
    }
    Rf_ = Rf;
    rf_up_ = rf;
    box_radius_ = std::max<long>(1, rat_ceil(Rf * rf / 2 + Rat(1, 2)).get_si());
  } else {
    Rat rf = 0, cmin = 0, dmax = 0;
    bool first = true;
    for (const auto& f : facets_) {
      Rat s = 0;
      for (const auto& q : f.c) s += rat_abs(q);
      rf = std::max(rf, Rat(s / f.d));
      dmax = std::max(dmax, f.d);
      for (const auto& q : f.c)
        if (q != 0 && (first || rat_abs(q) < cmin)) cmin = rat_abs(q), first = false;
    }
    Rat Rf = Rat(dim_) * dmax / cmin;  // certified, loose
    Rf_ = Rf;
    rf_up_ = rf;
    box_radius_ = std::max<long>(1, rat_ceil(Rf * rf / 2 + Rat(1, 2)).get_si());
  }

  if (dim_ == 2) {
    auto half = [](const std::vector<Rat>& v) { return v[1] < 0 || (v[1] == 0 && v[0] < 0) ? 1 : 0; };
    std::sort(verts.begin(), verts.end(), [&](const auto& p, const auto& q) {
      int hp = half(p), hq = half(q);
      if (hp != hq) return hp < hq;
      return p[0] * q[1] - p[1] * q[0] > 0;
    });
    verts2_ = verts;
    Rat area = 0;
    for (size_t t = 0; t < verts.size(); ++t) {
      const auto& p = verts[t];
      const auto& q = verts[(t + 1) % verts.size()];
      area += p[0] * q[1] - p[1] * q[0];
    }
    volume_ = Enclosure::point(rat_abs(area) / 2);
  } else if (dim_ == 1) {
    volume_ = Enclosure::point(verts[0][0] * 2);
  } else if (dim_ == 3) {
    // fan-triangulate each facet polygon, sum cone tetrahedra from the origin
    Rat vol6 = 0;
    for (const auto& f : facets_)
      for (int s : {1, -1}) {
        std::vector<std::vector<Rat>> on;
        for (const auto& v : verts) {
          Rat dot = 0;
          for (int j = 0; j < 3; ++j) dot += f.c[j] * v[j];
          if (dot == Rat(s) * f.d) on.push_back(v);
        }
        if (on.size() < 3) continue;
        int drop = 0;
        while (f.c[drop] == 0) ++drop;
        int u = (drop + 1) % 3, w = (drop + 2) % 3;
        std::vector<Rat> ctr(3, 0);
        for (const auto& v : on)
          for (int j = 0; j < 3; ++j) ctr[j] += v[j];
        Rat cnt = (long)on.size();
        auto half = [&](const std::vector<Rat>& v) {
          Rat y = v[w] * cnt - ctr[w], x = v[u] * cnt - ctr[u];
          return y < 0 || (y == 0 && x < 0) ? 1 : 0;
        };
        std::sort(on.begin(), on.end(), [&](const auto& p, const auto& q) {
          int hp = half(p), hq = half(q);
          if (hp != hq) return hp < hq;
          Rat px = p[u] * cnt - ctr[u], py = p[w] * cnt - ctr[w];
          Rat qx = q[u] * cnt - ctr[u], qy = q[w] * cnt - ctr[w];
          return px * qy - py * qx > 0;
        });
        for (size_t t = 1; t + 1 < on.size(); ++t) {
          const auto& A = on[0];
          const auto& B = on[t];
          const auto& C = on[t + 1];
          Rat det = A[0] * (B[1] * C[2] - B[2] * C[1]) - A[1] * (B[0] * C[2] - B[2] * C[0]) +
                    A[2] * (B[0] * C[1] - B[1] * C[0]);
          vol6 += rat_abs(det);
        }
      }
    volume_ = Enclosure::point(vol6 / 6);
  } else {
    Rat t = 0;
    bool first = true;
    for (const auto& f : facets_) {
      Rat s = 0;
      for (const auto& q : f.c) s += rat_abs(q);
      Rat cand = f.d / s;
      if (first || cand < t) t = cand, first = false;
    }
    volume_ = Enclosure(rat_pow(2 * t, dim_), rat_pow(Rat(2 * box_radius_ + 2), dim_));
  }
}

const std::vector<std::vector<Rat>>& Norm::vertices2() const {
  if (dim_ != 2) throw PreconditionViolation("vertices2 is 2-D only");
  return verts2_;
}

Enclosure Norm::volume() const { return volume_; }

bool Norm::minkowski_bound_holds(const GaugeValue& fxi, const Int& p_next) const {
  // f(xi)^n * p <= 2^n / Vol
  Rat budget_lo = rat_pow(Rat(2), dim_) / volume_.hi;
  Rat budget_hi = rat_pow(Rat(2), dim_) / volume_.lo;
  if (fxi.exact) {
    Rat lhs = rat_pow(*fxi.exact, dim_) * Rat(p_next);
    if (lhs <= budget_lo) return true;
    if (lhs > budget_hi) return false;
    throw PrecisionExhausted("volume enclosure too wide for the Minkowski check");
  }
  if (fxi.sq) {
    if (dim_ % 2 == 0) {
      Rat lhs = rat_pow(*fxi.sq, dim_ / 2) * Rat(p_next);
      if (lhs <= budget_lo) return true;
      if (lhs > budget_hi) return false;
    } else {
      Rat lhs2 = rat_pow(*fxi.sq, dim_) * Rat(p_next) * Rat(p_next);
      if (lhs2 <= budget_lo * budget_lo) return true;
      if (lhs2 > budget_hi * budget_hi) return false;
    }
    throw PrecisionExhausted("volume enclosure too wide for the Minkowski check");
  }
  if (fxi.exact_quad || fxi.sq_quad) {
    QuadraticReal v2 = fxi.sq_quad ? *fxi.sq_quad : quad_mul(*fxi.exact_quad, *fxi.exact_quad);
    QuadraticReal lhs = v2;
    for (int i = 1; i < dim_; ++i) lhs = quad_mul(lhs, v2);
    lhs = lhs * (Rat(p_next) * Rat(p_next));  // f^(2n) p^2 vs budget^2
    if (lhs.compare(budget_lo * budget_lo) <= 0) return true;
    if (lhs.compare(budget_hi * budget_hi) > 0) return false;
    throw PrecisionExhausted("volume enclosure too wide for the Minkowski check");
  }
  Enclosure lhs = abs_enc(fxi.enc);
  Enclosure ln = lhs;
  for (int i = 1; i < dim_; ++i) ln = ln * lhs;
  ln = ln * Rat(p_next);
  if (ln.certainly_le(budget_lo)) return true;
  if (ln.certainly_gt(budget_hi)) return false;
  throw PrecisionExhausted("enclosure too wide for the Minkowski check");
}

NearestPointResult Norm::nearest_point_rational(const std::vector<Rat>& y) const {
  if ((int)y.size() != dim_) throw PreconditionViolation("dimension mismatch");

  if (kind_ == NormKind::Sup || kind_ == NormKind::Euclidean) {
    // separable: coordinatewise nearest is optimal for both norms
    NearestPointResult r;
    r.a.resize(dim_);
    std::vector<Rat> dist(dim_);
    int tie_coord = -1;
    for (int j = 0; j < dim_; ++j) {
      if (is_half_integer(y[j])) {
        r.a[j] = rat_floor(y[j]);
        dist[j] = Rat(1, 2);
        if (tie_coord < 0) tie_coord = j;
      } else {
        r.a[j] = round_nearest(y[j]);
        dist[j] = rat_abs(y[j] - Rat(r.a[j]));
      }
    }
    if (kind_ == NormKind::Sup) {
      Rat m = 0;
      for (const auto& q : dist) m = std::max(m, q);
      r.value = GaugeValue::from_exact(m);
      if (tie_coord >= 0 && m == Rat(1, 2)) {
        // a half-integer coordinate attains the max: flipping it ties
        for (int j = 0; j < dim_; ++j)
          if (is_half_integer(y[j]) && dist[j] == m) {
            r.tie = true;
            r.tie_with = r.a;
            r.tie_with[j] += 1;
            break;
          }
      }
    } else {
      Rat s = 0;
      for (const auto& q : dist) s += q * q;
      r.value = GaugeValue::from_sq(s);
      if (tie_coord >= 0) {
        r.tie = true;
        r.tie_with = r.a;
        r.tie_with[tie_coord] += 1;
      }
    }
    return r;
  }
  auto res = nearest_below_rational(y, std::nullopt);
  return *res;  // always engaged without a stop hint
}

std::optional<NearestPointResult> Norm::nearest_below_rational(const std::vector<Rat>& y,
                                                               const std::optional<Rat>& stop_above) const {
  if (kind_ != NormKind::Polytope) {
    auto r = nearest_point_rational(y);
    if (stop_above) {
      Ordering o = gauge_compare(r.value, GaugeValue::from_exact(*stop_above));
      if (o == Ordering::GT || o == Ordering::EQ) return std::nullopt;
    }
    return r;
  }
  // ring search around coordinatewise rounding; ring k has sup-distance >= k-1
  // from y, so f >= (k-1)/R_f there and rings can be cut off early
  std::vector<Int> center(dim_);
  for (int j = 0; j < dim_; ++j) {
    auto n = round_nearest_opt(y[j]);
    center[j] = n ? *n : rat_floor(y[j]);
  }
  NearestPointResult best;
  bool have = false;
  long maxk = box_radius_ + 1;
  for (long k = 0; k <= maxk; ++k) {
    if (have && k >= 2) {
      // f(y - a) >= (k-1) / R_f on ring k; stop when that exceeds the best
      Rat lb = Rat(k - 1) / Rf_;
      if (best.value.exact && lb > *best.value.exact) break;
    }
    if (stop_above && !have && k >= 2) {
      Rat lb = Rat(k - 1) / Rf_;
      if (lb >= *stop_above) return std::nullopt;
    }
    // walk the ring max|off| = k
    std::vector<long> off(dim_, -k);
    while (true) {
      bool on_ring = false;
      for (int j = 0; j < dim_; ++j) on_ring = on_ring || off[j] == k || off[j] == -k;
      if (on_ring || k == 0) {
        std::vector<Rat> diff(dim_);
        std::vector<Int> a(dim_);
        for (int j = 0; j < dim_; ++j) {
          a[j] = center[j] + off[j];
          diff[j] = y[j] - Rat(a[j]);
        }
        Rat g = gauge_rational(diff);
        if (!have) {
          best.a = a;
          best.value = GaugeValue::from_exact(g);
          have = true;
        } else if (g < *best.value.exact) {
          best.a = a;
          best.value = GaugeValue::from_exact(g);
          best.tie = false;
          best.tie_with.clear();
        } else if (g == *best.value.exact) {
          best.tie = true;
          best.tie_with = a;
        }
      }
      int j = 0;
      while (j < dim_ && off[j] == k) off[j++] = -k;
      if (j == dim_) break;
      ++off[j];
    }
  }
  if (stop_above && have) {
    Ordering o = gauge_compare(best.value, GaugeValue::from_exact(*stop_above));
    if (o == Ordering::GT || o == Ordering::EQ) return std::nullopt;
  }
  return best;
}

NearestPointResult Norm::nearest_integer_point(const std::vector<RealScalar>& y, const Rat& eps) const {
  if ((int)y.size() != dim_) throw PreconditionViolation("dimension mismatch");
  if (all_exact_rational(y)) return nearest_point_rational(to_rat_vec(y));

  std::vector<Int> center(dim_);
  for (int j = 0; j < dim_; ++j) center[j] = rat_floor(y[j].enclose(Rat(1, 8)).mid() + Rat(1, 2));

  std::vector<std::vector<Int>> cands;
  std::vector<long> off(dim_, -box_radius_ - 1);
  while (true) {
    std::vector<Int> a(dim_);
    for (int j = 0; j < dim_; ++j) a[j] = center[j] + off[j];
    cands.push_back(a);
    int j = 0;
    while (j < dim_ && off[j] == box_radius_ + 1) off[j++] = -box_radius_ - 1;
    if (j == dim_) break;
    ++off[j];
  }

  if (common_quadratic_field(y)) {
    NearestPointResult best;
    bool have = false;
    for (const auto& a : cands) {
      std::vector<RealScalar> diff;
      diff.reserve(dim_);
      for (int j = 0; j < dim_; ++j) diff.push_back(RealScalar(as_quad(y[j]) - Rat(a[j])));
      GaugeValue g = gauge(diff, eps);
      if (!have) {
        best.a = a;
        best.value = g;
        have = true;
        continue;
      }
      Ordering o = gauge_compare(g, best.value);
      if (o == Ordering::LT) {
        best.a = a;
        best.value = g;
        best.tie = false;
        best.tie_with.clear();
      } else if (o == Ordering::EQ) {
        best.tie = true;
        best.tie_with = a;
      }
    }
    return best;
  }

  // stream route: refine until a unique certified minimizer emerges
  Rat e(1, 64);
  while (true) {
    long bits = 1;
    while (pow2(-bits) > e) ++bits;
    std::vector<Enclosure> vals;
    vals.reserve(cands.size());
    for (const auto& a : cands) {
      std::vector<Enclosure> diff(dim_);
      for (int j = 0; j < dim_; ++j) diff[j] = y[j].enclose(e) - Rat(a[j]);
      vals.push_back(gauge_enclosure(diff, bits));
    }
    size_t bi = 0;
    for (size_t i = 1; i < vals.size(); ++i)
      if (vals[i].hi < vals[bi].hi) bi = i;
    bool unique = true;
    for (size_t i = 0; i < vals.size(); ++i)
      if (i != bi && !(vals[bi].hi < vals[i].lo)) unique = false;
    if (unique) {
      NearestPointResult r;
      r.a = cands[bi];
      r.value = GaugeValue::from_enclosure(vals[bi]);
      return r;
    }
    if (e <= eps)
      throw PrecisionExhausted("nearest_integer_point: minimizer not separated at precision " +
                               eps.get_str());
    e = e * e;
    if (e < eps) e = eps;
  }
}

IlluminationResult Norm::illuminates(const std::vector<Rat>& theta,
                                     const std::vector<Rat>& theta_prime) const {
  if ((int)theta.size() != dim_ || (int)theta_prime.size() != dim_)
    throw PreconditionViolation("dimension mismatch");
  if (kind_ == NormKind::Euclidean) {
    if (gauge_sq_rational(theta) != 1)
      throw PreconditionViolation("theta must lie on the unit sphere");
    Rat dot = 0, nn = 0;
    for (int j = 0; j < dim_; ++j) {
      dot += theta[j] * theta_prime[j];
      nn += theta_prime[j] * theta_prime[j];
    }
    if (dot >= 0 || nn == 0) return {false, Rat(0)};
    Rat lambda = -dot / nn;  // minimizer of |theta + lambda theta'|^2
    std::vector<Rat> z(dim_);
    for (int j = 0; j < dim_; ++j) z[j] = theta[j] + lambda * theta_prime[j];
    if (gauge_sq_rational(z) >= 1) return {false, Rat(0)};
    return {true, lambda};
  }
  std::vector<Facet> fs;
  const std::vector<Facet>* facets = &facets_;
  if (kind_ == NormKind::Sup) {
    for (int j = 0; j < dim_; ++j) {
      Facet f;
      f.c.assign(dim_, Rat(0));
      f.c[j] = 1;
      f.d = 1;
      fs.push_back(std::move(f));
    }
    facets = &fs;
  }
  if (gauge_rational(theta) != 1)
    throw PreconditionViolation("theta must lie on the unit-ball boundary");
  Rat lambda_cap = 0;
  bool cap_set = false;
  for (const auto& f : *facets) {
    Rat dt = 0, dp = 0;
    for (int j = 0; j < dim_; ++j) {
      dt += f.c[j] * theta[j];
      dp += f.c[j] * theta_prime[j];
    }
    if (rat_abs(dt) == f.d) {
      if (sgn(dt) * sgn(dp) >= 0) return {false, Rat(0)};  // active facet must strictly improve
      Rat bound = 2 * f.d / rat_abs(dp);
      if (!cap_set || bound < lambda_cap) lambda_cap = bound, cap_set = true;
    } else if (dp != 0) {
      Rat bound = (f.d - rat_abs(dt)) / rat_abs(dp);
      if (!cap_set || bound < lambda_cap) lambda_cap = bound, cap_set = true;
    }
  }
  Rat lambda = cap_set ? lambda_cap / 2 : Rat(1);
  if (lambda <= 0) return {false, Rat(0)};
  std::vector<Rat> z(dim_);
  for (int j = 0; j < dim_; ++j) z[j] = theta[j] + lambda * theta_prime[j];
  if (gauge_rational(z) >= 1) return {false, Rat(0)};
  return {true, lambda};
}

}  // namespace dioph
