#include <algorithm>

#include "dioph/enumerate.hpp"

namespace dioph {

namespace {

// ---------------------------------------------------------------------------
// continued fractions

std::vector<std::pair<Int, Int>> convergents_from_quotients(const std::vector<Int>& as) {
  std::vector<std::pair<Int, Int>> out;
  Int pm2 = 0, pm1 = 1, qm2 = 1, qm1 = 0;
  for (const auto& a : as) {
    Int p = a * pm1 + pm2;
    Int q = a * qm1 + qm2;
    out.emplace_back(p, q);
    pm2 = pm1;
    pm1 = p;
    qm2 = qm1;
    qm1 = q;
  }
  return out;
}

std::vector<Int> cf_rational(Rat x) {
  std::vector<Int> as;
  while (true) {
    Int a = rat_floor(x);
    as.push_back(a);
    Rat frac = x - Rat(a);
    if (frac == 0) break;
    x = 1 / frac;
  }
  return as;
}

// ---------------------------------------------------------------------------
// fixed-point scaffolding for the pruned enumerator

struct Fixed {
  long S = 0;
  Int mod;               // 2^S
  std::vector<Int> A;    // round(alpha_j * 2^S)
  std::vector<Int> err;  // certified |alpha_j 2^S - A_j| <= err_j ulps

  Int err_budget(const Int& level) const {
    Int s = 0;
    for (const auto& e : err) s += e;
    return s * level;
  }
};

Fixed build_fixed(const std::vector<RealScalar>& alpha, long S) {
  Fixed fx;
  fx.S = S;
  mpz_ui_pow_ui(fx.mod.get_mpz_t(), 2, (unsigned long)S);
  for (const auto& a : alpha) {
    Enclosure e = a.enclose(pow2(-S - 2));
    Rat scaled = e.mid() * pow2(S);
    Int approx = rat_floor(scaled + Rat(1, 2));
    Int ulps = rat_ceil(e.width() * pow2(S)) + 1;
    fx.A.push_back(approx);
    fx.err.push_back(ulps);
  }
  return fx;
}

// centered residue of v modulo m, in (-m/2, m/2]
Int centered_mod(const Int& v, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
  if (2 * r > m) r -= m;
  return r;
}

// ---------------------------------------------------------------------------
// All n in [lo, hi] with |centered((C + n A) mod 2^S)| < Y.
//
// Lattice view: points (n, C + n A - k 2^S); enumerate the lattice
// {(n, n A - k 2^S)} inside [lo, hi] x [-C - Y, -C + Y] with a Gauss-reduced
// basis. Exact integer arithmetic; strictness re-checked per point.

struct Vec2 {
  Int x, y;
};

class LineSolver {
 public:
  LineSolver(Int A, Int mod) : A_(std::move(A)), mod_(std::move(mod)) {}

  void solve(const Int& C, const Int& lo, const Int& hi, const Int& Y, std::vector<Int>& out) {
    if (lo > hi || Y <= 0) return;
    if (2 * Y >= mod_) {
      for (Int n = lo; n <= hi; ++n) out.push_back(n);
      return;
    }
    Int X = std::max<Int>(int_abs(lo), int_abs(hi));
    if (X == 0) {
      if (int_abs(centered_mod(C, mod_)) < Y) out.push_back(0);
      return;
    }
    reduce_for(X, Y);

    Int ylo = -C - Y, yhi = -C + Y;
    Int det = b1_.x * b2_.y - b1_.y * b2_.x;  // = +-2^S
    bool first = true;
    Rat tmin, tmax;
    for (const Int& cx : {lo, hi})
      for (const Int& cy : {ylo, yhi}) {
        Rat t = Rat(Int(b1_.x * cy - b1_.y * cx)) / Rat(det);
        if (first || t < tmin) tmin = t;
        if (first || t > tmax) tmax = t;
        first = false;
      }
    for (Int t = rat_ceil(tmin); t <= rat_floor(tmax); ++t) {
      bool empty = false, haveS = false;
      Rat smin, smax;
      auto clamp = [&](const Int& bcoord, const Int& lo_c, const Int& hi_c, const Int& tb) {
        if (empty) return;
        if (bcoord == 0) {
          if (tb < lo_c || tb > hi_c) empty = true;
          return;
        }
        Rat a = Rat(Int(lo_c - tb)) / Rat(bcoord);
        Rat b = Rat(Int(hi_c - tb)) / Rat(bcoord);
        if (a > b) std::swap(a, b);
        if (!haveS) {
          smin = a;
          smax = b;
          haveS = true;
        } else {
          smin = std::max(smin, a);
          smax = std::min(smax, b);
        }
      };
      clamp(b1_.x, lo, hi, Int(t * b2_.x));
      clamp(b1_.y, ylo, yhi, Int(t * b2_.y));
      if (empty || !haveS) continue;
      for (Int s = rat_ceil(smin); s <= rat_floor(smax); ++s) {
        Int x = s * b1_.x + t * b2_.x;
        if (x < lo || x > hi) continue;
        Int y = s * b1_.y + t * b2_.y;
        if (int_abs(Int(C + y)) < Y) out.push_back(x);
      }
    }
  }

 private:
  Int A_, mod_;
  long xb_ = -1, yb_ = -1;
  Vec2 b1_, b2_;

  static long bits(const Int& v) { return v == 0 ? 1 : (long)mpz_sizeinbase(v.get_mpz_t(), 2); }

  void reduce_for(const Int& X, const Int& Y) {
    long xb = bits(X), yb = bits(Y);
    if (xb == xb_ && yb == yb_) return;
    xb_ = xb;
    yb_ = yb;
    Int W2x, W2y;  // metric |v|^2 = x^2 4^yb + y^2 4^xb balances the box aspect
    mpz_ui_pow_ui(W2x.get_mpz_t(), 2, (unsigned long)(2 * yb));
    mpz_ui_pow_ui(W2y.get_mpz_t(), 2, (unsigned long)(2 * xb));
    b1_ = {Int(1), A_};
    b2_ = {Int(0), mod_};
    auto dot = [&](const Vec2& a, const Vec2& b) -> Int {
      return a.x * b.x * W2x + a.y * b.y * W2y;
    };
    for (int iter = 0; iter < 256; ++iter) {
      if (dot(b1_, b1_) > dot(b2_, b2_)) std::swap(b1_, b2_);
      Int n11 = dot(b1_, b1_);
      if (n11 == 0) break;
      Int n12 = dot(b1_, b2_);
      Int num = 2 * n12 + n11, den = 2 * n11;
      Int mu;
      mpz_fdiv_q(mu.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
      if (mu == 0) break;
      b2_.x -= mu * b1_.x;
      b2_.y -= mu * b1_.y;
    }
  }
};

// ---------------------------------------------------------------------------
// exact/certified value of one coefficient vector

struct FormValue {
  std::vector<Int> m;  // (m0, m1..mr) with the minimizing m0
  std::optional<Rat> exact;
  std::optional<QuadraticReal> quad;
  Enclosure enc;
  bool zero = false;
  bool half_tie = false;  // exact 1/2: two m0 complete equally well
  bool resolved = false;
};

class Evaluator {
 public:
  Evaluator(const std::vector<RealScalar>& alpha, Rat cap) : alpha_(alpha), cap_(std::move(cap)) {
    all_rational_ = true;
    for (const auto& a : alpha_) all_rational_ = all_rational_ && a.exact_rational().has_value();
    if (all_rational_) {
      den_ = 1;
      for (const auto& a : alpha_) {
        Int d = a.exact_rational()->get_den();
        den_ = den_ / gcd(den_, d) * d;
      }
      for (const auto& a : alpha_) {
        Rat q = *a.exact_rational();
        num_.push_back(Int(q.get_num()) * (den_ / Int(q.get_den())));
      }
    }
    quad_field_ = 0;
    bool mixed = false;
    for (const auto& a : alpha_) {
      if (a.is_stream()) mixed = true;
      if (a.is_quadratic() && !a.quadratic().is_rational()) {
        if (quad_field_ == 0)
          quad_field_ = a.quadratic().d();
        else if (quad_field_ != a.quadratic().d())
          mixed = true;
      }
    }
    if (mixed) quad_field_ = 0;
  }

  FormValue eval(const std::vector<Int>& coeffs, const std::optional<Rat>& irrelevant_above) const {
    FormValue fv;
    if (all_rational_) {
      Int s = 0;
      for (size_t j = 0; j < coeffs.size(); ++j)
        if (coeffs[j] != 0) s += coeffs[j] * num_[j];
      Int q, rem;
      mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), s.get_mpz_t(), den_.get_mpz_t());
      Int m0;
      Rat zeta;
      if (2 * rem == den_) {
        fv.half_tie = true;
        m0 = -q;  // deterministic floor completion on the exact tie
        zeta = Rat(1, 2);
      } else if (2 * rem < den_) {
        m0 = -q;
        zeta = make_rat(rem, den_);
      } else {
        m0 = -(q + 1);
        zeta = make_rat(Int(den_ - rem), den_);
      }
      fv.m.push_back(m0);
      for (const auto& c : coeffs) fv.m.push_back(c);
      fv.exact = zeta;
      fv.enc = Enclosure::point(zeta);
      fv.zero = zeta == 0;
      fv.resolved = true;
      return fv;
    }
    if (quad_field_ != 0) {
      QuadraticReal s(0, 0, 0);
      for (size_t j = 0; j < coeffs.size(); ++j) {
        if (coeffs[j] == 0) continue;
        if (alpha_[j].is_quadratic())
          s = s + alpha_[j].quadratic() * Rat(coeffs[j]);
        else
          s = s + Rat(Rat(coeffs[j]) * *alpha_[j].exact_rational());
      }
      if (s.is_rational()) {
        Rat x = s.a();
        Rat zeta = dist_to_z(x);
        fv.half_tie = is_half_integer(x);
        Int m0 = fv.half_tie ? Int(-rat_floor(x)) : Int(-round_nearest(x));
        fv.m.push_back(m0);
        for (const auto& c : coeffs) fv.m.push_back(c);
        fv.exact = zeta;
        fv.enc = Enclosure::point(zeta);
        fv.zero = zeta == 0;
        fv.resolved = true;
        return fv;
      }
      Int fl = s.floor();
      QuadraticReal frac = s - Rat(fl);
      Int m0 = frac.compare(Rat(1, 2)) > 0 ? Int(-(fl + 1)) : Int(-fl);
      QuadraticReal diff = s + Rat(m0);
      if (diff.sign() < 0) diff = -diff;
      fv.m.push_back(m0);
      for (const auto& c : coeffs) fv.m.push_back(c);
      fv.quad = diff;
      fv.enc = diff.enclose(96);
      fv.resolved = true;
      return fv;
    }
    // stream / mixed-field route
    Rat eps(1, 1024);
    while (true) {
      Enclosure e = sum_enclosure(coeffs, eps);
      Int flo = rat_floor(e.lo + Rat(1, 2)), fhi = rat_floor(e.hi + Rat(1, 2));
      if (flo == fhi && !is_half_integer(e.lo) && !is_half_integer(e.hi)) {
        fv.m.push_back(-flo);
        for (const auto& c : coeffs) fv.m.push_back(c);
        fv.enc = abs_enc(e - Rat(flo));
        fv.resolved = true;
        return fv;
      }
      if (irrelevant_above) {
        // ||x|| >= 1/2 - dist(x, half-integers); cheap certified lower bound
        Rat lb = Rat(1, 2) - dist_to_z(e.lo + Rat(1, 2)) - e.width();
        if (lb > *irrelevant_above) return fv;  // unresolved, provably irrelevant
      }
      if (eps <= cap_)
        throw PrecisionExhausted("linear-form value straddles a half-integer at the precision cap");
      eps = eps * eps;
      if (eps < cap_) eps = cap_;
    }
  }

  Enclosure sum_enclosure(const std::vector<Int>& coeffs, const Rat& eps) const {
    Rat budget = 0;
    for (const auto& c : coeffs) budget += rat_abs(Rat(c));
    if (budget == 0) budget = 1;
    Enclosure acc = Enclosure::point(0);
    for (size_t j = 0; j < coeffs.size(); ++j) {
      if (coeffs[j] == 0) continue;
      Enclosure e = alpha_[j].enclose(eps / budget);
      acc = acc + e * Rat(coeffs[j]);
    }
    return acc;
  }

  Ordering compare(const FormValue& a, const FormValue& b) const {
    if (a.exact && b.exact) {
      int c = cmp(*a.exact, *b.exact);
      return c < 0 ? Ordering::LT : c > 0 ? Ordering::GT : Ordering::EQ;
    }
    auto as_quad = [](const FormValue& v) -> std::optional<QuadraticReal> {
      if (v.quad) return v.quad;
      if (v.exact) return QuadraticReal(*v.exact, 0, 0);
      return std::nullopt;
    };
    auto qa = as_quad(a), qb = as_quad(b);
    if (qa && qb && qa->same_field(*qb)) {
      int c = qa->compare(*qb);
      return c < 0 ? Ordering::LT : c > 0 ? Ordering::GT : Ordering::EQ;
    }
    Enclosure ea = a.enc, eb = b.enc;
    Rat eps(1, 1024);
    while (true) {
      if (ea.certainly_lt(eb)) return Ordering::LT;
      if (ea.certainly_gt(eb)) return Ordering::GT;
      if (eps <= cap_) return Ordering::UNDECIDED;
      eps = eps * eps;
      if (eps < cap_) eps = cap_;
      if (!a.exact && !a.quad)
        ea = abs_enc(sum_enclosure({a.m.begin() + 1, a.m.end()}, eps) + Rat(a.m[0]));
      if (!b.exact && !b.quad)
        eb = abs_enc(sum_enclosure({b.m.begin() + 1, b.m.end()}, eps) + Rat(b.m[0]));
    }
  }

 private:
  const std::vector<RealScalar>& alpha_;
  Rat cap_;
  bool all_rational_ = false;
  Int den_;
  std::vector<Int> num_;
  Int quad_field_;
};

Rat upper_of(const FormValue& v) { return v.exact ? *v.exact : v.enc.hi; }

}  // namespace

// ---------------------------------------------------------------------------

std::vector<std::pair<Int, Int>> cf_convergents(const RealScalar& alpha, int k,
                                                const Rat& max_precision) {
  if (k < 0) throw PreconditionViolation("cf_convergents needs k >= 0");
  if (auto q = alpha.exact_rational()) {
    auto as = cf_rational(*q);
    if ((int)as.size() > k && k > 0) as.resize(k);
    return convergents_from_quotients(as);
  }
  if (alpha.is_quadratic()) {
    std::vector<Int> as;
    QuadraticReal x = alpha.quadratic();
    for (int i = 0; i < k; ++i) {
      Int a = x.floor();
      as.push_back(a);
      x = (x - Rat(a)).inverse();
    }
    return convergents_from_quotients(as);
  }
  // stream: interval continued fraction, restarted tighter on any ambiguity
  Rat eps(1, 1l << 20);
  while (true) {
    std::vector<Int> as;
    Enclosure x = alpha.enclose(eps);
    bool ok = true;
    for (int i = 0; i < k; ++i) {
      Int flo = rat_floor(x.lo), fhi = rat_floor(x.hi);
      if (flo != fhi) {
        ok = false;
        break;
      }
      as.push_back(flo);
      Enclosure frac = x - Rat(flo);
      if (frac.lo <= 0) {
        ok = false;
        break;
      }
      x = Enclosure(1 / frac.hi, 1 / frac.lo);
    }
    if (ok) return convergents_from_quotients(as);
    if (eps <= max_precision) throw PrecisionExhausted("cf_convergents: stream precision exhausted");
    eps = eps * eps;
    if (eps < max_precision) eps = max_precision;
  }
}

LinearFormSequence best_linear_form(const std::vector<RealScalar>& alpha, const Int& up_to_M,
                                    const EnumerateOptions& opts) {
  const int r = (int)alpha.size();
  if (r < 1) throw PreconditionViolation("best_linear_form needs r >= 1");
  if (up_to_M < 1) throw PreconditionViolation("up_to_M must be >= 1");

  Evaluator ev(alpha, opts.max_precision);
  LinearFormSequence seq;
  seq.target = alpha;
  seq.bound = up_to_M;
  seq.exhaustive = true;

  long S = 96;
  Fixed fx;
  std::vector<LineSolver> solvers;
  auto rebuild = [&](long newS) {
    S = newS;
    fx = build_fixed(alpha, S);
    solvers.clear();
    for (int j = 0; j < r; ++j) solvers.emplace_back(fx.A[j], fx.mod);
  };
  rebuild(S);

  std::optional<FormValue> running;

  std::vector<std::vector<Int>> cands;
  auto base_of = [&](const std::vector<std::pair<int, Int>>& fixed) {
    Int c = 0;
    for (const auto& [j, v] : fixed) c += v * fx.A[j];
    return c;
  };
  std::vector<Int> hits;
  auto run_line = [&](int j, const Int& lo, const Int& hi,
                      const std::vector<std::pair<int, Int>>& fixed, const Int& Y) {
    hits.clear();
    solvers[j].solve(base_of(fixed), lo, hi, Y, hits);
    for (const auto& n : hits) {
      std::vector<Int> coeffs(r, 0);
      for (const auto& [jj, v] : fixed) coeffs[jj] = v;
      coeffs[j] = n;
      cands.push_back(std::move(coeffs));
    }
  };
  auto quick_point = [&](std::vector<Int> coeffs, const Int& Y) {
    Int v = 0;
    for (int j = 0; j < r; ++j)
      if (coeffs[j] != 0) v += coeffs[j] * fx.A[j];
    if (int_abs(centered_mod(v, fx.mod)) < Y) cands.push_back(std::move(coeffs));
  };

  int nu = 0;
  for (Int M = 1; M <= up_to_M; ++M) {
    if (running) {
      // keep the threshold clear of the fixed-point error floor
      Int y = rat_ceil(upper_of(*running) * pow2(S));
      while (y < 16 * fx.err_budget(up_to_M) && S < 8192) {
        rebuild(S * 2);
        y = rat_ceil(upper_of(*running) * pow2(S));
      }
    }
    Int Y = running ? Int(rat_ceil(upper_of(*running) * pow2(S)) + fx.err_budget(M) + 1) : fx.mod;
    cands.clear();

    if (r == 1) {
      quick_point({M}, Y);
    } else if (r == 2) {
      run_line(0, -M, M, {{1, M}}, Y);
      if (M >= 2) {
        run_line(1, Int(1), Int(M - 1), {{0, M}}, Y);
        run_line(1, Int(1), Int(M - 1), {{0, Int(-M)}}, Y);
      }
      quick_point({M, Int(0)}, Y);
    } else if (r == 3) {
      for (Int m2 = -M; m2 <= M; ++m2) run_line(0, -M, M, {{1, m2}, {2, M}}, Y);
      for (Int m3 = 1; m3 <= M - 1; ++m3) {
        run_line(0, -M, M, {{1, M}, {2, m3}}, Y);
        run_line(0, -M, M, {{1, Int(-M)}, {2, m3}}, Y);
        run_line(1, Int(-(M - 1)), Int(M - 1), {{0, M}, {2, m3}}, Y);
        run_line(1, Int(-(M - 1)), Int(M - 1), {{0, Int(-M)}, {2, m3}}, Y);
      }
      run_line(0, -M, M, {{1, M}, {2, Int(0)}}, Y);
      if (M >= 2) {
        run_line(1, Int(1), Int(M - 1), {{0, M}, {2, Int(0)}}, Y);
        run_line(1, Int(1), Int(M - 1), {{0, Int(-M)}, {2, Int(0)}}, Y);
      }
      quick_point({M, Int(0), Int(0)}, Y);
    } else {
      std::vector<Int> c(r, -M);
      while (true) {
        bool on_shell = false;
        for (const auto& v : c) on_shell = on_shell || int_abs(v) == M;
        if (on_shell) {
          int last = r - 1;
          while (last >= 0 && c[last] == 0) --last;
          if (last >= 0 && c[last] > 0) quick_point(c, Y);
        }
        int j = 0;
        while (j < r && c[j] == M) c[j++] = -M;
        if (j == r) break;
        ++c[j];
      }
    }

    if (cands.empty()) continue;

    std::optional<Rat> irrelevant = running ? std::optional<Rat>(upper_of(*running)) : std::nullopt;
    std::optional<FormValue> best;
    int achievers = 0;
    for (const auto& coeffs : cands) {
      FormValue fv = ev.eval(coeffs, irrelevant);
      if (!fv.resolved) continue;
      if (fv.zero)
        throw RationalDependence("linear form vanishes: target is rationally dependent", fv.m);
      if (!best) {
        best = std::move(fv);
        achievers = best->half_tie ? 2 : 1;
        continue;
      }
      Ordering o = ev.compare(fv, *best);
      if (o == Ordering::UNDECIDED)
        throw PrecisionExhausted("cannot order two linear-form values at the precision cap");
      if (o == Ordering::LT) {
        best = std::move(fv);
        achievers = best->half_tie ? 2 : 1;
      } else if (o == Ordering::EQ) {
        ++achievers;
      }
    }
    if (!best) continue;
    if (running) {
      Ordering o = ev.compare(*best, *running);
      if (o == Ordering::UNDECIDED)
        throw PrecisionExhausted("cannot compare against the running minimum at the precision cap");
      if (o != Ordering::LT) continue;
    }
    if (achievers == 1) {
      LinearFormBA e;
      e.m = best->m;
      e.M = M;
      e.zeta = best->enc;
      e.zeta_exact = best->exact;
      e.zeta_quad = best->quad;
      e.nu = ++nu;
      seq.entries.push_back(std::move(e));
    }
    running = std::move(best);  // ties still gate later levels
  }
  return seq;
}

LinearFormSequence brute_force_oracle_lf(const std::vector<RealScalar>& alpha, const Int& up_to_M,
                                         const EnumerateOptions& opts) {
  const int r = (int)alpha.size();
  if (r < 1) throw PreconditionViolation("oracle needs r >= 1");
  LinearFormSequence seq;
  seq.target = alpha;
  seq.bound = up_to_M;
  seq.exhaustive = true;

  // evaluation goes through lin_comb / dist_to_nearest_integer, a different
  // path from the pruned enumerator's fixed-point pipeline
  struct Val {
    std::vector<Int> m;
    Enclosure enc;
    std::optional<Rat> exact;
    std::optional<QuadraticReal> quad;
    bool half_tie = false;
  };
  auto eval = [&](const std::vector<Int>& coeffs) -> Val {
    std::vector<std::pair<Rat, RealScalar>> terms;
    for (int j = 0; j < r; ++j)
      if (coeffs[j] != 0) terms.emplace_back(Rat(coeffs[j]), alpha[j]);
    RealScalar s = lin_comb(terms, Rat(0));
    Val v;
    if (auto q = s.exact_rational()) {
      Rat z = dist_to_z(*q);
      if (z == 0) {
        std::vector<Int> m;
        m.push_back(-rat_floor(*q));
        for (const auto& c : coeffs) m.push_back(c);
        throw RationalDependence("oracle found an exact dependence", m);
      }
      v.half_tie = is_half_integer(*q);
      v.m.push_back(v.half_tie ? Int(-rat_floor(*q)) : Int(-round_nearest(*q)));
      v.exact = z;
      v.enc = Enclosure::point(z);
    } else if (s.is_quadratic()) {
      QuadraticReal x = s.quadratic();
      Int fl = x.floor();
      QuadraticReal frac = x - Rat(fl);
      Int n = frac.compare(Rat(1, 2)) > 0 ? Int(fl + 1) : fl;
      QuadraticReal diff = x - Rat(n);
      if (diff.sign() < 0) diff = -diff;
      v.m.push_back(-n);
      v.quad = diff;
      v.enc = diff.enclose(96);
    } else {
      auto res = dist_to_nearest_integer(s, opts.max_precision);
      v.m.push_back(-res.nearest);
      v.enc = res.dist;
    }
    for (const auto& c : coeffs) v.m.push_back(c);
    return v;
  };
  auto vcmp = [&](const Val& a, const Val& b) -> Ordering {
    if (a.exact && b.exact) {
      int c = cmp(*a.exact, *b.exact);
      return c < 0 ? Ordering::LT : c > 0 ? Ordering::GT : Ordering::EQ;
    }
    auto qa = a.quad ? a.quad
                     : a.exact ? std::optional<QuadraticReal>(QuadraticReal(*a.exact, 0, 0))
                               : std::nullopt;
    auto qb = b.quad ? b.quad
                     : b.exact ? std::optional<QuadraticReal>(QuadraticReal(*b.exact, 0, 0))
                               : std::nullopt;
    if (qa && qb && qa->same_field(*qb)) {
      int c = qa->compare(*qb);
      return c < 0 ? Ordering::LT : c > 0 ? Ordering::GT : Ordering::EQ;
    }
    if (a.enc.certainly_lt(b.enc)) return Ordering::LT;
    if (a.enc.certainly_gt(b.enc)) return Ordering::GT;
    throw PrecisionExhausted("oracle comparison undecided");
  };

  std::optional<Val> running;
  int nu = 0;
  for (Int M = 1; M <= up_to_M; ++M) {
    std::optional<Val> best;
    int achievers = 0;
    std::vector<Int> c(r, -M);
    while (true) {
      bool on_shell = false;
      for (const auto& v : c) on_shell = on_shell || int_abs(v) == M;
      if (on_shell) {
        int last = r - 1;
        while (last >= 0 && c[last] == 0) --last;
        if (last >= 0 && c[last] > 0) {
          Val v = eval(c);
          if (!best) {
            best = std::move(v);
            achievers = best->half_tie ? 2 : 1;
          } else {
            Ordering o = vcmp(v, *best);
            if (o == Ordering::LT) {
              best = std::move(v);
              achievers = best->half_tie ? 2 : 1;
            } else if (o == Ordering::EQ) {
              ++achievers;
            }
          }
        }
      }
      int j = 0;
      while (j < r && c[j] == M) c[j++] = -M;
      if (j == r) break;
      ++c[j];
    }
    if (!best) continue;
    bool improves = !running || vcmp(*best, *running) == Ordering::LT;
    if (improves) {
      if (achievers == 1) {
        LinearFormBA e;
        e.m = best->m;
        e.M = M;
        e.zeta = best->enc;
        e.zeta_exact = best->exact;
        e.zeta_quad = best->quad;
        e.nu = ++nu;
        seq.entries.push_back(std::move(e));
      }
      running = std::move(best);
    }
  }
  return seq;
}

}  // namespace dioph
