#include "dioph/analysis.hpp"

#include <algorithm>

namespace dioph {

namespace {

IntMat lf_rows(const LinearFormSequence& seq, int from, int count) {
  if (from < 1 || from + count - 1 > (int)seq.entries.size())
    throw PreconditionViolation("window out of range");
  IntMat m;
  for (int i = from - 1; i < from - 1 + count; ++i) m.push_back(seq.entries[i].m);
  return m;
}

IntMat sim_rows(const SimultaneousSequence& seq, int from, int count) {
  if (from < 1 || from + count - 1 > (int)seq.entries.size())
    throw PreconditionViolation("window out of range");
  IntMat m;
  for (int i = from - 1; i < from - 1 + count; ++i) {
    std::vector<Int> row;
    row.push_back(seq.entries[i].p);
    for (const auto& a : seq.entries[i].a) row.push_back(a);
    m.push_back(std::move(row));
  }
  return m;
}

int sign_certified(const RealScalar& x, const Rat& cap) {
  if (auto q = x.exact_rational()) return sgn(*q);
  if (x.is_quadratic()) return x.quadratic().sign();
  Rat eps(1, 1l << 16);
  while (true) {
    Enclosure e = x.enclose(eps);
    if (e.certainly_gt(Rat(0))) return 1;
    if (e.certainly_lt(Rat(0))) return -1;
    if (eps <= cap) throw PrecisionExhausted("sign undecided at the precision cap");
    eps = eps * eps;
    if (eps < cap) eps = cap;
  }
}

// exact sign of a + b*sqrt(q) for rational a, b and rational q >= 0
int sign_plus_sqrt_rat(const Rat& a, const Rat& b, const Rat& q) {
  if (q < 0) throw PreconditionViolation("sqrt of a negative rational");
  // sqrt(num/den) = sqrt(num*den)/den
  Int d = Int(q.get_num()) * Int(q.get_den());
  return sign_a_plus_b_sqrt_d(a * Rat(q.get_den()), b, d);
}

struct ExactRemainders {
  bool rational = false;
  bool quad = false;
  std::vector<std::vector<Rat>> xs;            // rational remainders per entry
  std::vector<std::vector<QuadraticReal>> qs;  // field remainders per entry
};

ExactRemainders exact_remainders(const SimultaneousSequence& seq) {
  ExactRemainders er;
  er.rational = true;
  for (const auto& e : seq.entries) {
    std::vector<Rat> row;
    for (const auto& s : e.xi) {
      auto q = s.exact_rational();
      if (!q) {
        er.rational = false;
        break;
      }
      row.push_back(*q);
    }
    if (!er.rational) break;
    er.xs.push_back(std::move(row));
  }
  if (er.rational) return er;
  er.xs.clear();
  er.quad = true;
  for (const auto& e : seq.entries) {
    std::vector<QuadraticReal> row;
    for (const auto& s : e.xi) {
      if (s.is_stream()) {
        er.quad = false;
        break;
      }
      if (s.is_quadratic())
        row.push_back(s.quadratic());
      else
        row.push_back(QuadraticReal(*s.exact_rational(), 0, 0));
    }
    if (!er.quad) break;
    er.qs.push_back(std::move(row));
  }
  if (!er.quad) er.qs.clear();
  return er;
}

}  // namespace

Int delta_det(const LinearFormSequence& seq, int nu) {
  int r1 = seq.target.size() + 1;
  return int_det(lf_rows(seq, nu, r1));
}

int window_rank(const LinearFormSequence& seq, int nu, int s) {
  return int_rank(lf_rows(seq, nu, s + 1));
}

int window_rank(const SimultaneousSequence& seq, int nu, int s) {
  return int_rank(sim_rows(seq, nu, s + 1));
}

int tail_lattice_dim(const LinearFormSequence& seq, int from_nu) {
  int count = (int)seq.entries.size() - from_nu + 1;
  if (count <= 0) throw PreconditionViolation("empty tail");
  return int_rank(lf_rows(seq, from_nu, count));
}

int tail_lattice_dim(const SimultaneousSequence& seq, int from_nu) {
  int count = (int)seq.entries.size() - from_nu + 1;
  if (count <= 0) throw PreconditionViolation("empty tail");
  return int_rank(sim_rows(seq, from_nu, count));
}

std::vector<SignatureVector> signature_sequence(const SimultaneousSequence& seq,
                                                const Rat& max_precision) {
  std::vector<SignatureVector> out;
  for (const auto& e : seq.entries) {
    SignatureVector sv;
    for (const auto& x : e.xi) {
      if (auto q = x.exact_rational()) {
        sv.push_back(sgn(*q));
      } else if (x.is_quadratic()) {
        sv.push_back(x.quadratic().sign());
      } else {
        sv.push_back(sign_certified(x, max_precision));
      }
    }
    out.push_back(std::move(sv));
  }
  return out;
}

bool has_zero_signature_component(const std::vector<SignatureVector>& sigs) {
  for (const auto& sv : sigs)
    for (int s : sv)
      if (s == 0) return true;
  return false;
}

std::vector<bool> no_interior_check(const SimultaneousSequence& seq, const Rat& max_precision) {
  std::vector<bool> ok;
  const Norm& f = seq.norm;
  for (size_t i = 0; i + 1 < seq.entries.size(); ++i) {
    const auto& cur = seq.entries[i];
    const auto& nxt = seq.entries[i + 1];
    // f(xi_(nu+1) - xi_nu) >= f(xi_nu), certified
    std::vector<RealScalar> diff;
    for (size_t j = 0; j < cur.xi.size(); ++j)
      diff.push_back(lin_comb({{Rat(1), nxt.xi[j]}, {Rat(-1), cur.xi[j]}}, Rat(0)));
    GaugeValue gd = f.gauge(diff, max_precision);
    Ordering o = gauge_compare(gd, cur.D);
    if (o == Ordering::UNDECIDED) {
      // refine both sides for stream targets
      Rat eps(1, 1l << 20);
      while (o == Ordering::UNDECIDED && eps > max_precision) {
        eps = eps * eps;
        if (eps < max_precision) eps = max_precision;
        o = gauge_compare(f.gauge(diff, eps), f.gauge(cur.xi, eps));
      }
      if (o == Ordering::UNDECIDED)
        throw PrecisionExhausted("no_interior_check undecided at the precision cap");
    }
    ok.push_back(o != Ordering::LT);
  }
  return ok;
}

Ordering compare_direction_gap(const SimultaneousSequence& seq, int ia, int ib, const Rat& t,
                               const Rat& max_precision) {
  if (ia < 1 || ib < 1 || ia > (int)seq.entries.size() || ib > (int)seq.entries.size())
    throw PreconditionViolation("entry index out of range");
  const Norm& f = seq.norm;
  const auto& ea = seq.entries[ia - 1];
  const auto& eb = seq.entries[ib - 1];
  if (ea.D.is_zero() || eb.D.is_zero())
    throw PreconditionViolation("direction of a zero remainder is undefined");

  auto from_int = [](int c) { return c < 0 ? Ordering::LT : c > 0 ? Ordering::GT : Ordering::EQ; };
  ExactRemainders er;  // local, only the two rows are needed
  std::vector<std::vector<Rat>> xs(2);
  bool rational = true;
  for (int k = 0; k < 2; ++k) {
    const auto& e = k == 0 ? ea : eb;
    for (const auto& s : e.xi) {
      auto q = s.exact_rational();
      if (!q) {
        rational = false;
        break;
      }
      xs[k].push_back(*q);
    }
    if (!rational) break;
  }

  if (rational && f.kind() != NormKind::Euclidean) {
    Rat Da = *ea.D.exact, Db = *eb.D.exact;
    std::vector<Rat> diff(xs[0].size());
    for (size_t j = 0; j < diff.size(); ++j) diff[j] = xs[1][j] / Db - xs[0][j] / Da;
    return from_int(cmp(f.gauge_rational(diff), t));
  }
  if (rational && f.kind() == NormKind::Euclidean) {
    // |Xi_b - Xi_a|^2 = 2 - 2 <xi_a, xi_b> / sqrt(sa sb)   vs   t^2
    Rat sa = *ea.D.sq, sb = *eb.D.sq;
    Rat c = 0;
    for (size_t j = 0; j < xs[0].size(); ++j) c += xs[0][j] * xs[1][j];
    // sign of (2 - t^2) sqrt(sa sb) - 2c
    return from_int(sign_plus_sqrt_rat(-2 * c, 2 - t * t, sa * sb));
  }

  // one shared quadratic field
  bool quad = true;
  Int d = 0;
  std::vector<std::vector<QuadraticReal>> qs(2);
  for (int k = 0; k < 2 && quad; ++k) {
    const auto& e = k == 0 ? ea : eb;
    for (const auto& s : e.xi) {
      if (s.is_stream()) {
        quad = false;
        break;
      }
      QuadraticReal q = s.is_quadratic() ? s.quadratic() : QuadraticReal(*s.exact_rational(), 0, 0);
      if (!q.is_rational()) {
        if (d == 0)
          d = q.d();
        else if (d != q.d())
          quad = false;
      }
      qs[k].push_back(q);
    }
  }
  if (quad && d != 0 && f.kind() != NormKind::Euclidean) {
    QuadraticReal Da = ea.D.exact_quad ? *ea.D.exact_quad : QuadraticReal(*ea.D.exact, 0, 0);
    QuadraticReal Db = eb.D.exact_quad ? *eb.D.exact_quad : QuadraticReal(*eb.D.exact, 0, 0);
    QuadraticReal ia_ = Da.inverse(), ib_ = Db.inverse();
    std::vector<RealScalar> diff;
    for (size_t j = 0; j < qs[0].size(); ++j)
      diff.push_back(RealScalar(qs[1][j] * ib_ - qs[0][j] * ia_));
    GaugeValue g = f.gauge(diff, max_precision);
    return gauge_compare(g, GaugeValue::from_exact(t));
  }
  if (quad && d != 0 && f.kind() == NormKind::Euclidean) {
    QuadraticReal sa = ea.D.sq_quad ? *ea.D.sq_quad : QuadraticReal(*ea.D.sq, 0, 0);
    QuadraticReal sb = eb.D.sq_quad ? *eb.D.sq_quad : QuadraticReal(*eb.D.sq, 0, 0);
    QuadraticReal c(0, 0, 0);
    for (size_t j = 0; j < qs[0].size(); ++j) c = c + qs[0][j] * qs[1][j];
    // sign of (2 - t^2) sqrt(sa sb) + (-2c), all in the field
    QuadraticReal A = c * Rat(-2);
    QuadraticReal B(2 - t * t, 0, 0);
    return from_int(A.sign_plus_sqrt(B, sa * sb));
  }

  // stream fallback: interval directions at a refinement ladder
  Rat eps(1, 1l << 20);
  while (true) {
    long bits = 1;
    while (pow2(-bits) > eps) ++bits;
    auto dir = [&](const SimultaneousBA& e) {
      std::vector<Enclosure> xi;
      for (const auto& s : e.xi) xi.push_back(s.enclose(eps));
      Enclosure g = f.gauge_enclosure(xi, bits);
      if (!(g.lo > 0)) return std::optional<std::vector<Enclosure>>();
      std::vector<Enclosure> out;
      Enclosure inv(Rat(1) / g.hi, Rat(1) / g.lo);
      for (auto& x : xi) out.push_back(x * inv);
      return std::optional<std::vector<Enclosure>>(std::move(out));
    };
    auto da = dir(ea), db = dir(eb);
    if (da && db) {
      std::vector<Enclosure> diff;
      for (size_t j = 0; j < da->size(); ++j) diff.push_back((*db)[j] - (*da)[j]);
      Enclosure g = f.gauge_enclosure(diff, bits);
      if (g.certainly_gt(t)) return Ordering::GT;
      if (g.certainly_lt(t)) return Ordering::LT;
    }
    if (eps <= max_precision) return Ordering::UNDECIDED;
    eps = eps * eps;
    if (eps < max_precision) eps = max_precision;
  }
}

std::vector<int> separation_scan(const SimultaneousSequence& seq, const Rat& delta,
                                 const Rat& max_precision) {
  if (delta < 0) throw PreconditionViolation("delta must be nonnegative");
  std::vector<int> out;
  for (int i = 1; i + 1 <= (int)seq.entries.size(); ++i) {
    if (seq.entries[i - 1].D.is_zero() || seq.entries[i].D.is_zero()) continue;
    Ordering o = compare_direction_gap(seq, i, i + 1, 1 + delta, max_precision);
    if (o == Ordering::UNDECIDED)
      throw PrecisionExhausted("separation_scan undecided at index " + std::to_string(i));
    if (o == Ordering::GT) out.push_back(i);
  }
  return out;
}

GrowthSeries growth_and_doubling(const SimultaneousSequence& seq, const Rat&) {
  GrowthSeries gs;
  const int n = seq.norm.dim();
  gs.doubling_h = 1 << (n + 1);
  const auto& es = seq.entries;
  for (size_t i = 0; i + 1 < es.size(); ++i)
    gs.points.emplace_back(es[i].nu, abs_enc(es[i].D.enc) * Rat(es[i + 1].p));
  for (size_t i = 0; i + gs.doubling_h < es.size(); ++i)
    gs.doubling_ok.push_back(es[i + gs.doubling_h].p >= 2 * es[i].p);
  for (bool b : gs.doubling_ok) gs.doubling_all = gs.doubling_all && b;

  // empirical badness: inf over nu of p_nu^(1/n) f(xi_nu); exact entries are
  // compared through p^2 f^(2n), a strictly monotone proxy
  bool have = false;
  Rat best_proxy;
  Enclosure best_enc;
  int best_nu = 0;
  for (const auto& e : es) {
    if (e.D.is_zero()) continue;
    std::optional<Rat> proxy;
    if (e.D.exact)
      proxy = rat_pow(*e.D.exact, 2 * n) * Rat(e.p) * Rat(e.p);
    else if (e.D.sq)
      proxy = rat_pow(*e.D.sq, n) * Rat(e.p) * Rat(e.p);
    Enclosure enc = abs_enc(e.D.enc);
    Enclosure encn = enc;
    for (int k = 1; k < n; ++k) encn = encn * enc;
    encn = encn * Rat(e.p);  // p f^n
    if (!proxy) proxy = encn.mid() * encn.mid();
    if (!have || *proxy < best_proxy) {
      have = true;
      best_proxy = *proxy;
      best_nu = e.nu;
      // (p f^n)^(1/n) enclosure
      Enclosure root_lo = nth_root_enclosure(std::max<Rat>(encn.lo, Rat(0)), n, 64);
      Enclosure root_hi = nth_root_enclosure(std::max<Rat>(encn.hi, Rat(0)), n, 64);
      best_enc = Enclosure(root_lo.lo, root_hi.hi);
    }
  }
  gs.badness_argmin = best_nu;
  gs.badness_value = best_enc;
  return gs;
}

AsymptoticSet asymptotic_directions(const SimultaneousSequence& seq, const Rat& eps, int burn_in,
                                    const Rat& max_precision) {
  if (eps <= 0) throw PreconditionViolation("clustering radius must be positive");
  AsymptoticSet as;
  as.eps = eps;
  as.burn_in = burn_in;
  for (int i = std::max(burn_in, 1); i <= (int)seq.entries.size(); ++i) {
    if (seq.entries[i - 1].D.is_zero()) continue;  // the exact hit has no direction
    bool placed = false;
    for (auto& cl : as.clusters) {
      Ordering o = compare_direction_gap(seq, cl.founder, i, eps, max_precision);
      if (o == Ordering::UNDECIDED)
        throw PrecisionExhausted("clustering distance undecided at index " + std::to_string(i));
      if (o != Ordering::GT) {  // within (or exactly at) the radius: join
        cl.members.push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) {
      AsymptoticCluster cl;
      cl.founder = i;
      cl.members.push_back(i);
      // representative = founder direction, reported as coordinate enclosures
      const auto& e = seq.entries[i - 1];
      Enclosure g = abs_enc(e.D.enc);
      for (const auto& x : e.xi) {
        Enclosure xe = x.enclose(pow2(-64));
        Enclosure inv(Rat(0), Rat(0));
        if (g.lo > 0) inv = Enclosure(Rat(1) / g.hi, Rat(1) / g.lo);
        cl.rep.push_back(xe * inv);
      }
      as.clusters.push_back(std::move(cl));
    }
  }
  return as;
}

}  // namespace dioph
