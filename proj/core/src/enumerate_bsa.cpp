#include <algorithm>

#include "dioph/enumerate.hpp"

namespace dioph {

namespace {

struct RationalTargets {
  // alpha_j = num_j / den with one common denominator
  Int den;
  std::vector<Int> num;
};

std::optional<RationalTargets> rational_targets(const std::vector<RealScalar>& alpha) {
  RationalTargets rt;
  rt.den = 1;
  for (const auto& a : alpha) {
    auto q = a.exact_rational();
    if (!q) return std::nullopt;
    Int d = q->get_den();
    rt.den = rt.den / gcd(rt.den, d) * d;
  }
  for (const auto& a : alpha) {
    Rat q = *a.exact_rational();
    rt.num.push_back(Int(q.get_num()) * (rt.den / Int(q.get_den())));
  }
  return rt;
}

bool quad_field_targets(const std::vector<RealScalar>& alpha) {
  Int d = 0;
  bool any = false;
  for (const auto& a : alpha) {
    if (a.is_stream()) return false;
    if (a.is_quadratic() && !a.quadratic().is_rational()) {
      any = true;
      if (d == 0)
        d = a.quadratic().d();
      else if (d != a.quadratic().d())
        return false;
    }
  }
  return any;
}

// remainder p*alpha_j - a_j as an exact-or-stream scalar
std::vector<RealScalar> remainders(const std::vector<RealScalar>& alpha, const Int& p,
                                   const std::vector<Int>& a) {
  std::vector<RealScalar> xi;
  xi.reserve(alpha.size());
  for (size_t j = 0; j < alpha.size(); ++j)
    xi.push_back(lin_comb({{Rat(p), alpha[j]}}, Rat(-Rat(a[j]))));
  return xi;
}

Ordering gauge_cmp_refining(const Norm& f, const GaugeValue& a, const std::vector<RealScalar>& xa,
                            const GaugeValue& b, const std::vector<RealScalar>& xb, const Rat& cap) {
  Ordering o = gauge_compare(a, b);
  if (o != Ordering::UNDECIDED) return o;
  Rat eps(1, 1l << 20);
  while (true) {
    GaugeValue ga = f.gauge(xa, eps), gb = f.gauge(xb, eps);
    o = gauge_compare(ga, gb);
    if (o != Ordering::UNDECIDED) return o;
    if (eps <= cap) return Ordering::UNDECIDED;
    eps = eps * eps;
    if (eps < cap) eps = cap;
  }
}

}  // namespace

std::optional<std::vector<Rat>> direction_rational(const Norm& f, const SimultaneousBA& e) {
  if (f.kind() == NormKind::Euclidean) return std::nullopt;
  if (!e.D.exact || *e.D.exact == 0) return std::nullopt;
  std::vector<Rat> xi;
  for (const auto& s : e.xi) {
    auto q = s.exact_rational();
    if (!q) return std::nullopt;
    xi.push_back(*q);
  }
  for (auto& q : xi) q /= *e.D.exact;
  return xi;
}

SimultaneousSequence best_simultaneous(const std::vector<RealScalar>& alpha, const Norm& f,
                                       const Int& up_to_p, const EnumerateOptions& opts) {
  const int n = (int)alpha.size();
  if (n != f.dim()) throw PreconditionViolation("norm dimension does not match the target");
  if (up_to_p < 1) throw PreconditionViolation("up_to_p must be >= 1");

  SimultaneousSequence seq(f);
  seq.target = alpha;
  seq.bound = up_to_p;
  seq.exhaustive = true;

  int nu = 0;
  auto rt = rational_targets(alpha);

  if (rt && (f.kind() == NormKind::Sup || f.kind() == NormKind::Euclidean)) {
    // integer-only inner loop over one common denominator
    const Int& den = rt->den;
    Int half = den / 2;  // exact tie iff den even and remainder == den/2
    bool den_even = den % 2 == 0;
    std::optional<Rat> record;    // sup: D; euclid: D^2
    std::vector<Int> rems(n);
    for (Int p = 1; p <= up_to_p; ++p) {
      bool tie = false;
      Int worst = 0;     // sup: max_j min(r, den - r)
      Int sumsq = 0;     // euclid: sum of min(r, den-r)^2
      std::vector<Int> a(n);
      for (int j = 0; j < n; ++j) {
        Int v = p * rt->num[j];
        Int q, rem;
        mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), v.get_mpz_t(), den.get_mpz_t());
        Int dist;
        if (den_even && rem == half) {
          tie = true;
          a[j] = q;
          dist = half;
        } else if (2 * rem < den) {
          a[j] = q;
          dist = rem;
        } else {
          a[j] = q + 1;
          dist = den - rem;
        }
        rems[j] = dist;
        if (f.kind() == NormKind::Sup) {
          if (dist > worst) worst = dist;
        } else {
          sumsq += dist * dist;
        }
      }
      Rat value = f.kind() == NormKind::Sup ? make_rat(worst, den) : make_rat(sumsq, den * den);
      if (record && value >= *record) continue;
      if (tie) {
        // only a tie at a would-be record is a hard error
        bool relevant = f.kind() == NormKind::Sup ? worst == half : true;
        if (relevant)
          throw TieAtOptimum("two integer points tie at p = " + p.get_str() +
                             " (half-integer coordinate)");
      }
      SimultaneousBA e;
      e.p = p;
      e.a = a;
      e.D = f.kind() == NormKind::Sup ? GaugeValue::from_exact(value) : GaugeValue::from_sq(value);
      e.xi = remainders(alpha, p, a);
      e.nu = ++nu;
      bool hit = value == 0;
      seq.entries.push_back(std::move(e));
      record = value;
      if (hit) {
        seq.exact_hit = true;
        break;
      }
    }
    return seq;
  }

  if (rt && f.kind() == NormKind::Polytope) {
    std::optional<Rat> record;
    for (Int p = 1; p <= up_to_p; ++p) {
      std::vector<Rat> y(n);
      for (int j = 0; j < n; ++j) y[j] = make_rat(Int(p * rt->num[j]), rt->den);
      auto res = f.nearest_below_rational(y, record);
      if (!res) continue;
      Rat value = *res->value.exact;
      if (record && value >= *record) continue;
      if (res->tie)
        throw TieAtOptimum("two integer points tie under the gauge at p = " + p.get_str());
      SimultaneousBA e;
      e.p = p;
      e.a = res->a;
      e.D = res->value;
      e.xi = remainders(alpha, p, e.a);
      e.nu = ++nu;
      bool hit = value == 0;
      seq.entries.push_back(std::move(e));
      record = value;
      if (hit) {
        seq.exact_hit = true;
        break;
      }
    }
    return seq;
  }

  // exact quadratic-field targets, or streams: per-p nearest point plus
  // certified record comparisons
  bool exact_field = quad_field_targets(alpha);
  std::optional<GaugeValue> record;
  std::vector<RealScalar> record_xi;
  for (Int p = 1; p <= up_to_p; ++p) {
    std::vector<RealScalar> y;
    y.reserve(n);
    for (int j = 0; j < n; ++j) y.push_back(lin_comb({{Rat(p), alpha[j]}}, Rat(0)));
    auto res = f.nearest_integer_point(y, opts.max_precision);
    std::vector<RealScalar> xi = remainders(alpha, p, res.a);
    if (record) {
      Ordering o = gauge_cmp_refining(f, res.value, xi, *record, record_xi, opts.max_precision);
      if (o == Ordering::UNDECIDED)
        throw PrecisionExhausted("cannot order gauge values at p = " + p.get_str());
      if (o != Ordering::LT) continue;
    }
    if (res.tie)
      throw TieAtOptimum("two integer points tie under the gauge at p = " + p.get_str());
    bool hit = exact_field && res.value.is_zero();
    SimultaneousBA e;
    e.p = p;
    e.a = res.a;
    e.D = res.value;
    e.xi = xi;
    e.nu = ++nu;
    seq.entries.push_back(std::move(e));
    record = res.value;
    record_xi = std::move(xi);
    if (hit) {
      seq.exact_hit = true;
      break;
    }
  }
  return seq;
}

SimultaneousSequence brute_force_oracle_sim(const std::vector<RealScalar>& alpha, const Norm& f,
                                            const Int& up_to_p, const EnumerateOptions& opts) {
  const int n = (int)alpha.size();
  if (n != f.dim()) throw PreconditionViolation("norm dimension does not match the target");
  SimultaneousSequence seq(f);
  seq.target = alpha;
  seq.bound = up_to_p;
  seq.exhaustive = true;

  long R = f.nearest_box_radius() + 2;
  std::optional<GaugeValue> record;
  std::vector<RealScalar> record_xi;
  int nu = 0;
  for (Int p = 1; p <= up_to_p; ++p) {
    std::vector<RealScalar> y;
    for (int j = 0; j < n; ++j) y.push_back(lin_comb({{Rat(p), alpha[j]}}, Rat(0)));
    std::vector<Int> center(n);
    for (int j = 0; j < n; ++j) center[j] = rat_floor(y[j].enclose(Rat(1, 8)).mid() + Rat(1, 2));
    std::optional<GaugeValue> best;
    std::vector<Int> besta;
    bool tie = false;
    std::vector<long> off(n, -R);
    while (true) {
      std::vector<Int> a(n);
      std::vector<RealScalar> diff(n);
      for (int j = 0; j < n; ++j) {
        a[j] = center[j] + off[j];
        diff[j] = lin_comb({{Rat(1), y[j]}}, Rat(-Rat(a[j])));
      }
      GaugeValue g = f.gauge(diff, opts.max_precision);
      if (!best) {
        best = g;
        besta = a;
      } else {
        Ordering o = gauge_cmp_refining(f, g, diff, *best, remainders(alpha, p, besta),
                                        opts.max_precision);
        if (o == Ordering::LT) {
          best = g;
          besta = a;
          tie = false;
        } else if (o == Ordering::EQ) {
          tie = true;
        } else if (o == Ordering::UNDECIDED) {
          throw PrecisionExhausted("oracle gauge comparison undecided at p = " + p.get_str());
        }
      }
      int j = 0;
      while (j < n && off[j] == R) off[j++] = -R;
      if (j == n) break;
      ++off[j];
    }
    std::vector<RealScalar> xi = remainders(alpha, p, besta);
    if (record) {
      Ordering o = gauge_cmp_refining(f, *best, xi, *record, record_xi, opts.max_precision);
      if (o == Ordering::UNDECIDED) throw PrecisionExhausted("oracle record comparison undecided");
      if (o != Ordering::LT) continue;
    }
    if (tie) throw TieAtOptimum("oracle: tie at p = " + p.get_str());
    SimultaneousBA e;
    e.p = p;
    e.a = besta;
    e.D = *best;
    e.xi = xi;
    e.nu = ++nu;
    bool hit = e.D.is_zero();
    seq.entries.push_back(std::move(e));
    record = best;
    record_xi = std::move(xi);
    if (hit) {
      seq.exact_hit = true;
      break;
    }
  }
  return seq;
}

}  // namespace dioph
