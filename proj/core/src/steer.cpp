#include "dioph/steer.hpp"

#include <algorithm>
#include <set>

namespace dioph {

namespace {

std::vector<Rat> direction_of(const Norm& f, const std::vector<Rat>& xi) {
  Rat g = f.kind() == NormKind::Euclidean ? Rat(0) : f.gauge_rational(xi);
  if (f.kind() == NormKind::Euclidean)
    throw PreconditionViolation("steer needs exact rational directions (polytope or sup norm)");
  if (g == 0) throw PreconditionViolation("zero remainder has no direction");
  std::vector<Rat> out(xi.size());
  for (size_t j = 0; j < xi.size(); ++j) out[j] = xi[j] / g;
  return out;
}

bool same_prefix(const SimultaneousSequence& seq, const std::vector<SimultaneousBA>& expected) {
  if (seq.entries.size() != expected.size()) return false;
  for (size_t i = 0; i < expected.size(); ++i) {
    if (seq.entries[i].p != expected[i].p) return false;
    if (seq.entries[i].a != expected[i].a) return false;
  }
  return true;
}

Int vec_gcd(const Int& p, const std::vector<Int>& a) {
  Int g = p;
  for (const auto& v : a) g = gcd(g, v);
  return g;
}

}  // namespace

SteeringState steer(const Norm& f, const std::vector<std::vector<Rat>>& targets, int count,
                    const SteerOptions& opts) {
  if (f.kind() == NormKind::Euclidean)
    throw PreconditionViolation("steer is implemented for exact gauges (sup and polytope)");
  if (targets.empty()) throw PreconditionViolation("steer needs at least one target direction");
  const int n = f.dim();
  for (const auto& t : targets) {
    if ((int)t.size() != n) throw PreconditionViolation("target dimension mismatch");
    if (f.gauge_rational(t) != 1)
      throw PreconditionViolation("targets must lie on the unit-ball boundary");
  }

  SteeringState st(f);
  st.beta.assign(n, Rat(0));
  {
    // beta^1 = 0 has the single b.s.a. (1, 0) with the exact hit
    st.seq = best_simultaneous(std::vector<RealScalar>(st.beta.begin(), st.beta.end()), f, 1);
  }

  for (int k = 1; k <= count; ++k) {
    const std::vector<Rat>& theta = targets[(k - 1) % targets.size()];
    if (k >= 2) {
      const std::vector<Rat>& prev_dir = st.steps.back().realized;
      auto ill = f.illuminates(prev_dir, theta);
      if (!ill.illuminated)
        throw IlluminationViolated("target " + std::to_string(k) +
                                   " does not illuminate 0 on the ball of the previous direction");
    }

    const SimultaneousBA last = st.seq.entries.back();  // current exact hit
    Int p_cur = last.p;
    std::vector<Int> a_cur = last.a;
    // previous nonzero remainder gauge bounds the new one from above
    std::optional<Rat> D_prev;
    if (st.seq.entries.size() >= 2) {
      const auto& e = st.seq.entries[st.seq.entries.size() - 2];
      D_prev = *e.D.exact;
    }

    bool placed = false;
    std::set<std::pair<std::string, std::string>> seen;
    for (Int pp = p_cur + 1; pp <= p_cur * opts.p_budget_mult && !placed; ++pp) {
      // remainder-magnitude grid: f(p_cur * delta) = g for g = D_prev / 2^e
      for (int e = 1; e <= opts.shortlist && !placed; ++e) {
        Rat g = D_prev ? *D_prev * pow2(-e) : pow2(-e);
        Rat t = g / Rat(p_cur);
        std::vector<Int> cand(n);
        bool zero = true;
        for (int j = 0; j < n; ++j) {
          Rat ideal = make_rat(a_cur[j], p_cur) + t * theta[j];
          Rat scaled = ideal * Rat(pp);
          auto rn = round_nearest_opt(scaled);
          cand[j] = rn ? *rn : rat_floor(scaled);
        }
        for (int j = 0; j < n; ++j) zero = zero && cand[j] == a_cur[j] * pp / p_cur * 0;
        (void)zero;
        if (vec_gcd(pp, cand) != 1) continue;
        std::string key;
        for (const auto& v : cand) key += v.get_str() + ",";
        if (!seen.insert({pp.get_str(), key}).second) continue;

        // quick exact screens before the expensive re-enumeration
        std::vector<Rat> delta(n);
        bool nonzero = false;
        for (int j = 0; j < n; ++j) {
          delta[j] = make_rat(cand[j], pp) - make_rat(a_cur[j], p_cur);
          nonzero = nonzero || delta[j] != 0;
        }
        if (!nonzero) continue;
        std::vector<Rat> xi_prev(n);
        for (int j = 0; j < n; ++j) xi_prev[j] = Rat(p_cur) * delta[j];
        Rat D_new = f.gauge_rational(xi_prev);
        if (D_new == 0) continue;
        if (D_prev && !(D_new < *D_prev)) continue;
        std::vector<Rat> realized = direction_of(f, xi_prev);
        std::vector<Rat> diff(n);
        for (int j = 0; j < n; ++j) diff[j] = realized[j] - theta[j];
        Rat gap = f.gauge_rational(diff);
        if (gap > opts.tol) continue;

        // full verification: the prefix plus the new exact hit, nothing else
        std::vector<Rat> beta2(n);
        for (int j = 0; j < n; ++j) beta2[j] = make_rat(cand[j], pp);
        SimultaneousSequence seq2(f);
        try {
          seq2 = best_simultaneous(std::vector<RealScalar>(beta2.begin(), beta2.end()), f, pp);
        } catch (const TieAtOptimum&) {
          continue;
        }
        std::vector<SimultaneousBA> expected = st.seq.entries;
        SimultaneousBA nw;
        nw.p = pp;
        nw.a = cand;
        expected.push_back(nw);
        if (!seq2.exact_hit || !same_prefix(seq2, expected)) continue;

        // every older realized direction must stay within tol of its target
        bool drifted = false;
        std::vector<SteerStep> steps2 = st.steps;
        for (size_t j = 0; j < steps2.size(); ++j) {
          const auto& tp = seq2.entries[j];
          std::vector<Rat> xi(n);
          for (int c = 0; c < n; ++c) xi[c] = Rat(tp.p) * beta2[c] - Rat(tp.a[c]);
          std::vector<Rat> dir = direction_of(f, xi);
          std::vector<Rat> dd(n);
          for (int c = 0; c < n; ++c) dd[c] = dir[c] - steps2[j].target[c];
          Rat gj = f.gauge_rational(dd);
          if (gj > opts.tol) {
            drifted = true;
            break;
          }
          steps2[j].realized = dir;
          steps2[j].gap = gj;
        }
        if (drifted) continue;

        SteerStep step;
        step.p = pp;
        step.a = cand;
        step.target = theta;
        step.realized = realized;
        step.gap = gap;
        steps2.push_back(std::move(step));
        st.steps = std::move(steps2);
        st.beta = beta2;
        st.seq = std::move(seq2);
        st.completed = k;
        placed = true;
      }
    }
    if (!placed) {
      st.exhausted = true;
      return st;
    }
  }
  return st;
}

ConstantSignatureDemo constant_signature_demo(int count, const SteerOptions& opts) {
  if (count < 1) throw PreconditionViolation("demo needs count >= 1");
  Norm f = Norm::fstar();
  std::vector<std::vector<Rat>> targets = {{Rat(3, 2), Rat(1, 2)}, {Rat(1, 2), Rat(3, 2)}};
  SteeringState st = steer(f, targets, count, opts);
  if (st.exhausted)
    throw SearchExhausted("steering exhausted after " + std::to_string(st.completed) + " of " +
                          std::to_string(count) + " steps");

  ConstantSignatureDemo demo;
  demo.alpha = st.beta;
  std::vector<RealScalar> alpha(st.beta.begin(), st.beta.end());
  Int pmax = st.seq.entries.back().p;
  // independent re-verification through the enumerator
  demo.fstar_seq = best_simultaneous(alpha, f, pmax);
  demo.fstar_signatures = signature_sequence(demo.fstar_seq);
  demo.all_positive = (int)demo.fstar_signatures.size() >= count + 1;
  for (int i = 0; i < count && demo.all_positive; ++i)
    demo.all_positive = demo.fstar_signatures[i] == SignatureVector{1, 1};

  demo.sup_seq = best_simultaneous(alpha, Norm::sup(2), pmax);
  demo.sup_signatures = signature_sequence(demo.sup_seq);
  demo.sup_not_constant = false;
  for (size_t i = 0; i + 1 < demo.sup_signatures.size(); ++i) {
    bool zero_free = true;
    for (int v : demo.sup_signatures[i]) zero_free &= v != 0;
    for (int v : demo.sup_signatures[i + 1]) zero_free &= v != 0;
    if (zero_free && demo.sup_signatures[i] != demo.sup_signatures[i + 1])
      demo.sup_not_constant = true;
  }
  return demo;
}

PrefixStabilityResult prefix_stability(const std::vector<Rat>& beta, const Norm& f) {
  const int n = f.dim();
  if ((int)beta.size() != n) throw PreconditionViolation("dimension mismatch");
  Int den = 1;
  for (const auto& q : beta) {
    Int d = q.get_den();
    den = den / gcd(den, d) * d;
  }
  if (den == 1) throw PreconditionViolation("integer targets have a trivial sequence");

  auto seq = best_simultaneous(std::vector<RealScalar>(beta.begin(), beta.end()), f, den);
  if (!seq.exact_hit) throw PreconditionViolation("rational target must reach its exact hit");
  if (seq.entries.size() < 2) throw PreconditionViolation("no prefix before the exact hit");

  const bool euclid = f.kind() == NormKind::Euclidean;
  long R = f.nearest_box_radius() + 1;

  // per-denominator minima and the margin of every strict comparison the
  // best-approximation property of each kept entry relies on
  std::vector<Rat> minima;  // gauge (or gauge^2 for euclid) minimum per q
  Rat min_slack = 0;
  bool have_slack = false;
  auto note = [&](const Rat& s) {
    if (s <= 0) throw TieAtOptimum("zero slack: the enumeration has an exact tie");
    if (!have_slack || s < min_slack) min_slack = s, have_slack = true;
  };

  Int p_last = seq.entries.back().p;
  for (Int q = 1; q <= p_last; ++q) {
    std::vector<Rat> y(n);
    for (int j = 0; j < n; ++j) y[j] = Rat(q) * beta[j];
    // exhaustive candidate values over the certified box
    std::vector<Rat> vals;
    std::vector<std::vector<Int>> as;
    std::vector<long> off(n, -R);
    std::vector<Int> center(n);
    for (int j = 0; j < n; ++j) {
      auto rn = round_nearest_opt(y[j]);
      center[j] = rn ? *rn : rat_floor(y[j]);
    }
    while (true) {
      std::vector<Int> a(n);
      std::vector<Rat> diff(n);
      for (int j = 0; j < n; ++j) {
        a[j] = center[j] + off[j];
        diff[j] = y[j] - Rat(a[j]);
      }
      vals.push_back(euclid ? f.gauge_sq_rational(diff) : f.gauge_rational(diff));
      as.push_back(a);
      int j = 0;
      while (j < n && off[j] == R) off[j++] = -R;
      if (j == n) break;
      ++off[j];
    }
    size_t best = 0;
    for (size_t i = 1; i < vals.size(); ++i)
      if (vals[i] < vals[best]) best = i;
    minima.push_back(vals[best]);
    // is q one of the kept entries? then its in-warehouse margins matter
    bool is_entry = false;
    for (size_t i = 0; i + 1 < seq.entries.size(); ++i) is_entry |= seq.entries[i].p == q;
    if (is_entry) {
      for (size_t i = 0; i < vals.size(); ++i)
        if (i != best) note(vals[i] - vals[best]);
      for (Int qq = 1; qq < q; ++qq) note(minima[qq.get_si() - 1] - vals[best]);
    }
  }

  // translate the slack into a perturbation radius via the sup-Lipschitz bound:
  // |f(q beta' - b) - f(q beta - b)| <= q r_f eps, two sides per comparison
  Rat RF = f.sup_lipschitz();
  Rat slack = min_slack;
  if (euclid) {
    // margins were on f^2: f-margin >= sq-margin / (2 F) with F a gauge bound
    Rat F = RF * (Rat(R) + 1);
    slack = min_slack / (2 * F);
  }
  PrefixStabilityResult res;
  res.min_slack = min_slack;
  res.epsilon = slack / (4 * RF * Rat(p_last));
  res.p_last = p_last;
  res.entries = (int)seq.entries.size();
  return res;
}

}  // namespace dioph
