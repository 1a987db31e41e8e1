#include "dioph/singular.hpp"

#include <algorithm>

#include "dioph/enumerate.hpp"
#include "dioph/mat.hpp"

namespace dioph {

namespace {

// interval determinant by Laplace expansion (r <= 5 in practice)
Enclosure det_interval(const std::vector<std::vector<Enclosure>>& m) {
  size_t n = m.size();
  if (n == 1) return m[0][0];
  Enclosure acc = Enclosure::point(0);
  for (size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Enclosure>> minor;
    for (size_t i = 1; i < n; ++i) {
      std::vector<Enclosure> row;
      for (size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    Enclosure term = m[0][j] * det_interval(minor);
    acc = j % 2 == 0 ? acc + term : acc - term;
  }
  return acc;
}

std::vector<std::vector<Enclosure>> schedule_window(const SingularSchedule& s, long nu,
                                                    const Rat& eta_lo, const Rat& eta_hi) {
  std::vector<std::vector<Enclosure>> m;
  for (int i = 0; i < s.r; ++i) {
    std::vector<Enclosure> row;
    for (int j = 1; j <= s.r; ++j) {
      Rat sj = s.sigma_at(j, nu + i);
      row.push_back(Enclosure(sj + eta_lo, sj + eta_hi));
    }
    m.push_back(std::move(row));
  }
  return m;
}

}  // namespace

Enclosure schedule_det_interval(const SingularSchedule& s, long nu) {
  return det_interval(schedule_window(s, nu, Rat(-1), Rat(1)));
}

Rat sigma_calibrate(int r) {
  if (r < 2) throw PreconditionViolation("sigma_calibrate needs r >= 2");
  for (Rat sigma = 1;; sigma *= 2) {
    SingularSchedule s{r, sigma};
    bool ok = true;
    for (long nu = 0; nu < r && ok; ++nu) {
      Enclosure d = schedule_det_interval(s, nu);
      if (d.contains_zero()) ok = false;
    }
    if (ok) return sigma;
  }
}

std::vector<RealScalar> SingularCertificate::box_targets() const {
  std::vector<RealScalar> out;
  for (int j = 0; j < r; ++j)
    out.push_back(
        RealScalar(std::make_shared<BoxStream>(box[j], "singular-box[" + std::to_string(j) + "]")));
  return out;
}

std::vector<Rat> SingularCertificate::box_midpoint() const {
  std::vector<Rat> out;
  for (const auto& b : box) out.push_back(b.mid());
  return out;
}

namespace {

struct PsiCache {
  const PsiFunction* psi;
  long bits;
  Enclosure at(const Rat& y) const { return psi->at(y, bits); }
};

struct Window {
  Rat lo, hi;
};

// inner placement window for coordinate j at the transition out of lvl, bit tau
Window placement_window(const SingularLevel& lvl, const PsiCache& pc, const SingularSchedule& sch,
                        int j, int tau) {
  Enclosure psi = pc.at(Rat(lvl.p));
  Rat base = make_rat(lvl.a[j - 1], lvl.p);
  Rat clo = sch.sigma_at(j, lvl.nu) + Rat(1 + 3 * tau, 6);
  Rat chi = sch.sigma_at(j, lvl.nu) + Rat(2 + 3 * tau, 6);
  return {base + clo * psi.hi / Rat(lvl.p), base + chi * psi.lo / Rat(lvl.p)};
}

}  // namespace

SingularCertificate singular_build(int r, const PsiFunction& psi, const SingularSchedule& schedule,
                                   int depth, const SingularBuildOptions& opts) {
  if (r < 2) throw PreconditionViolation("singular_build needs r >= 2");
  if (schedule.r != r) throw PreconditionViolation("schedule dimension mismatch");
  if (depth < 1) throw PreconditionViolation("depth must be >= 1");
  if (!psi.decays_faster_than(r, Rat(std::max<long>(2, opts.p0.get_si())), 8, 96))
    throw AdmissibilityFailure("psi does not decay like o(y^-r) at the sampled scales");

  SingularCertificate cert;
  cert.r = r;
  cert.psi = psi;
  cert.schedule = schedule;
  cert.psi_bits = 192;
  PsiCache pc{&cert.psi, cert.psi_bits};

  std::vector<Int> a0 = opts.a0;
  if (a0.empty()) a0.assign(r, Int(0));
  if ((int)a0.size() != r) throw PreconditionViolation("a0 dimension mismatch");
  if (opts.p0 < 1) throw PreconditionViolation("p0 must be >= 1");

  SingularLevel l0;
  l0.nu = 0;
  l0.p = opts.p0;
  l0.a = a0;
  {
    Enclosure ps = pc.at(Rat(l0.p));
    for (int j = 1; j <= r; ++j) {
      Rat base = make_rat(l0.a[j - 1], l0.p);
      Rat sj = schedule.sigma_at(j, 0);
      Enclosure delta(base + sj * ps.hi / Rat(l0.p), base + (sj + 1) * ps.lo / Rat(l0.p));
      l0.delta.push_back(delta);
    }
  }
  cert.levels.push_back(l0);

  for (int step = 0; step < depth; ++step) {
    const SingularLevel& cur = cert.levels.back();
    Enclosure ps = pc.at(Rat(cur.p));
    Int pnext = rat_floor(Rat(6 * cur.p) / ps.lo) + 1;

    bool next_psi_ok;
    if (cert.psi.kind() == PsiFunction::Kind::Exponential) {
      // exp(-gamma p') costs about gamma p' log2(e) bits to write down
      next_psi_ok = cert.psi.param() * Rat(pnext) * Rat(3, 2) < Rat(opts.bit_cap);
    } else {
      next_psi_ok = (long)mpz_sizeinbase(pnext.get_mpz_t(), 2) * 8 < opts.bit_cap;
    }

    std::vector<int> bits_used;
    SingularLevel nxt;
    nxt.nu = cur.nu + 1;
    nxt.p = pnext;
    for (int j = 1; j <= r; ++j) {
      int tau = 0;
      if (j >= 2) {
        if ((int)opts.lambda_bits.size() > step && (int)opts.lambda_bits[step].size() > j - 2)
          tau = opts.lambda_bits[step][j - 2] ? 1 : 0;
        bits_used.push_back(tau);
      }
      Window w = placement_window(cur, pc, schedule, j, tau);
      if (w.lo >= w.hi)
        throw AdmissibilityFailure("empty placement window at level " + std::to_string(nxt.nu));
      Int aj = rat_ceil(w.lo * Rat(pnext));
      if (make_rat(aj, pnext) > w.hi)
        throw AdmissibilityFailure("no fraction with denominator p' inside the window at level " +
                                   std::to_string(nxt.nu));
      nxt.a.push_back(aj);
    }
    cert.lambda_bits.push_back(bits_used);

    if (!next_psi_ok) {
      if (!(opts.allow_pinned_final && step == depth - 1))
        throw DepthOverflow("psi at level " + std::to_string(nxt.nu) +
                            " exceeds the bit cap; lower the depth or pin the final level");
      nxt.pinned = true;
      // a pinned level pins alpha to a tiny box at its fraction, kept inside
      // the placement window and thus inside every previous interval
      for (int j = 1; j <= r; ++j) {
        int tau = j >= 2 ? bits_used[j - 2] : 0;
        Window w = placement_window(cur, pc, schedule, j, tau);
        Rat frac = make_rat(nxt.a[j - 1], nxt.p);
        Rat room = std::min(Rat(w.hi - frac), Rat(cur.delta[j - 1].hi - frac));
        if (room <= 0) throw AdmissibilityFailure("pinned fraction has no room inside the window");
        Rat width = room / 2;
        long shrink = std::max<long>(opts.box_shrink_bits, 64);
        if (width > pow2(-shrink)) width = pow2(-shrink);
        nxt.delta.push_back(Enclosure(frac, frac + width));
      }
      cert.levels.push_back(nxt);
      break;
    }

    Enclosure psn = pc.at(Rat(pnext));
    for (int j = 1; j <= r; ++j) {
      Rat base = make_rat(nxt.a[j - 1], nxt.p);
      Rat sj = schedule.sigma_at(j, nxt.nu);
      Enclosure delta(base + sj * psn.hi / Rat(nxt.p), base + (sj + 1) * psn.lo / Rat(nxt.p));
      if (delta.lo >= delta.hi)
        throw AdmissibilityFailure("level interval collapsed; raise psi_bits");
      if (!delta.subset_of(cur.delta[j - 1]))
        throw AdmissibilityFailure("nesting fails at level " + std::to_string(nxt.nu) +
                                   ": psi decreases too slowly for the schedule");
      nxt.delta.push_back(delta);
    }
    cert.levels.push_back(nxt);
  }

  const SingularLevel& last = cert.levels.back();
  for (int j = 0; j < r; ++j) {
    Enclosure b = last.delta[j];
    if (opts.box_shrink_bits > 0 && b.width() > pow2(-opts.box_shrink_bits)) {
      Rat mid = b.mid();
      Rat h = pow2(-opts.box_shrink_bits) / 2;
      b = Enclosure(mid - h, mid + h);
    }
    cert.box.push_back(b);
  }
  cert.revalidate();
  return cert;
}

void SingularCertificate::revalidate() const {
  if ((int)box.size() != r) throw PreconditionViolation("certificate box missing");
  PsiCache pc{&psi, psi_bits * 2};
  for (const SingularLevel& lvl : levels) {
    if ((int)lvl.a.size() != r || (int)lvl.delta.size() != r)
      throw PreconditionViolation("certificate level shape broken");
    for (int j = 0; j < r; ++j)
      if (!box[j].subset_of(lvl.delta[j]))
        throw PreconditionViolation("final box escapes the level-" + std::to_string(lvl.nu) +
                                    " interval");
    if (lvl.pinned) continue;
    Enclosure ps = pc.at(Rat(lvl.p));
    for (int j = 1; j <= r; ++j) {
      Rat sj = schedule.sigma_at(j, lvl.nu);
      Rat lo = Rat(lvl.p) * box[j - 1].lo - Rat(lvl.a[j - 1]);
      Rat hi = Rat(lvl.p) * box[j - 1].hi - Rat(lvl.a[j - 1]);
      // condition (i) for every alpha in the box, via outer psi bounds
      if (!(lo >= sj * ps.hi))
        throw PreconditionViolation("condition (i) lower bound fails at level " +
                                    std::to_string(lvl.nu));
      if (!(hi <= (sj + 1) * ps.lo))
        throw PreconditionViolation("condition (i) upper bound fails at level " +
                                    std::to_string(lvl.nu));
    }
  }
  for (size_t i = 0; i + 1 < levels.size(); ++i) {
    const SingularLevel& cur = levels[i];
    const SingularLevel& nxt = levels[i + 1];
    Enclosure ps = pc.at(Rat(cur.p));
    // constructive condition (ii): 6p/psi <= p' <= 6p/psi + 1 certified
    if (!(Rat(nxt.p) * ps.lo >= Rat(6 * cur.p)))
      throw PreconditionViolation("step rule lower bound fails at level " + std::to_string(nxt.nu));
    // the build floors against its own certified psi lower bound, so the
    // upper form carries that enclosure slack
    if (!(Rat(nxt.p - 1) * ps.lo <= Rat(6 * cur.p) * (1 + pow2(-64))))
      throw PreconditionViolation("step rule upper bound fails at level " + std::to_string(nxt.nu));
    for (int j = 0; j < r; ++j) {
      if (!nxt.delta[j].subset_of(cur.delta[j]))
        throw PreconditionViolation("interval nesting fails at level " + std::to_string(nxt.nu));
      if (nxt.delta[j].contains(make_rat(cur.a[j], cur.p)))
        throw PreconditionViolation("distinctness fails at level " + std::to_string(nxt.nu));
    }
  }
}

std::vector<DeterminantWitness> determinant_witness(const SingularCertificate& cert) {
  const int r = cert.r;
  if (cert.depth() + 1 < r) throw PreconditionViolation("certificate depth below r");
  PsiCache pc{&cert.psi, cert.psi_bits};
  std::vector<DeterminantWitness> out;
  for (int s = 0; s + r <= (int)cert.levels.size(); ++s) {
    bool pinned = false;
    for (int i = 0; i < r; ++i) pinned = pinned || cert.levels[s + i].pinned;
    if (pinned) continue;  // pinned rows lack the eta-band representation

    DeterminantWitness w;
    w.nu = cert.levels[s].nu;
    // |det(1,alpha; rows)| = prod psi(p_mu) * |det(sigma + eta)|, eta in [-1,0]
    Enclosure prod = Enclosure::point(1);
    for (int i = 0; i < r; ++i) prod = prod * pc.at(Rat(cert.levels[s + i].p));
    Enclosure band = abs_enc(det_interval(schedule_window(cert.schedule, w.nu, Rat(-1), Rat(0))));
    if (band.lo <= 0) throw PreconditionViolation("schedule band contains zero; sigma too small");
    w.product_band = prod * band;
    w.value = w.product_band;

    IntMat rows;
    for (int i = 0; i < r; ++i) {
      std::vector<Int> row;
      row.push_back(cert.levels[s + i].p);
      for (const auto& a : cert.levels[s + i].a) row.push_back(a);
      rows.push_back(std::move(row));
    }
    for (int col = 1; col <= r; ++col) {
      IntMat minor;
      for (int i = 0; i < r; ++i) {
        std::vector<Int> rr;
        for (int k = 0; k <= r; ++k)
          if (k != col) rr.push_back(rows[i][k]);
        minor.push_back(std::move(rr));
      }
      Int c = int_det(minor);
      if (col % 2 == 1) c = -c;  // top-row cofactor sign
      w.cofactors.push_back(c);
    }

    // certified cofactor containment from the condition-(i) remainder bands
    bool ok = true;
    Int bound = 0;
    for (int col = 1; col <= r; ++col) {
      std::vector<std::vector<Enclosure>> m;
      for (int i = 0; i < r; ++i) {
        const SingularLevel& lvl = cert.levels[s + i];
        Enclosure ps = pc.at(Rat(lvl.p));
        std::vector<Enclosure> row;
        row.push_back(Enclosure::point(Rat(lvl.p)));
        for (int j = 1; j <= r; ++j) {
          if (j == col) continue;
          Rat sj = cert.schedule.sigma_at(j, lvl.nu);
          row.push_back(Enclosure(-(sj + 1) * ps.hi, -sj * ps.lo));  // a - p alpha
        }
        m.push_back(std::move(row));
      }
      Enclosure ival = det_interval(m);
      // the interval brackets the raw minor; undo the cofactor sign
      Rat minor = Rat(w.cofactors[col - 1]) * (col % 2 == 1 ? -1 : 1);
      if (!ival.contains(minor)) ok = false;
      Int mag = rat_ceil(std::max(rat_abs(ival.lo), rat_abs(ival.hi)));
      bound = std::max(bound, mag);
    }
    w.cofactors_ok = ok;
    w.cofactor_bound = bound;
    out.push_back(std::move(w));
  }
  if (out.empty()) throw PreconditionViolation("no full window of r consecutive levels");
  return out;
}

VerifyReport verify_singularity(const SingularCertificate& cert, const std::vector<Rat>& T_range,
                                const Int& midpoint_bound) {
  VerifyReport rep;
  cert.revalidate();
  rep.certificate_valid = true;

  const Rat W = cert.schedule.W();
  PsiCache pc{&cert.psi, cert.psi_bits};

  std::vector<SingularWitness> pool;
  for (const auto& lvl : cert.levels) {
    for (int j = 1; j <= cert.r; ++j) {
      SingularWitness w;
      w.coeffs.assign(cert.r, Int(0));
      w.coeffs[j - 1] = lvl.p;
      w.size = lvl.p;
      Rat lo = Rat(lvl.p) * cert.box[j - 1].lo - Rat(lvl.a[j - 1]);
      Rat hi = Rat(lvl.p) * cert.box[j - 1].hi - Rat(lvl.a[j - 1]);
      Rat upper = std::max(rat_abs(lo), rat_abs(hi));
      if (upper > Rat(1, 2)) upper = Rat(1, 2);  // ||.|| never exceeds 1/2
      w.value = Enclosure(Rat(0), upper);
      w.origin = (lvl.pinned ? "pinned level " : "level ") + std::to_string(lvl.nu);
      pool.push_back(std::move(w));
    }
  }
  if (cert.depth() + 1 >= cert.r) {
    for (const auto& dw : determinant_witness(cert)) {
      SingularWitness w;
      w.coeffs = dw.cofactors;
      w.size = 0;
      for (const auto& c : dw.cofactors) w.size = std::max(w.size, int_abs(c));
      w.value = dw.value;
      w.origin = "window " + std::to_string(dw.nu);
      pool.push_back(std::move(w));
    }
  }

  Rat pmin = Rat(cert.levels.front().p);
  // pinned levels sit beyond the psi-representable horizon
  Rat pmax = pmin;
  for (const auto& lvl : cert.levels)
    if (!lvl.pinned) pmax = Rat(lvl.p);
  for (const Rat& T : T_range) {
    if (T < pmin) throw HorizonError("T below the first certified level");
    if (T > pmax) throw HorizonError("T beyond the deepest fully certified level");
    VerifyEntry e;
    e.T = T;
    Enclosure psT = pc.at(T);
    Rat scaled = (W + 1) * psT.lo;
    for (const auto& w : pool) {
      if (Rat(w.size) > T) continue;
      if (!(w.value.hi < scaled)) continue;
      if (!e.witness_found || w.value.hi < e.witness.value.hi) {
        e.witness_found = true;
        e.witness = w;
      }
    }
    if (e.witness_found) e.plain_psi_ok = e.witness.value.hi < psT.lo;
    rep.entries.push_back(e);
    rep.all_found = rep.all_found && e.witness_found;
  }

  rep.midpoint_bound = midpoint_bound;
  if (midpoint_bound > 0) {
    std::vector<RealScalar> mid;
    for (const auto& q : cert.box_midpoint()) mid.push_back(RealScalar(q));
    LinearFormSequence seq = best_linear_form(mid, midpoint_bound);
    int len = (int)seq.entries.size();
    for (int i = 0; i < len; ++i) {
      auto check_at = [&](int idx) -> int {
        if (idx >= len) return -1;
        Rat zeta = *seq.entries[i].zeta_exact;
        Enclosure ps = pc.at(Rat(seq.entries[idx].M));
        return zeta <= ps.lo ? 1 : 0;
      };
      rep.n3_ok.push_back(check_at(i + 1));
      rep.n3x_ok.push_back(check_at(i + cert.r - 1));
    }
  }
  return rep;
}

}  // namespace dioph
