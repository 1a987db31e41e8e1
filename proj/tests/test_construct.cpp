#include <doctest.h>

#include "dioph/analysis.hpp"
#include "dioph/enumerate.hpp"
#include "dioph/singular.hpp"

using namespace dioph;

TEST_CASE("sigma_calibrate: r=2 gives 8 and the band certificates hold") {
  Rat s2 = sigma_calibrate(2);
  CHECK(s2 == 8);
  SingularSchedule sch{2, s2};
  // unperturbed determinant magnitude sigma^2 * 2! * prod(v-u) = 2 sigma^2
  CHECK(rat_abs(Rat(sch.sigma_at(1, 1) * sch.sigma_at(2, 2) - sch.sigma_at(2, 1) * sch.sigma_at(1, 2))) ==
        2 * s2 * s2);
  for (long nu = 0; nu < 2; ++nu) {
    Enclosure d = schedule_det_interval(sch, nu);
    CHECK_FALSE(d.contains_zero());
  }
  // r=3: unperturbed magnitude sigma^3 * 3! * prod(v-u) = 12 sigma^3
  Rat s3 = sigma_calibrate(3);
  SingularSchedule sch3{3, s3};
  IntMat m;
  for (int i = 0; i < 3; ++i) {
    std::vector<Int> row;
    for (int j = 1; j <= 3; ++j) row.push_back(Int(sch3.sigma_at(j, 1 + i)));
    m.push_back(row);
  }
  CHECK(int_abs(int_det(m)) == Int(12) * Int(Rat(s3 * s3 * s3).get_num()));
}

TEST_CASE("singular_build power psi depth 3 reproduces the worked step and validates") {
  SingularSchedule sch{2, sigma_calibrate(2)};
  auto cert = singular_build(2, PsiFunction::power(3), sch, 3);
  REQUIRE(cert.levels.size() == 4);
  CHECK(cert.levels[0].p == 2);
  CHECK(cert.levels[1].p == 97);  // floor(6 * 2 * 8) + 1
  CHECK_FALSE(cert.levels.back().pinned);
  // nesting and distinctness are regression-checked by revalidate()
  cert.revalidate();
  for (size_t i = 0; i + 1 < cert.levels.size(); ++i)
    for (int j = 0; j < 2; ++j) {
      CHECK(cert.levels[i + 1].delta[j].subset_of(cert.levels[i].delta[j]));
      CHECK_FALSE(cert.levels[i + 1].delta[j].contains(
          make_rat(cert.levels[i].a[j], cert.levels[i].p)));
    }
  // corrupting an interval endpoint must break revalidation
  auto broken = cert;
  broken.box[0] = Enclosure(broken.box[0].lo - 1, broken.box[0].hi);
  CHECK_THROWS_AS(broken.revalidate(), PreconditionViolation);
}

TEST_CASE("determinant_witness lies in the Lemma product band with certified cofactors") {
  SingularSchedule sch{2, 8};
  auto cert = singular_build(2, PsiFunction::power(3), sch, 3);
  auto ws = determinant_witness(cert);
  REQUIRE(ws.size() == 3);  // windows {0,1}, {1,2}, {2,3}
  for (const auto& w : ws) {
    CHECK(w.value.lo > 0);  // nonzero, certified
    CHECK(w.cofactors_ok);
    for (const auto& c : w.cofactors) CHECK(int_abs(c) <= w.cofactor_bound);
  }
  // positivity chain 0 < zeta(n_{nu+1}) < zeta(n_nu)
  for (size_t i = 0; i + 1 < ws.size(); ++i) CHECK(ws[i + 1].value.hi < ws[i].value.lo);
  // degenerate input: repeated rows give a zero determinant
  IntMat rep = {{Int(2), Int(3)}, {Int(2), Int(3)}};
  CHECK(int_det(rep) == 0);
}

TEST_CASE("verify_singularity passes at every certified level") {
  SingularSchedule sch{2, 8};
  auto cert = singular_build(2, PsiFunction::power(3), sch, 3);
  std::vector<Rat> Ts;
  for (const auto& lvl : cert.levels) Ts.push_back(Rat(lvl.p));
  auto rep = verify_singularity(cert, Ts, 40);
  CHECK(rep.certificate_valid);
  CHECK(rep.all_found);
  for (const auto& e : rep.entries) CHECK(e.witness_found);
  CHECK_THROWS_AS(verify_singularity(cert, {Rat(1)}, 0), HorizonError);  // T < p_0
  // the n3-style informational arrays align with the midpoint enumeration
  CHECK(rep.n3_ok.size() == rep.n3x_ok.size());
  CHECK(!rep.n3_ok.empty());
}

TEST_CASE("admissibility failure for a too-slow psi table") {
  // slow decay: psi(y) ~ 1/y barely decreases; the o(y^-2) surrogate fails
  std::vector<std::pair<Rat, Rat>> pts;
  for (long y = 2; y <= 4096; y *= 2) pts.emplace_back(Rat(y), Rat(1, y));
  auto psi = PsiFunction::table(pts);
  SingularSchedule sch{2, 8};
  CHECK_THROWS_AS(singular_build(2, psi, sch, 2), AdmissibilityFailure);
}

TEST_CASE("depth overflow reports instead of building the unrepresentable level") {
  SingularSchedule sch{2, 8};
  SingularBuildOptions opts;
  opts.bit_cap = 64;  // tiny cap: the second power level already blows it
  CHECK_THROWS_AS(singular_build(2, PsiFunction::power(3), sch, 3, opts), DepthOverflow);
}

TEST_CASE("exponential certificate with a pinned final level") {
  SingularSchedule sch{2, 8};
  SingularBuildOptions opts;
  opts.p0 = 1;
  opts.a0 = {Int(-11), Int(-22)};
  opts.allow_pinned_final = true;
  opts.box_shrink_bits = 200;
  auto cert = singular_build(2, PsiFunction::exponential(Rat(3, 8)), sch, 3, opts);
  REQUIRE(cert.levels.size() == 4);
  CHECK(cert.levels[1].p == 9);
  CHECK(cert.levels[2].p == 1579);
  CHECK(cert.levels.back().pinned);
  CHECK(cert.box[0].width() <= pow2(-190));
  cert.revalidate();
  // the box keeps alpha near the intended small values
  CHECK(cert.box[0].certainly_lt(Rat(2)));
  CHECK(cert.box[0].certainly_gt(Rat(-1)));
  // witnesses exist at every fully certified level; the pinned level is
  // beyond the psi-representable horizon and is rejected as such
  std::vector<Rat> Ts;
  for (const auto& lvl : cert.levels)
    if (!lvl.pinned) Ts.push_back(Rat(lvl.p));
  auto rep = verify_singularity(cert, Ts, 0);
  CHECK(rep.all_found);
  CHECK_THROWS_AS(verify_singularity(cert, {Rat(cert.levels.back().p)}, 0), HorizonError);
  // windows {0,1} and {1,2} are full; {2,3} is pinned and skipped
  auto ws = determinant_witness(cert);
  CHECK(ws.size() == 2);
}

TEST_CASE("builder/enumerator agreement at deep levels") {
  // Once (sigma+1) psi(p_nu) undercuts everything a smaller denominator can
  // reach, the certified row must surface as the b.s.a. at p_nu. Shallow
  // levels carry no such promise: their remainders are O(1).
  SingularSchedule sch{2, 8};
  SingularBuildOptions opts;
  opts.p0 = 1;
  opts.a0 = {Int(-11), Int(-22)};
  opts.allow_pinned_final = true;
  opts.box_shrink_bits = 200;
  auto cert = singular_build(2, PsiFunction::exponential(Rat(3, 8)), sch, 3, opts);
  auto targets = cert.box_targets();
  Int p2 = cert.levels[2].p;
  auto seq = best_simultaneous(targets, Norm::sup(2), p2);
  REQUIRE(!seq.entries.empty());
  CHECK(seq.entries.back().p == p2);
  CHECK(seq.entries.back().a == cert.levels[2].a);
}
