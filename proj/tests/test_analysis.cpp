#include <doctest.h>

#include "dioph/analysis.hpp"
#include "dioph/enumerate.hpp"
#include "dioph/rng.hpp"

using namespace dioph;

namespace {

RealScalar sqrt2() { return parse_scalar("quad:(0+1*sqrt(2))/1"); }

SimultaneousSequence fake_sim(const Norm& f, std::vector<std::tuple<long, std::vector<long>, Rat>> rows) {
  SimultaneousSequence s(f);
  int nu = 0;
  for (auto& [p, a, D] : rows) {
    SimultaneousBA e;
    e.p = p;
    std::vector<RealScalar> xi;
    for (long v : a) e.a.push_back(Int(v));
    e.D = f.kind() == NormKind::Euclidean ? GaugeValue::from_sq(D * D) : GaugeValue::from_exact(D);
    e.nu = ++nu;
    s.entries.push_back(e);
  }
  s.bound = std::get<0>(rows.back());
  return s;
}

}  // namespace

TEST_CASE("Theorem 1.1: r=1 determinants alternate as (-1)^(nu-1)") {
  auto seq = best_linear_form({sqrt2()}, 500);
  REQUIRE(seq.entries.size() >= 6);
  for (int nu = 1; nu + 1 <= (int)seq.entries.size(); ++nu) {
    Int want = nu % 2 == 1 ? 1 : -1;
    CHECK(delta_det(seq, nu) == want);
  }
}

TEST_CASE("Theorem 1.2 regime: some r=2 window determinant is nonzero") {
  std::vector<RealScalar> alpha = {RealScalar(std::make_shared<SqrtStream>(Rat(2))),
                                   RealScalar(std::make_shared<SqrtStream>(Rat(3)))};
  auto seq = best_linear_form(alpha, 60);
  REQUIRE(seq.entries.size() >= 5);
  bool any = false;
  for (int nu = 1; nu + 2 <= (int)seq.entries.size(); ++nu)
    if (delta_det(seq, nu) != 0) any = true;
  CHECK(any);
}

TEST_CASE("degenerate windows: repeated rows give zero determinant and rank 1") {
  LinearFormSequence seq;
  seq.target = {RealScalar(Rat(1, 3))};
  for (int i = 0; i < 2; ++i) {
    LinearFormBA e;
    e.m = {Int(-1), Int(2)};
    e.M = 2;
    e.nu = i + 1;
    seq.entries.push_back(e);
  }
  CHECK(delta_det(seq, 1) == 0);
  CHECK(window_rank(seq, 1, 1) == 1);
  CHECK_THROWS_AS(delta_det(seq, 2), PreconditionViolation);
}

TEST_CASE("Proposition 1: n=1 window determinants are unimodular, rank 2") {
  auto seq = best_simultaneous({sqrt2()}, Norm::sup(1), 500);
  for (int nu = 1; nu + 1 <= (int)seq.entries.size(); ++nu) {
    CHECK(window_rank(seq, nu, 1) == 2);
    IntMat m = {{seq.entries[nu - 1].p, seq.entries[nu - 1].a[0]},
                {seq.entries[nu].p, seq.entries[nu].a[0]}};
    Int det = int_det(m);
    CHECK(int_abs(det) == 1);
    if (nu + 2 <= (int)seq.entries.size()) {
      IntMat m2 = {{seq.entries[nu].p, seq.entries[nu].a[0]},
                   {seq.entries[nu + 1].p, seq.entries[nu + 1].a[0]}};
      CHECK(int_det(m2) == -det);  // alternating sign
    }
  }
}

TEST_CASE("tail_lattice_dim observations") {
  auto seq = best_simultaneous({sqrt2()}, Norm::sup(1), 500);
  CHECK(tail_lattice_dim(seq, 1) == 2);
  CHECK(tail_lattice_dim(seq, (int)seq.entries.size() - 1) == 2);

  // a fixture lying inside the plane a_2 = 0
  auto planar = fake_sim(Norm::sup(2), {{1, {1, 0}, Rat(1, 3)},
                                        {2, {3, 0}, Rat(1, 4)},
                                        {5, {7, 0}, Rat(1, 5)}});
  CHECK(tail_lattice_dim(planar, 1) == 2);
}

TEST_CASE("signatures: exact signs and the Rogers property under sup") {
  std::vector<RealScalar> alpha = {RealScalar(Rat(3, 7)), RealScalar(Rat(5, 11))};
  auto seq = best_simultaneous(alpha, Norm::sup(2), 77);
  auto sigs = signature_sequence(seq);
  REQUIRE(sigs.size() == seq.entries.size());
  // drop the exact hit: its remainder is identically zero
  size_t last = sigs.size() - (seq.exact_hit ? 1 : 0);
  for (size_t i = 0; i + 1 < last; ++i) {
    bool zero_free = true;
    for (int v : {sigs[i][0], sigs[i][1], sigs[i + 1][0], sigs[i + 1][1]}) zero_free &= v != 0;
    if (zero_free) CHECK(sigs[i] != sigs[i + 1]);
  }
  // (0.3, -0.2) has signature (+,-)
  std::vector<RealScalar> one = {RealScalar(parse_decimal("0.3")), RealScalar(parse_decimal("-0.2"))};
  SimultaneousSequence s(Norm::sup(2));
  SimultaneousBA e;
  e.p = 1;
  e.a = {Int(0), Int(0)};
  e.D = GaugeValue::from_exact(Rat(3, 10));
  e.xi = one;
  e.nu = 1;
  s.entries.push_back(e);
  auto sv = signature_sequence(s);
  CHECK(sv[0] == SignatureVector{1, -1});
}

TEST_CASE("no_interior_check holds on enumerated sequences and flags a fake") {
  for (const char* spec : {"sup", "poly:fstar", "l2"}) {
    Norm f = Norm::parse(spec, 2);
    std::vector<RealScalar> alpha = {RealScalar(Rat(13, 89)), RealScalar(Rat(34, 89))};
    auto seq = best_simultaneous(alpha, f, 89);
    auto ok = no_interior_check(seq);
    for (bool b : ok) CHECK(b);
  }
  // fabricated violation: xi_(nu+1) = xi_nu / 2
  SimultaneousSequence s(Norm::sup(2));
  for (int i = 0; i < 2; ++i) {
    SimultaneousBA e;
    e.p = i + 1;
    e.a = {Int(0), Int(0)};
    Rat scale = i == 0 ? Rat(2, 5) : Rat(1, 5);
    e.D = GaugeValue::from_exact(scale);
    e.xi = {RealScalar(scale), RealScalar(scale)};
    e.nu = i + 1;
    s.entries.push_back(e);
  }
  auto bad = no_interior_check(s);
  REQUIRE(bad.size() == 1);
  CHECK_FALSE(bad[0]);
}

TEST_CASE("separation_scan: delta = 0 against the no-interior baseline") {
  std::vector<RealScalar> alpha = {RealScalar(Rat(13, 89)), RealScalar(Rat(34, 89))};
  auto seq = best_simultaneous(alpha, Norm::sup(2), 89);
  size_t pairs = seq.entries.size() - 1 - (seq.exact_hit ? 1 : 0);
  auto zero = separation_scan(seq, Rat(0));
  // every scanned index satisfies the strict form of the no-interior law here
  CHECK(zero.size() == pairs);
}

TEST_CASE("separation_scan on the euclidean golden-pair fixture is nonempty") {
  // (phi - 1, 2 - phi) = ((sqrt5 - 1)/2, (3 - sqrt5)/2), exact in Q(sqrt 5)
  RealScalar a1 = parse_scalar("quad:(-1+1*sqrt(5))/2");
  RealScalar a2 = parse_scalar("quad:(3-1*sqrt(5))/2");
  auto seq = best_simultaneous({a1, a2}, Norm::euclidean(2), 2000);
  REQUIRE(seq.entries.size() >= 15);
  if (seq.entries.size() > 30) seq.entries.resize(30);
  auto hits = separation_scan(seq, Rat(1, 100));
  CHECK(!hits.empty());
}

TEST_CASE("growth series and doubling for sqrt(2)") {
  auto seq = best_simultaneous({sqrt2()}, Norm::sup(1), 10000);
  auto gs = growth_and_doubling(seq);
  CHECK(gs.doubling_h == 4);
  CHECK(gs.doubling_all);
  for (const auto& [nu, val] : gs.points) {
    CHECK(val.certainly_gt(Rat(1, 2)));
    CHECK(val.certainly_lt(Rat(1)));
  }
  CHECK(gs.badness_argmin > 0);
  CHECK(gs.badness_value.lo > 0);
}

TEST_CASE("asymptotic directions of sqrt(2) cluster at +1 and -1") {
  auto seq = best_simultaneous({sqrt2()}, Norm::sup(1), 500);
  auto as = asymptotic_directions(seq, Rat(1, 10), 1);
  REQUIRE(as.clusters.size() == 2);
  // alternating membership
  CHECK(as.clusters[0].members.size() + as.clusters[1].members.size() == seq.entries.size());
  for (int m : as.clusters[0].members) CHECK(m % 2 == 1);
  for (int m : as.clusters[1].members) CHECK(m % 2 == 0);

  // constant-direction fixture collapses to one cluster
  SimultaneousSequence s(Norm::sup(1));
  for (int i = 0; i < 4; ++i) {
    SimultaneousBA e;
    e.p = i + 1;
    e.a = {Int(0)};
    e.D = GaugeValue::from_exact(Rat(1, 2 + i));
    e.xi = {RealScalar(Rat(1, 2 + i))};
    e.nu = i + 1;
    s.entries.push_back(e);
  }
  auto one = asymptotic_directions(s, Rat(1, 10), 1);
  CHECK(one.clusters.size() == 1);
}

TEST_CASE("rank/determinant consistency on random windows") {
  Rng rng(5);
  std::vector<RealScalar> alpha = {RealScalar(Rat(131, 997)), RealScalar(Rat(550, 997))};
  auto seq = best_linear_form(alpha, 25);
  for (int nu = 1; nu + 2 <= (int)seq.entries.size(); ++nu) {
    Int det = delta_det(seq, nu);
    int rank = window_rank(seq, nu, 2);
    CHECK((det != 0) == (rank == 3));
  }
}
