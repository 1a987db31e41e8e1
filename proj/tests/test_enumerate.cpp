#include <doctest.h>

#include "dioph/analysis.hpp"
#include "dioph/enumerate.hpp"
#include "dioph/rng.hpp"

using namespace dioph;

namespace {

RealScalar sqrt2() { return parse_scalar("quad:(0+1*sqrt(2))/1"); }
RealScalar golden() { return parse_scalar("quad:(1+1*sqrt(5))/2"); }

std::vector<Int> ps(const SimultaneousSequence& s) {
  std::vector<Int> out;
  for (const auto& e : s.entries) out.push_back(e.p);
  return out;
}

bool lf_equal(const LinearFormSequence& a, const LinearFormSequence& b) {
  if (a.entries.size() != b.entries.size()) return false;
  for (size_t i = 0; i < a.entries.size(); ++i) {
    if (a.entries[i].m != b.entries[i].m) return false;
    if (a.entries[i].M != b.entries[i].M) return false;
  }
  return true;
}

bool sim_equal(const SimultaneousSequence& a, const SimultaneousSequence& b) {
  if (a.entries.size() != b.entries.size()) return false;
  for (size_t i = 0; i < a.entries.size(); ++i) {
    if (a.entries[i].p != b.entries[i].p) return false;
    if (a.entries[i].a != b.entries[i].a) return false;
  }
  return a.exact_hit == b.exact_hit;
}

Rat rand_frac(Rng& rng, long den) {  // in (0, 1) over the given denominator
  return make_rat(Int(rng.range(1, den - 1)), Int(den));
}

}  // namespace

TEST_CASE("cf_convergents of sqrt(2), golden ratio, 3/7") {
  auto c2 = cf_convergents(sqrt2(), 5);
  REQUIRE(c2.size() == 5);
  CHECK(c2[0] == std::make_pair(Int(1), Int(1)));
  CHECK(c2[1] == std::make_pair(Int(3), Int(2)));
  CHECK(c2[2] == std::make_pair(Int(7), Int(5)));
  CHECK(c2[3] == std::make_pair(Int(17), Int(12)));
  CHECK(c2[4] == std::make_pair(Int(41), Int(29)));

  auto cg = cf_convergents(golden(), 5);
  CHECK(cg[0] == std::make_pair(Int(1), Int(1)));
  CHECK(cg[1] == std::make_pair(Int(2), Int(1)));
  CHECK(cg[2] == std::make_pair(Int(3), Int(2)));
  CHECK(cg[3] == std::make_pair(Int(5), Int(3)));
  CHECK(cg[4] == std::make_pair(Int(8), Int(5)));

  auto cr = cf_convergents(RealScalar(Rat(3, 7)), 10);
  REQUIRE(cr.size() == 3);
  CHECK(cr[0] == std::make_pair(Int(0), Int(1)));
  CHECK(cr[1] == std::make_pair(Int(1), Int(2)));
  CHECK(cr[2] == std::make_pair(Int(3), Int(7)));

  RealScalar s2{std::make_shared<SqrtStream>(Rat(2))};
  CHECK(cf_convergents(s2, 5) == c2);
}

TEST_CASE("best_linear_form r=1 sqrt(2) matches the convergents") {
  auto seq = best_linear_form({sqrt2()}, 30);
  REQUIRE(seq.entries.size() == 5);
  std::vector<std::vector<Int>> want = {{-1, 1}, {-3, 2}, {-7, 5}, {-17, 12}, {-41, 29}};
  std::vector<Int> wantM = {1, 2, 5, 12, 29};
  for (size_t i = 0; i < want.size(); ++i) {
    CHECK(seq.entries[i].m == want[i]);
    CHECK(seq.entries[i].M == wantM[i]);
    CHECK(seq.entries[i].nu == (int)i + 1);
  }
  for (size_t i = 0; i + 1 < seq.entries.size(); ++i)
    CHECK(seq.entries[i + 1].zeta.certainly_lt(seq.entries[i].zeta));
}

TEST_CASE("best_linear_form detects rational dependence with a witness") {
  try {
    best_linear_form({RealScalar(Rat(1, 2))}, 10);
    FAIL("expected RationalDependence");
  } catch (const RationalDependence& e) {
    CHECK(e.witness == std::vector<Int>{-1, 2});
  }
}

TEST_CASE("best_linear_form r=2 stream targets satisfy the Minkowski bound") {
  std::vector<RealScalar> alpha = {RealScalar(std::make_shared<SqrtStream>(Rat(2))),
                                   RealScalar(std::make_shared<SqrtStream>(Rat(3)))};
  auto seq = best_linear_form(alpha, 50);
  REQUIRE(seq.entries.size() >= 3);
  for (size_t i = 0; i + 1 < seq.entries.size(); ++i) {
    Rat bound = Rat(1) / Rat(Int(seq.entries[i + 1].M * seq.entries[i + 1].M));
    CHECK(seq.entries[i].zeta.certainly_le(bound));
  }
}

TEST_CASE("pruned linear-form enumerator equals the brute-force oracle") {
  SUBCASE("worked example") {
    auto a = best_linear_form({sqrt2()}, 12);
    auto b = brute_force_oracle_lf({sqrt2()}, 12);
    CHECK(lf_equal(a, b));
  }
  SUBCASE("random rational targets across r = 1, 2, 3") {
    Rng rng(99);
    const long dens[] = {97, 211, 401, 997};
    int done = 0;
    while (done < 60) {
      int r = (int)rng.below(3) + 1;
      long den = dens[rng.below(4)];
      std::vector<RealScalar> alpha;
      for (int j = 0; j < r; ++j) alpha.push_back(RealScalar(rand_frac(rng, den)));
      Int bound = r == 3 ? 8 : 14;
      LinearFormSequence a, b;
      bool dep_a = false, dep_b = false;
      std::vector<Int> wit_a, wit_b;
      try {
        a = best_linear_form(alpha, bound);
      } catch (const RationalDependence& e) {
        dep_a = true;
        wit_a = e.witness;
      }
      try {
        b = brute_force_oracle_lf(alpha, bound);
      } catch (const RationalDependence& e) {
        dep_b = true;
        wit_b = e.witness;
      }
      REQUIRE(dep_a == dep_b);
      if (!dep_a) REQUIRE(lf_equal(a, b));
      ++done;
    }
  }
}

TEST_CASE("best_simultaneous of 3/7 under sup matches the worked example") {
  auto seq = best_simultaneous({RealScalar(Rat(3, 7))}, Norm::sup(1), 10);
  REQUIRE(seq.entries.size() == 3);
  CHECK(seq.entries[0].p == 1);
  CHECK(seq.entries[0].a == std::vector<Int>{0});
  CHECK(*seq.entries[0].D.exact == Rat(3, 7));
  CHECK(seq.entries[1].p == 2);
  CHECK(seq.entries[1].a == std::vector<Int>{1});
  CHECK(*seq.entries[1].D.exact == Rat(1, 7));
  CHECK(seq.entries[2].p == 7);
  CHECK(seq.entries[2].a == std::vector<Int>{3});
  CHECK(seq.entries[2].D.exact->get_num() == 0);
  CHECK(seq.exact_hit);
}

TEST_CASE("best_simultaneous p-values of sqrt(2) are the CF denominators") {
  auto seq = best_simultaneous({sqrt2()}, Norm::sup(1), 500);
  CHECK(ps(seq) == std::vector<Int>{1, 2, 5, 12, 29, 70, 169, 408});
  auto g = best_simultaneous({golden()}, Norm::sup(1), 100);
  CHECK(ps(g) == std::vector<Int>{1, 2, 3, 5, 8, 13, 21, 34, 55, 89});
}

TEST_CASE("half-integer tie at a record is a hard error") {
  CHECK_THROWS_AS(best_simultaneous({RealScalar(Rat(1, 2))}, Norm::sup(1), 4), TieAtOptimum);
}

TEST_CASE("pruned simultaneous enumerator equals the oracle") {
  SUBCASE("worked example n=2 (3/7, 5/11)") {
    std::vector<RealScalar> alpha = {RealScalar(Rat(3, 7)), RealScalar(Rat(5, 11))};
    auto a = best_simultaneous(alpha, Norm::sup(2), 77);
    auto b = brute_force_oracle_sim(alpha, Norm::sup(2), 77);
    CHECK(sim_equal(a, b));
    CHECK(a.exact_hit);
    CHECK(a.entries.back().p == 77);
  }
  SUBCASE("random targets, all three norms") {
    Rng rng(123);
    const long dens[] = {101, 211, 499};
    for (const char* spec : {"sup", "l2", "poly:fstar"}) {
      int done = 0;
      while (done < 12) {
        long den = dens[rng.below(3)];
        std::vector<RealScalar> alpha = {RealScalar(rand_frac(rng, den)),
                                         RealScalar(rand_frac(rng, den))};
        Norm f = Norm::parse(spec, 2);
        SimultaneousSequence a(f), b(f);
        bool tie_a = false, tie_b = false;
        try {
          a = best_simultaneous(alpha, f, 150);
        } catch (const TieAtOptimum&) {
          tie_a = true;
        }
        try {
          b = brute_force_oracle_sim(alpha, f, 150);
        } catch (const TieAtOptimum&) {
          tie_b = true;
        }
        REQUIRE(tie_a == tie_b);
        if (!tie_a) REQUIRE(sim_equal(a, b));
        ++done;
      }
    }
  }
}

TEST_CASE("monotonicity invariants on produced sequences") {
  std::vector<RealScalar> alpha = {RealScalar(Rat(13, 89)), RealScalar(Rat(34, 89))};
  auto seq = best_simultaneous(alpha, Norm::fstar(), 89);
  for (size_t i = 0; i + 1 < seq.entries.size(); ++i) {
    CHECK(seq.entries[i].p < seq.entries[i + 1].p);
    CHECK(gauge_compare(seq.entries[i + 1].D, seq.entries[i].D) == Ordering::LT);
  }
}

TEST_CASE("integer translation invariance of best_simultaneous") {
  Rng rng(77);
  for (int i = 0; i < 10; ++i) {
    Rat q1 = rand_frac(rng, 307), q2 = rand_frac(rng, 307);
    long k1 = rng.range(-6, 6), k2 = rng.range(-6, 6);
    auto a = best_simultaneous({RealScalar(q1), RealScalar(q2)}, Norm::sup(2), 100);
    auto b = best_simultaneous({RealScalar(q1 + Rat(k1)), RealScalar(q2 + Rat(k2))},
                               Norm::sup(2), 100);
    REQUIRE(a.entries.size() == b.entries.size());
    for (size_t t = 0; t < a.entries.size(); ++t) {
      CHECK(a.entries[t].p == b.entries[t].p);
      CHECK(b.entries[t].a[0] == a.entries[t].a[0] + a.entries[t].p * k1);
      CHECK(b.entries[t].a[1] == a.entries[t].a[1] + a.entries[t].p * k2);
      CHECK(gauge_compare(a.entries[t].D, b.entries[t].D) == Ordering::EQ);
    }
  }
}

TEST_CASE("simultaneous Minkowski bound f(xi)^n p <= 2^n/Vol on random targets") {
  Rng rng(31);
  for (const char* spec : {"sup", "poly:fstar"}) {
    Norm f = Norm::parse(spec, 2);
    for (int i = 0; i < 10; ++i) {
      std::vector<RealScalar> alpha = {RealScalar(rand_frac(rng, 499)),
                                       RealScalar(rand_frac(rng, 499))};
      SimultaneousSequence seq(f);
      try {
        seq = best_simultaneous(alpha, f, 499);
      } catch (const TieAtOptimum&) {
        continue;
      }
      for (size_t t = 0; t + 1 < seq.entries.size(); ++t)
        CHECK(f.minkowski_bound_holds(seq.entries[t].D, seq.entries[t + 1].p));
    }
  }
}
