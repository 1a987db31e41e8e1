#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "dioph/real.hpp"
#include "dioph/rng.hpp"

using namespace dioph;

TEST_CASE("rational parsing keeps decimals exact") {
  CHECK(parse_decimal("1.25") == Rat(5, 4));
  CHECK(parse_decimal("-0.5") == Rat(-1, 2));
  CHECK(parse_decimal("3") == Rat(3));
  CHECK(parse_fraction("-7/21") == Rat(-1, 3));
  CHECK_THROWS_AS(parse_fraction("1/0"), ParseError);
  CHECK_THROWS_AS(parse_decimal("1.2.3"), ParseError);
}

TEST_CASE("scalar grammar") {
  CHECK(parse_scalar("rat:3/7").rational() == Rat(3, 7));
  CHECK(parse_scalar("dec:1.414213").rational() == Rat(1414213, 1000000));
  RealScalar r2 = parse_scalar("quad:(0+1*sqrt(2))/1");
  REQUIRE(r2.is_quadratic());
  CHECK(r2.quadratic().d() == 2);
  RealScalar g = parse_scalar("quad:(1+1*sqrt(5))/2");
  REQUIRE(g.is_quadratic());
  CHECK(g.quadratic().a() == Rat(1, 2));
  CHECK(g.quadratic().b() == Rat(1, 2));
  CHECK_THROWS_AS(parse_scalar("nope:1"), ParseError);
  // a quad that collapses to a rational comes back rational
  CHECK(parse_scalar("quad:(3+0*sqrt(2))/2").is_rational());
}

TEST_CASE("compare_certified on exact values") {
  CHECK(compare_certified(RealScalar(Rat(1, 2)), RealScalar(Rat(1, 2))) == Ordering::EQ);
  // sqrt(2) < 3/2 decided algebraically
  RealScalar r2 = parse_scalar("quad:(0+1*sqrt(2))/1");
  CHECK(compare_certified(r2, RealScalar(Rat(3, 2))) == Ordering::LT);
  CHECK(compare_certified(r2, RealScalar(Rat(7, 5))) == Ordering::GT);
  // same-field quadratic comparison
  RealScalar g = parse_scalar("quad:(1+1*sqrt(5))/2");
  RealScalar g2 = parse_scalar("quad:(3+1*sqrt(5))/2");
  CHECK(compare_certified(g, g2) == Ordering::LT);
}

TEST_CASE("compare_certified against a pi stream") {
  // nested rational bounds on pi, coarse to fine
  auto dir = std::filesystem::temp_directory_path() / "dioph_test_streams";
  std::filesystem::create_directories(dir);
  auto path = (dir / "pi.txt").string();
  {
    std::ofstream out(path);
    out << "3 4\n";
    out << "311/99 63/20\n";
    out << "31415/10000 31416/10000\n";
    out << "314159265358979/100000000000000 314159265358980/100000000000000\n";
    out << "3141592653589793238462643383279/1000000000000000000000000000000 "
           "3141592653589793238462643383280/1000000000000000000000000000000\n";
  }
  RealScalar pi = parse_scalar("stream:" + path);
  // |pi - 355/113| ~ 2.7e-7, decidable from the file
  CHECK(compare_certified(pi, RealScalar(Rat(355, 113)), pow2(-66)) == Ordering::LT);
  CHECK(compare_certified(pi, RealScalar(Rat(3))) == Ordering::GT);
  // refinement past the file depth is honest
  CHECK(compare_certified(pi, pi) == Ordering::UNDECIDED);
}

TEST_CASE("soundness: stream comparisons never contradict exact order") {
  Rng rng(20240817);
  int n = 100000;
  for (int i = 0; i < n; ++i) {
    Rat a = make_rat(Int(rng.range(-1000000, 1000000)), Int(rng.range(1, 1000000)));
    Rat b = make_rat(Int(rng.range(-1000000, 1000000)), Int(rng.range(1, 1000000)));
    RealScalar sa{std::make_shared<ExactStream>(a)};
    RealScalar sb{std::make_shared<ExactStream>(b)};
    Ordering o = compare_certified(sa, sb);
    if (a < b) {
      REQUIRE(o == Ordering::LT);
    } else if (a > b) {
      REQUIRE(o == Ordering::GT);
    } else {
      REQUIRE(o == Ordering::UNDECIDED);  // streams can never prove equality
    }
  }
}

TEST_CASE("nesting of stream refinements") {
  RealScalar s{std::make_shared<SqrtStream>(Rat(2))};
  Enclosure coarse = s.enclose(Rat(1, 100));
  Enclosure fine = s.enclose(Rat(1, 10000));
  CHECK(fine.width() <= Rat(2, 10000));
  CHECK(fine.lo >= coarse.lo);
  CHECK(fine.hi <= coarse.hi);
}

TEST_CASE("dist_to_nearest_integer") {
  auto r = dist_to_nearest_integer(RealScalar(Rat(7, 3)));
  CHECK(r.dist.is_point());
  CHECK(r.dist.lo == Rat(1, 3));
  CHECK(r.nearest == 2);

  RealScalar r2 = parse_scalar("quad:(0+1*sqrt(2))/1");
  auto s = dist_to_nearest_integer(r2, pow2(-40));
  CHECK(s.nearest == 1);
  CHECK(s.dist.contains(sqrt_enclosure(Rat(2), 60).mid() - 1));
  // algebraic bracket 2/5 < sqrt(2)-1 < 1/2
  CHECK(s.dist.certainly_gt(Rat(2, 5)));
  CHECK(s.dist.certainly_lt(Rat(1, 2)));

  CHECK_THROWS_AS(dist_to_nearest_integer(RealScalar(Rat(5, 2))), HalfIntegerTie);
}

TEST_CASE("translation invariance of dist_to_nearest_integer") {
  Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    Rat q = make_rat(Int(rng.range(-10000, 10000)), Int(rng.range(1, 997)));
    if (is_half_integer(q)) continue;
    long k = rng.range(-50, 50);
    auto a = dist_to_nearest_integer(RealScalar(q));
    auto b = dist_to_nearest_integer(RealScalar(q + Rat(k)));
    CHECK(a.dist.lo == b.dist.lo);
    CHECK(b.nearest == a.nearest + k);
  }
}

TEST_CASE("quadratic floor and sign") {
  QuadraticReal r2(0, 1, 2);
  CHECK(r2.floor() == 1);
  CHECK((r2 * Rat(5)).floor() == 7);
  CHECK((-r2).floor() == -2);
  QuadraticReal g(Rat(1, 2), Rat(1, 2), 5);
  CHECK(g.floor() == 1);
  CHECK(g.compare(Rat(8, 5)) > 0);
  CHECK(g.compare(Rat(13, 8)) < 0);
  CHECK_THROWS_AS(QuadraticReal(0, 1, 12), PreconditionViolation);  // 12 not square-free
}

TEST_CASE("exp_neg_enclosure brackets known values") {
  Enclosure e1 = exp_neg_enclosure(Rat(1), 64);
  // 1/e = 0.3678794411714423...
  CHECK(e1.certainly_gt(parse_fraction("36787944117144232/100000000000000000")));
  CHECK(e1.certainly_lt(parse_fraction("36787944117144233/100000000000000000")));
  Enclosure e10 = exp_neg_enclosure(Rat(10), 64);
  CHECK(e10.certainly_gt(Rat(45, 1000000)));
  CHECK(e10.certainly_lt(Rat(46, 1000000)));
  // huge arguments still give sound tiny enclosures
  Enclosure big = exp_neg_enclosure(Rat(592), 32);
  CHECK(big.hi > 0);
  CHECK(big.certainly_lt(pow2(-800)));
  CHECK(big.lo >= 0);
}

TEST_CASE("Rng determinism and splitting") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng c = Rng(42).split("left"), d = Rng(42).split("left"), e = Rng(42).split("right");
  CHECK(c.next_u64() == d.next_u64());
  CHECK(c.next_u64() != e.next_u64());
}
