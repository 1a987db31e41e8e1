#include <doctest.h>

#include "dioph/norms.hpp"
#include "dioph/rng.hpp"

using namespace dioph;

namespace {

Rat rand_rat(Rng& rng, long num_mag, long den_max) {
  return make_rat(Int(rng.range(-num_mag, num_mag)), Int(rng.range(1, den_max)));
}

// independent oracle: exhaustive search over the +-3 box
std::pair<std::vector<Int>, GaugeValue> brute_nearest(const Norm& f, const std::vector<Rat>& y) {
  std::vector<long> off(f.dim(), -3);
  std::pair<std::vector<Int>, GaugeValue> best;
  bool have = false;
  while (true) {
    std::vector<Int> a(f.dim());
    std::vector<Rat> diff(f.dim());
    for (int j = 0; j < f.dim(); ++j) {
      auto n = round_nearest_opt(y[j]);
      a[j] = (n ? *n : rat_floor(y[j])) + Int(off[j]);
      diff[j] = y[j] - Rat(a[j]);
    }
    GaugeValue g = f.kind() == NormKind::Euclidean ? GaugeValue::from_sq(f.gauge_sq_rational(diff))
                                                   : GaugeValue::from_exact(f.gauge_rational(diff));
    if (!have || gauge_compare(g, best.second) == Ordering::LT) best = {a, g}, have = true;
    int j = 0;
    while (j < f.dim() && off[j] == 3) off[j++] = -3;
    if (j == f.dim()) break;
    ++off[j];
  }
  return best;
}

}  // namespace

TEST_CASE("fstar gauge values") {
  Norm f = Norm::fstar();
  CHECK(f.gauge_rational({Rat(1), Rat(1)}) == Rat(1, 2));
  CHECK(f.gauge_rational({Rat(0), Rat(0)}) == 0);
  CHECK(f.gauge_rational({Rat(2), Rat(2)}) == 1);
  CHECK(f.gauge_rational({Rat(3, 2), Rat(1, 2)}) == 1);
  CHECK(f.gauge_rational({Rat(7, 4), Rat(5, 4)}) == Rat(3, 4));
  CHECK(f.volume().is_point());
  CHECK(f.volume().lo == 8);
  CHECK(f.nearest_box_radius() == 3);
}

TEST_CASE("sup gauge and parse grammar") {
  Norm s = Norm::parse("sup", 2);
  CHECK(s.gauge_rational({Rat(-3, 7), Rat(2, 7)}) == Rat(3, 7));
  CHECK(s.volume().lo == 4);
  Norm p = Norm::parse("poly:[[1,1,4],[1,-1,1]]", 2);
  CHECK(p.gauge_rational({Rat(1), Rat(1)}) == Rat(1, 2));
  Norm e = Norm::parse("l2", 3);
  CHECK(e.gauge_sq_rational({Rat(1), Rat(2), Rat(2)}) == 9);
  CHECK_THROWS_AS(Norm::parse("poly:fstar", 3), ParseError);
  CHECK_THROWS_AS(Norm::parse("poly:[[1,0,1]]", 2), PreconditionViolation);  // unbounded slab
}

TEST_CASE("exact polytope volumes in dimension 3") {
  Norm cube = Norm::parse("poly:[[1,0,0,1],[0,1,0,1],[0,0,1,1]]", 3);
  CHECK(cube.volume().lo == 8);
  Norm cube2 = Norm::parse("poly:[[1,0,0,1],[0,1,0,1],[0,0,1,1],[1,1,1,3]]", 3);
  CHECK(cube2.volume().lo == 8);  // redundant facet changes nothing
  // image of the cube under a determinant-2 map: volume 8/2 = 4
  Norm sheared = Norm::parse("poly:[[1,1,0,1],[0,1,1,1],[1,0,1,1]]", 3);
  CHECK(sheared.volume().lo == 4);
  Norm hex = Norm::parse("poly:[[1,0,1],[0,1,1],[1,1,1]]", 2);
  CHECK(hex.volume().lo == 3);
}

TEST_CASE("euclidean volume encloses pi") {
  Norm e = Norm::euclidean(2);
  CHECK(e.volume().certainly_gt(Rat(314158, 100000)));
  CHECK(e.volume().certainly_lt(Rat(314160, 100000)));
}

TEST_CASE("gauge homogeneity, symmetry, triangle inequality") {
  Rng rng(11);
  for (const char* spec : {"sup", "poly:fstar", "l2"}) {
    Norm f = Norm::parse(spec, 2);
    for (int i = 0; i < 10000; ++i) {
      std::vector<Rat> x = {rand_rat(rng, 50, 40), rand_rat(rng, 50, 40)};
      std::vector<Rat> y = {rand_rat(rng, 50, 40), rand_rat(rng, 50, 40)};
      Rat t = make_rat(Int(rng.range(0, 30)), Int(rng.range(1, 15)));
      std::vector<Rat> tx = {t * x[0], t * x[1]};
      std::vector<Rat> mx = {-x[0], -x[1]};
      std::vector<Rat> xy = {x[0] + y[0], x[1] + y[1]};
      if (f.kind() == NormKind::Euclidean) {
        Rat fx = f.gauge_sq_rational(x);
        REQUIRE(f.gauge_sq_rational(tx) == t * t * fx);
        REQUIRE(f.gauge_sq_rational(mx) == fx);
        // f(x+y)^2 - f(x)^2 - f(y)^2 <= 2 f(x) f(y), squared to stay rational
        Rat fy = f.gauge_sq_rational(y);
        Rat lhs = f.gauge_sq_rational(xy) - fx - fy;
        REQUIRE((lhs <= 0 || lhs * lhs <= 4 * fx * fy));
      } else {
        Rat fx = f.gauge_rational(x);
        REQUIRE(f.gauge_rational(tx) == t * fx);
        REQUIRE(f.gauge_rational(mx) == fx);
        REQUIRE(f.gauge_rational(xy) <= fx + f.gauge_rational(y));
      }
    }
  }
}

TEST_CASE("nearest_integer_point matches spec examples") {
  Norm s = Norm::sup(2);
  auto r = s.nearest_point_rational({parse_decimal("0.3"), parse_decimal("-0.4")});
  CHECK(r.a == std::vector<Int>{0, 0});
  CHECK(*r.value.exact == Rat(2, 5));
  CHECK_FALSE(r.tie);

  Norm f = Norm::fstar();
  auto q = f.nearest_point_rational({parse_decimal("0.6"), parse_decimal("0.6")});
  CHECK(q.a == std::vector<Int>{1, 1});
  CHECK(*q.value.exact == Rat(1, 5));

  auto t = s.nearest_point_rational({Rat(1, 2), Rat(0)});
  CHECK(t.tie);
}

TEST_CASE("nearest_integer_point agrees with the exhaustive box oracle") {
  Rng rng(12);
  for (const char* spec : {"sup", "poly:fstar", "l2"}) {
    Norm f = Norm::parse(spec, 2);
    int done = 0;
    for (int i = 0; done < 2500; ++i) {
      std::vector<Rat> y = {rand_rat(rng, 400, 97), rand_rat(rng, 400, 97)};
      auto got = f.nearest_point_rational(y);
      if (got.tie) continue;  // ambiguous draws are skipped, not broken
      auto want = brute_nearest(f, y);
      REQUIRE(gauge_compare(got.value, want.second) == Ordering::EQ);
      REQUIRE(got.a == want.first);
      ++done;
    }
  }
}

TEST_CASE("nearest_integer_point over quadratic and stream targets") {
  Norm s = Norm::sup(1);
  std::vector<RealScalar> y = {parse_scalar("quad:(0+1*sqrt(2))/1")};
  auto r = s.nearest_integer_point(y);
  CHECK(r.a == std::vector<Int>{1});
  Norm s2 = Norm::sup(2);
  std::vector<RealScalar> y2 = {RealScalar(std::make_shared<SqrtStream>(Rat(2))),
                                RealScalar(std::make_shared<SqrtStream>(Rat(3)))};
  auto r2 = s2.nearest_integer_point(y2);
  CHECK(r2.a == std::vector<Int>{1, 2});
}

TEST_CASE("illumination on fstar matches the worked example") {
  Norm f = Norm::fstar();
  auto r = f.illuminates({Rat(3, 2), Rat(1, 2)}, {Rat(1, 2), Rat(3, 2)});
  CHECK(r.illuminated);
  std::vector<Rat> z = {Rat(3, 2) + r.witness_lambda * Rat(1, 2),
                        Rat(1, 2) + r.witness_lambda * Rat(3, 2)};
  CHECK(f.gauge_rational(z) < 1);
  // lambda = 1/2 is a valid witness: f*((7/4,5/4)) = 3/4 < 1
  CHECK(f.gauge_rational({Rat(7, 4), Rat(5, 4)}) == Rat(3, 4));

  auto never = f.illuminates({Rat(2), Rat(2)}, {Rat(2), Rat(2)});
  CHECK_FALSE(never.illuminated);

  Norm s1 = Norm::sup(1);
  auto one = s1.illuminates({Rat(1)}, {Rat(-1)});
  CHECK(one.illuminated);

  CHECK_THROWS_AS(f.illuminates({Rat(1), Rat(1)}, {Rat(0), Rat(1)}), PreconditionViolation);
}

TEST_CASE("illumination on the euclidean circle") {
  Norm e = Norm::euclidean(2);
  auto r = e.illuminates({Rat(3, 5), Rat(4, 5)}, {Rat(-1), Rat(0)});
  CHECK(r.illuminated);
  auto no = e.illuminates({Rat(3, 5), Rat(4, 5)}, {Rat(4, 5), Rat(-3, 5)});
  CHECK_FALSE(no.illuminated);  // tangent direction never enters
}

TEST_CASE("sup-norm illumination equals strict sign change on maximal coordinates") {
  // For the cube, 0 on the boundary of B(theta) is illuminated from theta'
  // exactly when every coordinate of theta with |theta_j| = 1 sees a strict
  // sign flip in theta'.
  Rng rng(13);
  Norm s = Norm::sup(2);
  int done = 0;
  for (int i = 0; done < 4000; ++i) {
    std::vector<Rat> theta = {rand_rat(rng, 30, 30), rand_rat(rng, 30, 30)};
    int fix = (int)rng.below(2);
    theta[fix] = rng.coin() ? Rat(1) : Rat(-1);
    if (rat_abs(theta[1 - fix]) > 1) continue;
    std::vector<Rat> tp = {rand_rat(rng, 20, 10), rand_rat(rng, 20, 10)};
    bool expect = true;
    for (int j = 0; j < 2; ++j)
      if (rat_abs(theta[j]) == 1 && !(sgn(tp[j]) * sgn(theta[j]) < 0)) expect = false;
    auto r = s.illuminates(theta, tp);
    REQUIRE(r.illuminated == expect);
    ++done;
  }
}

TEST_CASE("minkowski bound checker") {
  Norm s = Norm::sup(2);
  // f^2 * p <= 2^2 / 4 = 1
  CHECK(s.minkowski_bound_holds(GaugeValue::from_exact(Rat(1, 10)), Int(99)));
  CHECK_FALSE(s.minkowski_bound_holds(GaugeValue::from_exact(Rat(1, 10)), Int(101)));
  Norm f = Norm::fstar();
  // budget 2^2 / 8 = 1/2
  CHECK(f.minkowski_bound_holds(GaugeValue::from_exact(Rat(1, 10)), Int(50)));
  CHECK_FALSE(f.minkowski_bound_holds(GaugeValue::from_exact(Rat(1, 10)), Int(51)));
}
