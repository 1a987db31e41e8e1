#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dioph/enclosure.hpp"
#include "dioph/quadratic.hpp"
#include "dioph/real.hpp"

namespace dioph {

enum class NormKind { Sup, Euclidean, Polytope };

// One slab |<c, x>| <= d of a polytope unit ball.
struct Facet {
  std::vector<Rat> c;
  Rat d;
};

// Gauge value carrying the tightest exact form the input admitted. At most one
// of the exact fields is engaged; `enc` is always a valid enclosure.
struct GaugeValue {
  std::optional<Rat> exact;              // f(x) rational
  std::optional<QuadraticReal> exact_quad;
  std::optional<Rat> sq;                 // f(x)^2 rational (Euclidean on rational x)
  std::optional<QuadraticReal> sq_quad;  // f(x)^2 in Q(sqrt d)
  Enclosure enc;

  bool is_exact() const { return exact || exact_quad || sq || sq_quad; }
  bool is_zero() const;

  static GaugeValue from_exact(const Rat& v, long bits = 64);
  static GaugeValue from_exact_quad(const QuadraticReal& v, long bits = 64);
  static GaugeValue from_sq(const Rat& s, long bits = 64);
  static GaugeValue from_sq_quad(const QuadraticReal& s, long bits = 64);
  static GaugeValue from_enclosure(const Enclosure& e);

  std::string str() const;
};

// Certified comparison; UNDECIDED only when an enclosure-only operand overlaps.
Ordering gauge_compare(const GaugeValue& a, const GaugeValue& b);

struct NearestPointResult {
  std::vector<Int> a;
  GaugeValue value;
  bool tie = false;
  std::vector<Int> tie_with;  // a second minimizer when tie
};

struct IlluminationResult {
  bool illuminated = false;
  Rat witness_lambda = 0;  // valid when illuminated
};

// Convex O-symmetric gauge: sup cube, Euclidean ball, or rational polytope.
class Norm {
 public:
  static Norm sup(int dim);
  static Norm euclidean(int dim);
  static Norm polytope(int dim, std::vector<Facet> facets);
  static Norm fstar();  // 2-D parallelogram |x1+x2| <= 4, |x1-x2| <= 1
  // Grammar: sup | l2 | poly:fstar | poly:[[c11,c12,...,d1],...]
  static Norm parse(const std::string& text, int dim);

  int dim() const { return dim_; }
  NormKind kind() const { return kind_; }
  bool strictly_convex() const { return kind_ == NormKind::Euclidean; }
  const std::string& spec_text() const { return spec_; }
  const std::vector<Facet>& facets() const { return facets_; }

  // Exact gauge on rational points; Euclidean reports f^2.
  Rat gauge_rational(const std::vector<Rat>& x) const;
  Rat gauge_sq_rational(const std::vector<Rat>& x) const;

  Enclosure gauge_enclosure(const std::vector<Enclosure>& x, long bits) const;

  GaugeValue gauge(const std::vector<RealScalar>& x,
                   const Rat& eps = default_max_precision()) const;

  // Minimizes f(y - a) over integer vectors; complete by the norm-equivalence
  // box bound. Ties are reported, not broken.
  NearestPointResult nearest_integer_point(const std::vector<RealScalar>& y,
                                           const Rat& eps = default_max_precision()) const;
  NearestPointResult nearest_point_rational(const std::vector<Rat>& y) const;

  // Ring search with early cutoff: nullopt when the minimum provably reaches
  // or exceeds stop_above (used by enumerators to skip hopeless p).
  std::optional<NearestPointResult> nearest_below_rational(
      const std::vector<Rat>& y, const std::optional<Rat>& stop_above) const;

  // True iff 0, as a boundary point of B_f^1(theta), is illuminated from
  // theta_prime: exists lambda > 0 with f(theta + lambda*theta_prime) < 1.
  // Pre: gauge(theta) = 1 exactly.
  IlluminationResult illuminates(const std::vector<Rat>& theta,
                                 const std::vector<Rat>& theta_prime) const;

  // Volume of the unit ball; exact point for sup and polytope with dim <= 3.
  Enclosure volume() const;

  // Certified check of f(xi) <= C1(f) p^(-1/n), C1 = 2 / Vol^(1/n), via
  // f^n * p <= 2^n / Vol. Throws PrecisionExhausted if the volume enclosure
  // cannot decide (never for exact volumes).
  bool minkowski_bound_holds(const GaugeValue& fxi, const Int& p_next) const;

  // Search-box radius around coordinatewise rounding that provably contains
  // every minimizer of f(y - a).
  long nearest_box_radius() const { return box_radius_; }

  // Certified upper bound on max{f(x) : ||x||_inf <= 1}; f is Lipschitz with
  // this constant against the sup norm.
  const Rat& sup_lipschitz() const { return rf_up_; }

  // Unit-ball vertices in cyclic order (dim 2 only; for SVG and tests).
  const std::vector<std::vector<Rat>>& vertices2() const;

 private:
  Norm() = default;
  void finish_geometry();

  NormKind kind_ = NormKind::Sup;
  int dim_ = 0;
  std::vector<Facet> facets_;  // engaged for Polytope
  std::string spec_;
  long box_radius_ = 1;
  Rat Rf_ = 1;     // max sup-norm over the unit ball (certified upper bound)
  Rat rf_up_ = 1;  // max gauge over the sup unit ball (certified upper bound)
  Enclosure volume_;
  std::vector<std::vector<Rat>> verts2_;
};

}  // namespace dioph
