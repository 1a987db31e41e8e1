#pragma once

#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "dioph/enclosure.hpp"
#include "dioph/quadratic.hpp"
#include "dioph/rat.hpp"

namespace dioph {

// Refinement contract: at(eps) returns an enclosure of width <= 2*eps that
// contains the represented value; successive calls nest up to their widths.
class EnclosureStream {
 public:
  virtual ~EnclosureStream() = default;
  virtual Enclosure at(const Rat& eps) const = 0;
  virtual std::string describe() const = 0;
};

// Wraps an exact rational (test instrument for soundness checks).
class ExactStream final : public EnclosureStream {
 public:
  explicit ExactStream(Rat v) : v_(std::move(v)) {}
  Enclosure at(const Rat& eps) const override;
  std::string describe() const override { return "exact(" + v_.get_str() + ")"; }

 private:
  Rat v_;
};

// sqrt(q) for rational q > 0, refined on demand.
class SqrtStream final : public EnclosureStream {
 public:
  explicit SqrtStream(Rat q);
  Enclosure at(const Rat& eps) const override;
  std::string describe() const override { return "sqrt(" + q_.get_str() + ")"; }

 private:
  Rat q_;
};

// File of successively tighter "lo hi" rational pairs, one per line.
// Refinement below the tightest line throws PrecisionExhausted.
class FileStream final : public EnclosureStream {
 public:
  explicit FileStream(const std::string& path);
  Enclosure at(const Rat& eps) const override;
  std::string describe() const override { return "stream:" + path_; }

 private:
  std::string path_;
  std::vector<Enclosure> lines_;
};

// A fixed certified box; the represented value is only known to lie inside.
// Refinement below the box width is impossible and throws PrecisionExhausted.
class BoxStream final : public EnclosureStream {
 public:
  explicit BoxStream(Enclosure box, std::string label = "box");
  Enclosure at(const Rat& eps) const override;
  std::string describe() const override;
  const Enclosure& box() const { return box_; }

 private:
  Enclosure box_;
  std::string label_;
};

// Forward declaration; defined after RealScalar.
class RealScalar;

enum class Ordering { LT, GT, EQ, UNDECIDED };

// Exact or enclosure-refinable real scalar.
class RealScalar {
 public:
  using StreamPtr = std::shared_ptr<const EnclosureStream>;

  RealScalar() : v_(Rat(0)) {}
  RealScalar(Rat q) : v_(std::move(q)) {}                 // NOLINT implicit by design
  RealScalar(QuadraticReal q) : v_(std::move(q)) {}       // NOLINT
  explicit RealScalar(StreamPtr s) : v_(std::move(s)) {}

  bool is_rational() const;
  bool is_quadratic() const { return std::holds_alternative<QuadraticReal>(v_); }
  bool is_stream() const { return std::holds_alternative<StreamPtr>(v_); }
  bool is_exact() const { return !is_stream(); }

  const Rat& rational() const { return std::get<Rat>(v_); }
  const QuadraticReal& quadratic() const { return std::get<QuadraticReal>(v_); }
  const EnclosureStream& stream() const { return *std::get<StreamPtr>(v_); }

  // Rational view when the exact value happens to be rational (incl. b = 0 quadratics).
  std::optional<Rat> exact_rational() const;

  Enclosure enclose(const Rat& eps) const;
  Enclosure enclose_bits(long bits) const { return enclose(pow2(-bits)); }

  std::string describe() const;

 private:
  std::variant<Rat, QuadraticReal, StreamPtr> v_;
};

// Default refinement cap for comparisons that have no better context (2^-256).
Rat default_max_precision();

// Certified three-way comparison. LT/GT only when provable. EQ only when both
// operands are exact and equal in a common field. UNDECIDED otherwise at cap.
Ordering compare_certified(const RealScalar& x, const RealScalar& y,
                           const Rat& max_precision = default_max_precision());

struct NearestIntegerResult {
  Enclosure dist;   // enclosure of ||x||
  Int nearest;      // the minimizing integer
};

// ||x||: distance to the nearest integer with the minimizer. Exact half-integers
// throw HalfIntegerTie; undecidable stream cases throw PrecisionExhausted.
NearestIntegerResult dist_to_nearest_integer(const RealScalar& x,
                                             const Rat& precision = default_max_precision());

// Scalar grammar: rat:p/q | dec:1.414213 | quad:(a+b*sqrt(d))/c | stream:<path>
RealScalar parse_scalar(const std::string& text);

// shift + sum of q_i * x_i, refined by distributing the precision budget over
// the terms; exact inputs collapse to exact outputs in lin_comb below.
class LinCombStream final : public EnclosureStream {
 public:
  LinCombStream(std::vector<std::pair<Rat, RealScalar>> terms, Rat shift);
  Enclosure at(const Rat& eps) const override;
  std::string describe() const override;

 private:
  std::vector<std::pair<Rat, RealScalar>> terms_;
  Rat shift_;
};

// Builds shift + sum q_i x_i, staying exact whenever the inputs allow it
// (all rational, or one shared quadratic field).
RealScalar lin_comb(const std::vector<std::pair<Rat, RealScalar>>& terms, const Rat& shift);

}  // namespace dioph
