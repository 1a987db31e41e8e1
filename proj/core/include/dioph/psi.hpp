#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dioph/enclosure.hpp"

namespace dioph {

// Strictly decreasing approximation function: y^-k, exp(-gamma y), or an
// explicit table. Exact on rationals for integer-exponent powers; certified
// enclosures otherwise.
class PsiFunction {
 public:
  enum class Kind { Power, Exponential, Table };

  static PsiFunction power(const Rat& k);
  static PsiFunction exponential(const Rat& gamma);  // gamma in (0, 1)
  static PsiFunction table(std::vector<std::pair<Rat, Rat>> points);

  Kind kind() const { return kind_; }
  const Rat& param() const { return param_; }

  bool exact_on_rationals() const;
  std::optional<Rat> exact_at(const Rat& y) const;
  Enclosure at(const Rat& y, long bits) const;

  // Certified check that psi(y) y^r decreases across the sampled doubling
  // ladder starting at y0 (the o(y^-r) admissibility surrogate for tables;
  // powers are decided algebraically via k > r).
  bool decays_faster_than(int r, const Rat& y0, int samples, long bits) const;

  std::string str() const;

 private:
  Kind kind_ = Kind::Power;
  Rat param_;
  std::vector<std::pair<Rat, Rat>> table_;
};

}  // namespace dioph
