#include "dioph/psi.hpp"

#include <algorithm>

namespace dioph {

PsiFunction PsiFunction::power(const Rat& k) {
  if (k <= 0) throw PreconditionViolation("power exponent must be positive");
  PsiFunction f;
  f.kind_ = Kind::Power;
  f.param_ = k;
  return f;
}

PsiFunction PsiFunction::exponential(const Rat& gamma) {
  if (gamma <= 0 || gamma >= 1)
    throw PreconditionViolation("exponential rate must lie in (0, 1)");
  PsiFunction f;
  f.kind_ = Kind::Exponential;
  f.param_ = gamma;
  return f;
}

PsiFunction PsiFunction::table(std::vector<std::pair<Rat, Rat>> points) {
  if (points.size() < 2) throw PreconditionViolation("table needs at least two points");
  std::sort(points.begin(), points.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (size_t i = 0; i + 1 < points.size(); ++i) {
    if (points[i].first == points[i + 1].first)
      throw PreconditionViolation("duplicate table abscissa");
    if (points[i].second <= points[i + 1].second)
      throw PreconditionViolation("table values must strictly decrease");
  }
  for (const auto& [y, v] : points)
    if (v <= 0) throw PreconditionViolation("table values must be positive");
  PsiFunction f;
  f.kind_ = Kind::Table;
  f.table_ = std::move(points);
  return f;
}

bool PsiFunction::exact_on_rationals() const {
  return kind_ == Kind::Table || (kind_ == Kind::Power && param_.get_den() == 1);
}

std::optional<Rat> PsiFunction::exact_at(const Rat& y) const {
  if (kind_ == Kind::Power && param_.get_den() == 1) {
    if (y <= 0) throw PreconditionViolation("psi defined for y > 0");
    return rat_pow(y, -param_.get_num().get_si());
  }
  if (kind_ == Kind::Table) {
    for (const auto& [x, v] : table_)
      if (x == y) return v;
    throw HorizonError("psi table has no entry at y = " + y.get_str());
  }
  return std::nullopt;
}

Enclosure PsiFunction::at(const Rat& y, long bits) const {
  if (y <= 0) throw PreconditionViolation("psi defined for y > 0");
  if (auto v = exact_at(y)) return Enclosure::point(*v);
  if (kind_ == Kind::Power) {
    // y^(-p/q) = (y^-p)^(1/q)
    long p = param_.get_num().get_si();
    long q = param_.get_den().get_si();
    Rat base = rat_pow(y, -p);
    return nth_root_enclosure(base, (int)q, bits);
  }
  return exp_neg_enclosure(param_ * y, bits);
}

bool PsiFunction::decays_faster_than(int r, const Rat& y0, int samples, long bits) const {
  if (kind_ == Kind::Power) return param_ > r;
  if (kind_ == Kind::Exponential) return true;  // beats every power algebraically
  Rat y = y0;
  Enclosure prev = at(y, bits) * rat_pow(y, r);
  for (int i = 0; i < samples; ++i) {
    y = y * 2;
    Enclosure cur;
    try {
      cur = at(y, bits) * rat_pow(y, r);
    } catch (const HorizonError&) {
      return i > 0;  // table exhausted: accept what was seen
    }
    if (!cur.certainly_lt(prev)) return false;
    prev = cur;
  }
  return true;
}

std::string PsiFunction::str() const {
  switch (kind_) {
    case Kind::Power:
      return "power:" + param_.get_str();
    case Kind::Exponential:
      return "exp:" + param_.get_str();
    case Kind::Table:
      return "table[" + std::to_string(table_.size()) + "]";
  }
  return "?";
}

}  // namespace dioph
