#pragma once

#include "dioph/analysis.hpp"
#include "dioph/enumerate.hpp"

namespace dioph {

struct SteerOptions {
  Rat tol = Rat(1, 4);       // allowed gauge distance of realized from target
  long p_budget_mult = 48;   // scan p' up to this multiple of the current p
  int shortlist = 16;        // remainder-magnitude grid per p'
  Rat max_precision = default_max_precision();
};

struct SteerStep {
  Int p;
  std::vector<Int> a;
  std::vector<Rat> target;
  std::vector<Rat> realized;  // direction of the previous point under the new beta
  Rat gap;                    // f(realized - target)
};

// Rational steering state: beta = a/p whose full f-b.s.a. sequence is exactly
// tau_1 ... tau_(k+1) (the last one the exact hit), with every earlier point's
// direction within tol of its assigned target.
struct SteeringState {
  explicit SteeringState(Norm norm) : f(std::move(norm)), seq(f) {}

  Norm f;
  std::vector<Rat> beta;
  SimultaneousSequence seq;
  std::vector<SteerStep> steps;
  int completed = 0;
  bool exhausted = false;  // candidate budget spent before `count` steps
};

// Direction-steering search: appends `count` points, each re-verified by full
// re-enumeration; requires each target to illuminate 0 on the boundary ball of
// the previously realized direction (checked online, IlluminationViolated).
SteeringState steer(const Norm& f, const std::vector<std::vector<Rat>>& targets, int count,
                    const SteerOptions& opts = {});

struct ConstantSignatureDemo {
  ConstantSignatureDemo() : fstar_seq(Norm::fstar()), sup_seq(Norm::sup(2)) {}

  std::vector<Rat> alpha;
  SimultaneousSequence fstar_seq;
  std::vector<SignatureVector> fstar_signatures;
  SimultaneousSequence sup_seq;
  std::vector<SignatureVector> sup_signatures;
  bool all_positive = false;      // first `count` f*-signatures equal (+,+)
  bool sup_not_constant = false;  // the same alpha alternates under sup
};

// Steers `count` points under the f* norm toward alternating positive-quadrant
// targets and re-verifies independently through the enumerator. A rational
// target's sequence necessarily ends with its exact hit (signature (0,0)), so
// the checked signatures are the maximal nonzero prefix of length `count`.
ConstantSignatureDemo constant_signature_demo(int count, const SteerOptions& opts = {});

struct PrefixStabilityResult {
  Rat epsilon;
  Rat min_slack;   // smallest strict-inequality margin in the enumeration
  Int p_last;      // the exact-hit denominator
  int entries;     // sequence length including the exact hit
};

// Smallest perturbation radius certified to preserve beta's b.s.a. prefix up
// to its second-to-last entry: every rational beta' with sup-distance < epsilon
// keeps each of those entries a b.s.a. (new entries may appear in between).
PrefixStabilityResult prefix_stability(const std::vector<Rat>& beta, const Norm& f);

}  // namespace dioph
