#pragma once

#include "dioph/sequences.hpp"

namespace dioph {

struct EnumerateOptions {
  Rat max_precision = default_max_precision();
};

// First k continued-fraction convergents p_i/q_i of alpha. Rational targets
// may terminate earlier; the full finite list is returned then.
std::vector<std::pair<Int, Int>> cf_convergents(const RealScalar& alpha, int k,
                                                const Rat& max_precision = default_max_precision());

// Best approximations in the sense of linear form, levels M = 1..up_to_M.
// Throws RationalDependence (with witness) when the form vanishes exactly,
// PrecisionExhausted when a needed comparison cannot be certified.
LinearFormSequence best_linear_form(const std::vector<RealScalar>& alpha, const Int& up_to_M,
                                    const EnumerateOptions& opts = {});

// Definitionally exhaustive oracle: scans every canonical integer vector with
// no pruning and applies the strict-minimum definition literally.
LinearFormSequence brute_force_oracle_lf(const std::vector<RealScalar>& alpha, const Int& up_to_M,
                                         const EnumerateOptions& opts = {});

// f-best simultaneous approximations with denominators p = 1..up_to_p.
// An exact hit f(p alpha - a) = 0 finishes the (flagged) sequence.
SimultaneousSequence best_simultaneous(const std::vector<RealScalar>& alpha, const Norm& f,
                                       const Int& up_to_p, const EnumerateOptions& opts = {});

SimultaneousSequence brute_force_oracle_sim(const std::vector<RealScalar>& alpha, const Norm& f,
                                            const Int& up_to_p, const EnumerateOptions& opts = {});

}  // namespace dioph
