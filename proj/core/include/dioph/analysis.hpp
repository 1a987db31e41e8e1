#pragma once

#include "dioph/mat.hpp"
#include "dioph/sequences.hpp"

namespace dioph {

// Determinant of the (r+1) x (r+1) matrix of consecutive linear-form best
// approximations m_nu ... m_(nu+r) (1-based nu into the entry list).
Int delta_det(const LinearFormSequence& seq, int nu);

// Exact rank of the (s+1)-row window starting at entry nu (1-based).
int window_rank(const LinearFormSequence& seq, int nu, int s);
int window_rank(const SimultaneousSequence& seq, int nu, int s);

// Dimension of the integer span of all entries with index >= from_nu.
// A finite-horizon observation (an upper-bound certificate for R(alpha) at
// this horizon), never a claim about the infinite tail.
int tail_lattice_dim(const LinearFormSequence& seq, int from_nu);
int tail_lattice_dim(const SimultaneousSequence& seq, int from_nu);

// Componentwise exact signs of the remainder vectors; 0 marks an exactly zero
// component. Throws PrecisionExhausted for stream targets that cannot be
// sign-certified at the cap.
using SignatureVector = std::vector<int>;
std::vector<SignatureVector> signature_sequence(const SimultaneousSequence& seq,
                                                const Rat& max_precision = default_max_precision());

// A sequence is flagged before Rogers checks when a zero component occurs.
bool has_zero_signature_component(const std::vector<SignatureVector>& sigs);

// Certified check of f(xi_(nu+1) - xi_nu) >= f(xi_nu) for each consecutive
// pair; the per-pair verdicts must all be true for sequences produced by the
// enumerators.
std::vector<bool> no_interior_check(const SimultaneousSequence& seq,
                                    const Rat& max_precision = default_max_precision());

// Indices j (1-based entry index) with Xi_(j+1) provably outside
// B_f^(1+delta)(Xi_j), i.e. f(Xi_(j+1) - Xi_j) > 1 + delta.
std::vector<int> separation_scan(const SimultaneousSequence& seq, const Rat& delta,
                                 const Rat& max_precision = default_max_precision());

struct GrowthSeries {
  std::vector<std::pair<int, Enclosure>> points;  // (nu, f(xi_nu) * p_(nu+1))
  int doubling_h = 0;                             // 2^(n+1)
  std::vector<bool> doubling_ok;                  // p_(nu+h) >= 2 p_nu per valid nu
  bool doubling_all = true;
  // empirical badness constant inf_nu p_nu^(1/n) f(xi_nu)
  int badness_argmin = 0;   // nu attaining the infimum (0 when empty)
  Enclosure badness_value;  // enclosure of the attained p^(1/n) f
};

GrowthSeries growth_and_doubling(const SimultaneousSequence& seq,
                                 const Rat& max_precision = default_max_precision());

struct AsymptoticCluster {
  int founder;                    // entry index whose direction seeds the cluster
  std::vector<int> members;       // entry indices, founder included
  std::vector<Enclosure> rep;     // representative direction, per coordinate
};

struct AsymptoticSet {
  Rat eps;
  int burn_in;
  std::vector<AsymptoticCluster> clusters;
};

// Greedy clustering of the directions {Xi_nu : nu >= burn_in} at gauge radius
// eps, deterministic in index order: the first unmatched point founds the next
// cluster, later points join the earliest cluster within eps.
AsymptoticSet asymptotic_directions(const SimultaneousSequence& seq, const Rat& eps, int burn_in,
                                    const Rat& max_precision = default_max_precision());

// f(Xi_b - Xi_a) > t certified (used by the scans above; exposed for tests).
// Returns LT/GT/EQ of f(Xi_b - Xi_a) versus t, UNDECIDED only for streams at
// the cap.
Ordering compare_direction_gap(const SimultaneousSequence& seq, int ia, int ib, const Rat& t,
                               const Rat& max_precision = default_max_precision());

}  // namespace dioph
