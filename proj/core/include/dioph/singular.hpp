#pragma once

#include "dioph/psi.hpp"
#include "dioph/real.hpp"
#include "dioph/sequences.hpp"

namespace dioph {

// Perturbation-proof coefficient schedule sigma_{j,nu} = sigma * (nu_*)^j with
// nu_* = ((nu - 1) mod r) + 1.
struct SingularSchedule {
  int r = 2;
  Rat sigma = 8;

  Rat sigma_at(int j, long nu) const {
    long nu_star = ((nu % r) + r) % r;
    if (nu_star == 0) nu_star = r;
    Rat s = sigma;
    for (int i = 0; i < j; ++i) s *= nu_star;
    return s;
  }
  Rat W() const {
    Rat s = sigma;
    for (int i = 0; i < r; ++i) s *= r;
    return s;
  }
};

// Smallest power-of-two sigma whose schedule determinant, perturbed by any
// eta in [-1,1]^(r x r), provably avoids zero for every window parity.
Rat sigma_calibrate(int r);

// Interval determinant of the perturbed schedule window starting at nu
// (exposed for tests of the calibration certificate).
Enclosure schedule_det_interval(const SingularSchedule& s, long nu);

struct SingularLevel {
  long nu = 0;
  Int p;
  std::vector<Int> a;
  // Certified inner sub-intervals of the construction windows: any alpha with
  // alpha_j in delta[j] satisfies condition (i) at this level exactly.
  std::vector<Enclosure> delta;
  // A pinned level carries the row and its placement-window membership only
  // (psi at its own p is beyond the representable range).
  bool pinned = false;
};

struct SingularCertificate {
  int r = 2;
  PsiFunction psi = PsiFunction::power(3);
  SingularSchedule schedule;
  std::vector<std::vector<int>> lambda_bits;  // per transition, j = 2..r choice bits
  std::vector<SingularLevel> levels;          // nu = 0 .. depth
  std::vector<Enclosure> box;                 // final certified box per coordinate
  long psi_bits = 128;

  int depth() const { return (int)levels.size() - 1; }
  std::vector<RealScalar> box_targets() const;
  std::vector<Rat> box_midpoint() const;

  // Re-derives every stored inequality (conditions (i)/(ii), nesting,
  // distinctness, window membership) from raw endpoints; throws on failure.
  void revalidate() const;
};

struct SingularBuildOptions {
  Int p0 = 2;
  std::vector<Int> a0;                        // defaults to zeros
  std::vector<std::vector<int>> lambda_bits;  // defaults to zeros
  long bit_cap = 1l << 20;                    // denominator size cap -> DepthOverflow
  bool allow_pinned_final = false;
  long box_shrink_bits = 0;  // 0 = keep the full final interval
};

// Lemma-style recursive construction: p_{nu+1} = floor(6 p_nu / psi(p_nu)) + 1
// with the two sixth-subdivision placement windows per coordinate.
SingularCertificate singular_build(int r, const PsiFunction& psi, const SingularSchedule& schedule,
                                   int depth, const SingularBuildOptions& opts = {});

// --- verification -----------------------------------------------------------

struct SingularWitness {
  std::vector<Int> coeffs;  // (m_1..m_r) of the linear form
  Int size;                 // max |m_j|
  Enclosure value;          // certified || m . alpha || upper/lower bounds
  std::string origin;       // "level nu" or "window nu"
};

struct VerifyEntry {
  Rat T;
  bool witness_found = false;
  SingularWitness witness;
  bool plain_psi_ok = false;  // value < psi(T) (reported; usually false at T = p_nu)
};

struct VerifyReport {
  bool certificate_valid = false;
  std::vector<VerifyEntry> entries;
  bool all_found = true;
  // informational eq-(n3)-style check on the box midpoint enumeration:
  // zeta_nu <= psi(M_(nu+1)) and zeta_nu <= psi(M_(nu+r-1)) where reachable
  std::vector<int> n3_ok;        // -1 unreachable, 0 fail, 1 pass
  std::vector<int> n3x_ok;
  Int midpoint_bound;
};

// For each T: searches the certificate's witness pool (level rows and window
// cofactor vectors) for coefficients <= T with certified value < (W+1) psi(T).
// The certified levels T = p_nu always admit the level witness itself.
VerifyReport verify_singularity(const SingularCertificate& cert, const std::vector<Rat>& T_range,
                                const Int& midpoint_bound = 0);

struct DeterminantWitness {
  long nu;                 // window start level
  Enclosure value;         // |det(1,alpha; rows nu..nu+r-1)|, certified nonzero
  Enclosure product_band;  // prod psi(p_mu) * [band_lo, band_hi]
  std::vector<Int> cofactors;  // the linear-form coefficients n_{j}
  Int cofactor_bound;          // certified bound from conditions (i)/(ii)
  bool cofactors_ok;
};

// Lemma-1.2 determinant values for every window of r consecutive levels.
std::vector<DeterminantWitness> determinant_witness(const SingularCertificate& cert);

}  // namespace dioph
