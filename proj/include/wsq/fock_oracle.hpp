#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "wsq/coincidence.hpp"
#include "wsq/linalg.hpp"
#include "wsq/matcalc.hpp"

namespace wsq {

/// Brute-force squeezed vacuum on a truncated multimode number basis.
///
/// Modes are ordered signal 0..ns-1 then idler 0..ni-1 (the degenerate regime
/// has no idler modes). Each mode holds 0..cutoff photons plus guard levels
/// above it (one, or two in the degenerate case where photons enter a mode in
/// pairs). The population found on guard levels is reported as leakage and
/// removed from `amplitudes`, so |amplitudes|^2 + leakage = 1. Only the sector
/// reachable from vacuum is stored (equal signal and idler totals, or even
/// total photon number in the degenerate case).
struct FockState {
  Regime regime = Regime::Nondegenerate;
  int n_signal = 0;
  int n_idler = 0;
  int cutoff = 0;
  std::vector<std::uint8_t> occupations;  // basis_size x modes, row major
  CVector amplitudes;
  double leakage = 0.0;
  std::unordered_map<std::uint64_t, int> index;

  int modes() const { return n_signal + n_idler; }
  int levels() const { return cutoff + (regime == Regime::Degenerate ? 3 : 2); }
  int basis_size() const { return static_cast<int>(amplitudes.size()); }
  const std::uint8_t* occ(int i) const { return occupations.data() + static_cast<std::size_t>(i) * modes(); }
  std::uint64_t key(const std::uint8_t* occ) const;
  int find(const std::uint8_t* occ) const;  // -1 when not in the basis
};

/// exp(sum beta_nm A_n^dag B_m^dag - h.c.)|vac> (nondegenerate) or
/// exp(1/2 sum beta_nm A_n^dag A_m^dag - h.c.)|vac> (degenerate, symmetric beta).
/// Throws LeakageExceeded if the guard-level population exceeds leakage_tol.
FockState build_squeezed_state(const CMatrix& beta, int cutoff, Regime regime = Regime::Nondegenerate,
                               double leakage_tol = 1e-8);

/// <vac|state>.
cplx oracle_vacuum_amplitude(const FockState& state);

MomentSet oracle_moments(const FockState& state);

struct OraclePairResult {
  PairDistribution dist;
  double projector_error = 0.0;  // orthogonality and completeness defect
};

/// Projections onto total-signal-number-s subspaces.
OraclePairResult oracle_pair_probs(const FockState& state, int s_max);

/// HOM coincidence probability: idler modes relabelled m -> m - q, 50:50 beam
/// splitter at every position, P = 1 - p(vac_c) - p(vac_d) + p(vac_c, vac_d).
/// grid_modes is the number of positions available; it must hold the union of
/// signal and shifted idler positions.
double oracle_hom(const FockState& state, int q, int grid_modes);

/// Vacuum-normalized variance of sum_j xi_j^* A_j + h.c. (degenerate state).
double oracle_quadrature_variance(const FockState& state, const CVector& lo_coeffs);

}  // namespace wsq
