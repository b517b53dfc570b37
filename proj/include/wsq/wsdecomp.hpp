#pragma once

#include "wsq/jsa.hpp"
#include "wsq/matcalc.hpp"

namespace wsq {

/// Whittaker-Shannon mode chi_n(t) = sinc(pi (t - n tau)/tau) / sqrt(tau).
double ws_mode(int n, double tau, double t);

struct WindowSpec {
  double t_J = 0.0;
  int d_J = 1;
  int n_J = 0;

  IndexRange indices() const { return {n_J - (d_J - 1) / 2, n_J + d_J / 2}; }
};

/// n_J is t_J/tau rounded half away from zero.
WindowSpec make_window(double t_J, int d_J, double tau);

/// The same window on a k-times oversampled grid: n_J -> k n_J, d_J -> k d_J.
WindowSpec refine_window(const WindowSpec& coarse, int k);

struct WindowPartition {
  CMatrix betaJ;
  IndexRange range;
  double neglected_mass = 0.0;
};

/// d_J x d_J block of beta on the window indices. neglected_mass is the share
/// of |beta|^2 in the window rows/columns that falls outside the block.
WindowPartition window_partition(const BetaMatrix& beta, const WindowSpec& spec);

/// Same block selection for any matrix laid out on the index range of `beta`.
CMatrix window_block(const CMatrix& m, int first_index, const IndexRange& window);

struct CovarianceValue {
  cplx N{0.0, 0.0};   // Nd (degenerate) or Na (nondegenerate)
  cplx Nb{0.0, 0.0};  // nondegenerate only
  cplx M{0.0, 0.0};   // Md or Mab
};

/// Continuous-time covariance functions N(t,t2) and M(t,t2) from the moment
/// matrices. Sinc tails beyond 200 tau from t are dropped.
CovarianceValue covariance(const MomentSet& moments, const SamplingGrid& grid, double t, double t2);

/// N_J = tr sinh^2 Q.
double pair_count(const CMatrix& betaJ);

struct TwoPhotonAmplitudes {
  CMatrix amps;  // T / sqrt(norm), unit Frobenius norm
  double norm = 0.0;
  double prefactor = 1.0;  // det W
};

TwoPhotonAmplitudes two_photon_amplitudes(const CMatrix& betaJ);

struct WindowedBeta {
  SamplingGrid grid;  // working (possibly oversampled) grid
  BetaMatrix beta;    // beta on the whole working grid
  WindowPartition part;
};

/// Samples beta for a model and cuts out a window. The window is given on the
/// minimal-bandlimit grid and refined by k. Pulsed models without a window use
/// the whole pulse; their grid is widened when the window reaches past +-4 T_p.
/// CW models need a window and are sampled on exactly the window indices,
/// which is the partition of the Toeplitz kernel.
WindowedBeta windowed_beta(const JointAmplitude& model, cplx beta_circ, BandlimitPreset preset, int k,
                           const std::optional<WindowSpec>& coarse_window);

}  // namespace wsq
