#pragma once

#include <optional>
#include <string>

#include "wsq/linalg.hpp"

namespace wsq {

enum class AmplitudeKind { DoubleGaussianPulsed, DoubleGaussianCW, TabulatedSymmetric };

/// Samples of a symmetric joint temporal amplitude on a square grid with
/// spacing `step`; row/column 0 sits at time first_index*step.
struct TabulatedAmplitude {
  CMatrix samples;
  double step = 1.0;
  int first_index = 0;
};

/// Parametric joint temporal amplitude gamma(t1, t2).
///
/// The double-Gaussian kinds are fully described by the pulse duration and
/// the coherence time. The CW kind drops the 1/sqrt(Tp Tc) prefactor and
/// has unit peak value, since only the normalized samples r_nm survive the
/// Tp -> infinity limit. Tabulated amplitudes are reconstructed between their
/// samples by Whittaker-Shannon (sinc) interpolation.
struct JointAmplitude {
  AmplitudeKind kind = AmplitudeKind::DoubleGaussianPulsed;
  double pulse_duration = 1.0;  // T_p, ignored for CW
  double coherence_time = 1.0;  // T_c
  bool symmetric = true;
  std::optional<TabulatedAmplitude> table;

  bool is_cw() const { return kind == AmplitudeKind::DoubleGaussianCW; }
  void validate() const;
};

JointAmplitude double_gaussian_pulsed(double pulse_duration, double coherence_time);
JointAmplitude double_gaussian_cw(double coherence_time);
JointAmplitude tabulated_symmetric(TabulatedAmplitude table, double coherence_time);

enum class BandlimitPreset {
  Minimal,          // Omega = 2 pi / T_c, tau = T_c
  GaussianCaption,  // Omega = 2 sqrt(pi) / T_c, tau = sqrt(pi) T_c
};

struct IndexRange {
  int lo = 0;
  int hi = 0;

  int size() const { return hi - lo + 1; }
  bool contains(int n) const { return n >= lo && n <= hi; }
  bool contains(const IndexRange& other) const { return other.lo >= lo && other.hi <= hi; }
};

/// Whittaker-Shannon sampling grid: t_n = n * tau for n in `range`.
struct SamplingGrid {
  double tau = 1.0;
  double omega = 2.0 * kPi;  // bandlimit, tau = 2 pi / omega
  int oversample_factor = 1;
  IndexRange range;

  double time(int n) const { return n * tau; }
};

SamplingGrid make_grid(double tau, IndexRange range, int oversample_factor = 1);

/// Minimal-bandlimit grid for a model. Pulsed models default to |n tau| <= 4 T_p;
/// CW models have no natural extent and use `cw_half_width` indices either side.
SamplingGrid minimal_grid(const JointAmplitude& model,
                          BandlimitPreset preset = BandlimitPreset::Minimal,
                          std::optional<IndexRange> range = std::nullopt, int cw_half_width = 30);

cplx evaluate_jta(const JointAmplitude& model, double t1, double t2);

/// Joint spectral amplitude. For the CW kind only the difference-frequency
/// factor is returned (the sum-frequency factor collapses to a delta).
cplx evaluate_jsa(const JointAmplitude& model, double w1, double w2);

/// r_nm = gamma(n tau, m tau) / max |gamma| over the sampled window.
CMatrix sample_r_matrix(const JointAmplitude& model, const SamplingGrid& grid);

struct BetaMatrix {
  CMatrix values;
  cplx beta_circ{0.0, 0.0};
  int first_index = 0;  // grid index of row/column 0
  double tau = 1.0;

  int size() const { return static_cast<int>(values.rows()); }
  IndexRange range() const { return {first_index, first_index + size() - 1}; }
};

BetaMatrix beta_matrix(const CMatrix& r, cplx beta_circ, const SamplingGrid& grid);
BetaMatrix beta_matrix(const CMatrix& r, cplx beta_circ);

struct OversampleResult {
  SamplingGrid grid;
  double beta_circ_scale = 1.0;  // beta_circ on the fine grid = scale * coarse beta_circ
  std::string note;
};

/// Raise the bandlimit by an integer factor k: Omega' = k Omega, tau' = tau/k,
/// index range scaled by k. Because beta_nm = beta tau gamma(n tau, m tau),
/// the fine-grid beta_circ is the coarse one divided by k.
OversampleResult oversample(const JointAmplitude& model, const SamplingGrid& grid, int k);

/// Convenience: fine-grid BetaMatrix for a coarse-grid beta_circ.
BetaMatrix sample_beta(const JointAmplitude& model, const SamplingGrid& coarse, cplx beta_circ,
                       int k = 1);

}  // namespace wsq
