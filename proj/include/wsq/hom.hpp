#pragma once

#include <optional>
#include <vector>

#include "wsq/jsa.hpp"
#include "wsq/parallel.hpp"
#include "wsq/wsdecomp.hpp"

namespace wsq {

struct ShiftedT {
  CMatrix T;
  double dropped_mass = 0.0;  // share of |T|^2 shifted out of range
};

/// Column shift T'_{n,m} = T_{n,m+q}; entries shifted in from outside are zero.
/// Throws ExcessiveShift if more than max_dropped of the squared mass is lost.
ShiftedT shift_T(const CMatrix& T, int q, double max_dropped = 1e-6);

/// Coincidence probability behind a 50:50 beam splitter for the (already
/// shifted and partitioned) disentangled matrix:
/// P = 1 + detW^2 (1 - 2 det(I - lambda^dag lambda)^(-1/2)), lambda = (T + T^T)/2.
double hom_probability(const CMatrix& TshiftJ, double detWJ);

/// Large-delay limit for a finite pulse: 1 + detW^2 (1 - 2 / det(I - tanh^2 Q / 4)).
/// Throws CWNotSupported if beta does not decay inside its grid.
double hom_max(const CMatrix& beta, double detW);

enum class PmaxSource { ClosedForm, Plateau, CurveMaximum };

struct HomCurve {
  std::vector<int> shifts;      // q, in units of the working tau
  std::vector<double> delays;   // tau_H = q tau
  std::vector<double> probs;
  double p_min = 0.0;
  double p_max = 0.0;
  double visibility = 0.0;
  PmaxSource p_max_source = PmaxSource::ClosedForm;
  double tau = 1.0;

  std::vector<double> normalized() const;
};

/// Finds the plateau of a curve: |relative slope| < 1e-4 over 5 consecutive
/// points at either end. Returns nullopt when no plateau is found.
std::optional<double> curve_plateau(const std::vector<double>& probs);

struct HomSetup {
  JointAmplitude model;
  cplx beta_circ{0.1, 0.0};
  std::optional<WindowSpec> window;  // minimal-bandlimit indices; required for CW models
  int oversample_k = 1;
  IndexRange q_range{0, 0};  // shifts in units of the working tau
  int q_step = 1;
  BandlimitPreset preset = BandlimitPreset::Minimal;
};

HomCurve hom_dip_curve(const HomSetup& setup, Execution exec = Execution::Parallel);

/// Convenience for the common call pattern.
HomCurve hom_dip_curve(const JointAmplitude& model, cplx beta_circ, const std::optional<WindowSpec>& window,
                       int oversample_k, IndexRange q_range, BandlimitPreset preset = BandlimitPreset::Minimal,
                       Execution exec = Execution::Parallel);

}  // namespace wsq
