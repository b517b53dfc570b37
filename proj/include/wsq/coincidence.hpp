#pragma once

#include <vector>

#include "wsq/linalg.hpp"
#include "wsq/parallel.hpp"

namespace wsq {

struct DetectorModel {
  double alpha = 1.0;
  int s_max = 40;
  double tail_tol = 1e-10;

  void validate() const;
};

/// D_x = 1 - (1 - alpha)^x.
double detection_prob(int x, double alpha);

/// Multiplicity vectors q with sum_u u q_u = s; q[u] is the multiplicity of
/// part u (q[0] unused). Results are cached per s.
const std::vector<std::vector<int>>& integer_partitions(int s);

struct PairDistribution {
  std::vector<double> probs;  // P_s for s = 0..s_max
  double truncation_mass = 0.0;

  double mean() const;
};

/// P_s by the explicit partition sum over {q_u} |- s. Products are taken in
/// log space above s = 20.
double pair_probability(const CMatrix& betaJ, int s);

/// Same sum from the eigenvalues x_i = tanh^2 s_i and det W.
double pair_probability(const RVector& x, double detW, int s);

/// P_0..P_s_max via s P_s = sum_u p_u P_{s-u}, p_u = tr (tanh^2 Q)^u.
/// This is the partition sum reorganized as a recurrence.
PairDistribution pair_distribution(const CMatrix& betaJ, int s_max);
PairDistribution pair_distribution(const RVector& x, double detW, int s_max);

struct CoincidenceProbs {
  double P_HH = 0.0;
  double P_HV = 0.0;
  double truncation_mass = 0.0;
};

/// P_HH = sum D_s^2 P_s, P_HV = (sum D_s P_s)^2. Throws TruncationFailure if the
/// mass beyond s_max exceeds tail_tol.
CoincidenceProbs coincidence_probs(const CMatrix& betaJ, const DetectorModel& det);

/// Two polarizations with separate amplitudes: P_HH uses the H window only,
/// P_HV = (sum D_s P^H_s)(sum D_s P^V_s).
CoincidenceProbs coincidence_probs(const CMatrix& betaH, const CMatrix& betaV, const DetectorModel& det);

CoincidenceProbs coincidence_probs(const PairDistribution& dist, double alpha);

/// Low-efficiency limit: P_HH = alpha^2 (N + N^2 + tr sinh^4 Q), P_HV = alpha^2 N^2.
CoincidenceProbs small_alpha_probs(const CMatrix& betaJ, double alpha);

struct WeakWindowProbs {
  double P_HH = 0.0;
  double P_HV = 0.0;
  bool outside_weak_regime = false;  // N_J > 0.1
};

/// Single-pair-window expansion to second order in N_J, valid for any alpha.
WeakWindowProbs weak_window_probs(double N_J, double alpha);

double visibility(double P_HH, double P_HV);

struct VisibilityRow {
  double beta_circ;
  double alpha;
  double N_J;
  double P_HH;
  double P_HV;
  double visibility;
  double small_alpha_visibility;  // from the closed form, NaN when alpha = 1
  double residual;                // |V_exact - V_closed_form|
};

/// Exact and closed-form visibilities for every (beta_circ, alpha) pair on a
/// fixed normalized window kernel r. Rows are ordered beta_circ-major.
std::vector<VisibilityRow> visibility_sweep(const CMatrix& r, const std::vector<double>& beta_circs,
                                            const std::vector<double>& alphas, int s_max,
                                            double tail_tol, Execution exec = Execution::Parallel);

}  // namespace wsq
