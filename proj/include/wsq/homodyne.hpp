#pragma once

#include <vector>

#include "wsq/jsa.hpp"
#include "wsq/matcalc.hpp"
#include "wsq/parallel.hpp"

namespace wsq {

/// Time-averaged CW homodyne variance for one window. The matrix functions of
/// beta^J are computed once at construction and reused across (theta, omega).
class CwSpectrum {
 public:
  CwSpectrum(const CMatrix& betaJ, const SamplingGrid& grid);

  /// sigma^2(theta, omega), vacuum-normalized. Throws OmegaOutOfBand for
  /// |omega| >= Omega/2.
  double variance(double theta, double omega) const;

  int window_size() const { return static_cast<int>(sinh2_.rows()); }

 private:
  CMatrix sinh2_;
  CMatrix sc_;  // sinh Q cosh Q U
  SamplingGrid grid_;
};

double cw_variance_spectrum(const CMatrix& betaJ, double theta, double omega, const SamplingGrid& grid);

struct ChargeVarianceResult {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double sigma2_min = 1.0;
  double sigma2_max = 1.0;
  RVector phi_min;  // [phi_R; phi_I]
  RVector phi_max;
  bool degenerate_min = false;  // eigenvalue not separated from its neighbour
  bool degenerate_max = false;
  int first_index = 0;

  /// LO coefficients xi_j = phi_R,j + i phi_I,j.
  CVector lo_coefficients(bool minimum = true) const;
};

/// Real block matrix K = [[N_R + M_R, N_I + M_I], [M_I - N_I, N_R - M_R]].
RMatrix charge_block_matrix(const MomentSet& m);

ChargeVarianceResult charge_variance_extrema(const MomentSet& m);

/// Variance of the quadrature sum_j xi_j^* A_j + h.c. for unit-norm xi,
/// evaluated directly from the moments: 1 + 2 (xi^T N xi^* + Re xi^dag M xi^*).
double lo_variance(const MomentSet& m, const CVector& xi);

/// xi(t) = sum_j (phi_R,j + i phi_I,j) chi_j(t).
cplx optimal_lo_waveform(const ChargeVarianceResult& result, const SamplingGrid& grid, double t,
                         bool minimum = true);

double variance_db(double sigma2);

struct SpectrumRow {
  double omega;
  double sigma2_theta0;
  double sigma2_theta_half_pi;
};

std::vector<SpectrumRow> spectrum_sweep(const CMatrix& betaJ, const SamplingGrid& grid,
                                        const std::vector<double>& omegas,
                                        Execution exec = Execution::Parallel);

struct StrengthRow {
  double beta_circ;
  double db_min;        // charge variance minimum
  double db_max;        // charge variance maximum
  double db_spectrum;   // sigma^2_CW(pi/2, 0)
};

/// Squeezing strength sweep on a fixed normalized kernel r (degenerate regime).
std::vector<StrengthRow> strength_sweep(const CMatrix& r, const SamplingGrid& grid,
                                        const std::vector<double>& beta_circs,
                                        Execution exec = Execution::Parallel);

}  // namespace wsq
