#include "wsq/homodyne.hpp"

#include <cmath>

#include "wsq/error.hpp"
#include "wsq/wsdecomp.hpp"

namespace wsq {

CwSpectrum::CwSpectrum(const CMatrix& betaJ, const SamplingGrid& grid) : grid_(grid) {
  const CMatrix beta = require_symmetric(betaJ);
  const PolarFactors pf = polar_decompose(beta);
  const HermitianSpectrum q = pf.q_spectrum();
  sinh2_ = q.apply([](double x) {
    const double s = std::sinh(x);
    return s * s;
  });
  sc_ = q.apply([](double x) { return 0.5 * std::sinh(2.0 * x); }) * pf.U;
}

double CwSpectrum::variance(double theta, double omega) const {
  if (!(std::abs(omega) < 0.5 * grid_.omega))
    throw Error(ErrorKind::OmegaOutOfBand, "|omega| must stay below half the bandlimit");
  const Eigen::Index d = sinh2_.rows();
  if (d == 0) return 1.0;
  CVector e(d);
  for (Eigen::Index n = 0; n < d; ++n) e(n) = std::polar(1.0, static_cast<double>(n) * omega * grid_.tau);
  const CVector ec = e.conjugate();
  // tr(E S) = e^dag S e and tr(E^T S) = e^T S e^* for E_nm = e_n e_m^*
  const cplx t1 = e.dot(sinh2_ * e);
  const cplx t2 = (e.transpose() * sinh2_ * ec)(0, 0);
  const cplx t3 = (e.transpose() * sc_ * ec)(0, 0);
  const double acc = (t1 + t2).real() + 2.0 * (std::polar(1.0, 2.0 * theta) * t3).real();
  return 1.0 + acc / static_cast<double>(d);
}

double cw_variance_spectrum(const CMatrix& betaJ, double theta, double omega, const SamplingGrid& grid) {
  return CwSpectrum(betaJ, grid).variance(theta, omega);
}

CVector ChargeVarianceResult::lo_coefficients(bool minimum) const {
  const RVector& phi = minimum ? phi_min : phi_max;
  const Eigen::Index d = phi.size() / 2;
  CVector xi(d);
  for (Eigen::Index j = 0; j < d; ++j) xi(j) = cplx(phi(j), phi(d + j));
  return xi;
}

RMatrix charge_block_matrix(const MomentSet& m) {
  if (m.regime != Regime::Degenerate)
    throw Error(ErrorKind::InvalidArgument, "charge variance needs degenerate moments");
  const CMatrix& N = m.Nd;
  const CMatrix& M = m.Md;
  const Eigen::Index d = N.rows();
  RMatrix K(2 * d, 2 * d);
  K.topLeftCorner(d, d) = N.real() + M.real();
  K.topRightCorner(d, d) = N.imag() + M.imag();
  K.bottomLeftCorner(d, d) = M.imag() - N.imag();
  K.bottomRightCorner(d, d) = N.real() - M.real();
  return 0.5 * (K + K.transpose());
}

ChargeVarianceResult charge_variance_extrema(const MomentSet& m) {
  const RMatrix K = charge_block_matrix(m);
  ChargeVarianceResult r;
  r.first_index = m.first_index;
  const Eigen::Index n = K.rows();
  if (n == 0) return r;
  Eigen::SelfAdjointEigenSolver<RMatrix> es(K);
  const RVector& ev = es.eigenvalues();
  r.lambda_min = ev(0);
  r.lambda_max = ev(n - 1);
  r.sigma2_min = 1.0 + 2.0 * r.lambda_min;
  r.sigma2_max = 1.0 + 2.0 * r.lambda_max;
  r.phi_min = es.eigenvectors().col(0);
  r.phi_max = es.eigenvectors().col(n - 1);
  const double gap_tol = 1e-12 * std::max(1.0, ev.cwiseAbs().maxCoeff());
  r.degenerate_min = n > 1 && ev(1) - ev(0) < gap_tol;
  r.degenerate_max = n > 1 && ev(n - 1) - ev(n - 2) < gap_tol;
  return r;
}

double lo_variance(const MomentSet& m, const CVector& xi) {
  if (m.regime != Regime::Degenerate)
    throw Error(ErrorKind::InvalidArgument, "LO variance needs degenerate moments");
  const CVector xc = xi.conjugate();
  const cplx n_term = (xi.transpose() * m.Nd * xc)(0, 0);
  const cplx m_term = xi.dot(m.Md * xc);
  return xi.squaredNorm() + 2.0 * (n_term.real() + m_term.real());
}

cplx optimal_lo_waveform(const ChargeVarianceResult& result, const SamplingGrid& grid, double t,
                         bool minimum) {
  const CVector xi = result.lo_coefficients(minimum);
  cplx acc{0.0, 0.0};
  for (Eigen::Index j = 0; j < xi.size(); ++j)
    acc += xi(j) * ws_mode(result.first_index + static_cast<int>(j), grid.tau, t);
  return acc;
}

double variance_db(double sigma2) {
  if (!(sigma2 > 0.0)) throw Error(ErrorKind::NonPositive, "variance must be positive");
  return 10.0 * std::log10(sigma2);
}

std::vector<SpectrumRow> spectrum_sweep(const CMatrix& betaJ, const SamplingGrid& grid,
                                        const std::vector<double>& omegas, Execution exec) {
  const CwSpectrum spec(betaJ, grid);
  return parallel_map(
      omegas.size(),
      [&](std::size_t i) {
        return SpectrumRow{omegas[i], spec.variance(0.0, omegas[i]), spec.variance(0.5 * kPi, omegas[i])};
      },
      exec);
}

std::vector<StrengthRow> strength_sweep(const CMatrix& r, const SamplingGrid& grid,
                                        const std::vector<double>& beta_circs, Execution exec) {
  return parallel_map(
      beta_circs.size(),
      [&](std::size_t i) {
        const CMatrix beta = beta_circs[i] * r;
        const ChargeVarianceResult cv = charge_variance_extrema(moments(beta, Regime::Degenerate));
        const double s = CwSpectrum(beta, grid).variance(0.5 * kPi, 0.0);
        return StrengthRow{beta_circs[i], variance_db(cv.sigma2_min), variance_db(cv.sigma2_max),
                           variance_db(s)};
      },
      exec);
}

}  // namespace wsq
