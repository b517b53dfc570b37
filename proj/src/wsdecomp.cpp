#include "wsq/wsdecomp.hpp"

#include <cmath>

#include "wsq/error.hpp"

namespace wsq {

namespace {

constexpr double kSincCutoff = 200.0;

}  // namespace

double ws_mode(int n, double tau, double t) {
  if (!(tau > 0.0)) throw Error(ErrorKind::InvalidArgument, "tau must be positive");
  const double x = kPi * (t - n * tau) / tau;
  const double s = x == 0.0 ? 1.0 : std::sin(x) / x;
  return s / std::sqrt(tau);
}

WindowSpec make_window(double t_J, int d_J, double tau) {
  if (d_J < 1) throw Error(ErrorKind::InvalidArgument, "window size must be positive");
  if (!(tau > 0.0)) throw Error(ErrorKind::InvalidArgument, "tau must be positive");
  WindowSpec w;
  w.t_J = t_J;
  w.d_J = d_J;
  w.n_J = static_cast<int>(std::round(t_J / tau));
  return w;
}

WindowSpec refine_window(const WindowSpec& coarse, int k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "oversample factor must be >= 1");
  WindowSpec w = coarse;
  w.n_J = coarse.n_J * k;
  w.d_J = coarse.d_J * k;
  return w;
}

CMatrix window_block(const CMatrix& m, int first_index, const IndexRange& window) {
  const IndexRange full{first_index, first_index + static_cast<int>(m.rows()) - 1};
  if (!full.contains(window))
    throw Error(ErrorKind::WindowOutOfRange, "window lies outside the sampled index range");
  const int off = window.lo - first_index;
  return m.block(off, off, window.size(), window.size());
}

WindowPartition window_partition(const BetaMatrix& beta, const WindowSpec& spec) {
  WindowPartition p;
  p.range = spec.indices();
  p.betaJ = window_block(beta.values, beta.first_index, p.range);
  const int off = p.range.lo - beta.first_index;
  const int d = p.range.size();
  const Eigen::Index n = beta.values.rows();
  double band = 0.0;
  double inside = p.betaJ.squaredNorm();
  for (Eigen::Index i = 0; i < n; ++i) {
    const bool row_in = i >= off && i < off + d;
    for (Eigen::Index j = 0; j < n; ++j) {
      const bool col_in = j >= off && j < off + d;
      if (row_in || col_in) band += std::norm(beta.values(i, j));
    }
  }
  p.neglected_mass = band > 0.0 ? (band - inside) / band : 0.0;
  return p;
}

CovarianceValue covariance(const MomentSet& m, const SamplingGrid& grid, double t, double t2) {
  const CMatrix& N = m.regime == Regime::Degenerate ? m.Nd : m.Na;
  const Eigen::Index n = N.rows();
  RVector c1 = RVector::Zero(n), c2 = RVector::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const int idx = m.first_index + static_cast<int>(i);
    const double ti = grid.time(idx);
    if (std::abs(t - ti) <= kSincCutoff * grid.tau) c1(i) = ws_mode(idx, grid.tau, t);
    if (std::abs(t2 - ti) <= kSincCutoff * grid.tau) c2(i) = ws_mode(idx, grid.tau, t2);
  }
  const CVector v1 = c1.cast<cplx>(), v2 = c2.cast<cplx>();
  CovarianceValue out;
  out.N = v1.dot(N * v2);  // modes are real, so conj(chi) = chi
  out.M = (v1.transpose() * m.M() * v2)(0, 0);
  if (m.regime == Regime::Nondegenerate) out.Nb = v1.dot(m.Nb * v2);
  return out;
}

double pair_count(const CMatrix& betaJ) {
  const RVector sv = singular_values(betaJ);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    const double s = std::sinh(sv(i));
    acc += s * s;
  }
  return acc;
}

TwoPhotonAmplitudes two_photon_amplitudes(const CMatrix& betaJ) {
  const DisentangledSet d = disentangle(betaJ);
  TwoPhotonAmplitudes out;
  out.norm = d.T.squaredNorm();
  if (!(out.norm > 0.0)) throw Error(ErrorKind::ZeroState, "no two-photon component (T vanishes)");
  out.amps = d.T / std::sqrt(out.norm);
  out.prefactor = d.detW;
  return out;
}

WindowedBeta windowed_beta(const JointAmplitude& model, cplx beta_circ, BandlimitPreset preset, int k,
                           const std::optional<WindowSpec>& coarse_window) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "oversample factor must be >= 1");
  WindowedBeta out;
  if (model.is_cw()) {
    if (!coarse_window) throw Error(ErrorKind::InvalidArgument, "CW models need a window");
    const double tau = minimal_grid(model, preset, IndexRange{0, 0}).tau;
    const WindowSpec fine = refine_window(*coarse_window, k);
    out.grid = make_grid(tau / k, fine.indices(), k);
    out.beta = beta_matrix(sample_r_matrix(model, out.grid), beta_circ / static_cast<double>(k), out.grid);
    out.part = window_partition(out.beta, fine);
    return out;
  }
  SamplingGrid coarse = minimal_grid(model, preset);
  if (coarse_window) {
    const IndexRange w = coarse_window->indices();
    coarse.range = IndexRange{std::min(coarse.range.lo, w.lo), std::max(coarse.range.hi, w.hi)};
  }
  out.beta = sample_beta(model, coarse, beta_circ, k);
  out.grid = make_grid(coarse.tau / k, out.beta.range(), k);
  if (coarse_window) {
    out.part = window_partition(out.beta, refine_window(*coarse_window, k));
  } else {
    out.part.betaJ = out.beta.values;
    out.part.range = out.beta.range();
  }
  return out;
}

}  // namespace wsq
