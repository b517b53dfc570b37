#include "wsq/hom.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>

#include "wsq/error.hpp"
#include "wsq/matcalc.hpp"

namespace wsq {

namespace {

constexpr double kClampTol = 1e-10;
constexpr double kEdgeMassTol = 1e-8;

double clamp_probability(double p) {
  if (p < 0.0 && p > -kClampTol) return 0.0;
  if (p > 1.0 && p < 1.0 + kClampTol) return 1.0;
  return p;
}

}  // namespace

ShiftedT shift_T(const CMatrix& T, int q, double max_dropped) {
  const Eigen::Index n = T.rows(), m = T.cols();
  ShiftedT out;
  out.T = CMatrix::Zero(n, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const Eigen::Index src = j + q;
    if (src >= 0 && src < m) out.T.col(j) = T.col(src);
  }
  const double total = T.squaredNorm();
  out.dropped_mass = total > 0.0 ? std::max(0.0, (total - out.T.squaredNorm()) / total) : 0.0;
  if (out.dropped_mass > max_dropped)
    throw Error(ErrorKind::ExcessiveShift, "shift pushes too much of T outside the grid");
  return out;
}

double hom_probability(const CMatrix& TshiftJ, double detWJ) {
  if (!TshiftJ.allFinite() || !std::isfinite(detWJ))
    throw Error(ErrorKind::NonFinite, "non-finite HOM input");
  const Eigen::Index n = TshiftJ.rows();
  const CMatrix lambda = 0.5 * (TshiftJ + TshiftJ.transpose());
  CMatrix G = CMatrix::Identity(n, n) - lambda.adjoint() * lambda;
  G = 0.5 * (G + G.adjoint());
  Eigen::LLT<CMatrix> llt(G);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorKind::SingularDeterminant, "I - lambda^dag lambda is not positive definite");
  double logdet = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) logdet += 2.0 * std::log(llt.matrixLLT()(i, i).real());
  const double p = 1.0 + detWJ * detWJ * (1.0 - 2.0 * std::exp(-0.5 * logdet));
  return clamp_probability(p);
}

double hom_max(const CMatrix& beta, double detW) {
  const Eigen::Index n = beta.rows();
  const double total = beta.squaredNorm();
  if (total > 0.0 && n > 0) {
    const double edge = beta.row(0).squaredNorm() + beta.row(n - 1).squaredNorm() +
                        beta.col(0).squaredNorm() + beta.col(n - 1).squaredNorm();
    if (edge > kEdgeMassTol * total)
      throw Error(ErrorKind::CWNotSupported, "beta does not decay inside the grid (CW kernel)");
  }
  const RVector sv = singular_values(beta);
  double logdet = 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    const double t = std::tanh(sv(i));
    logdet += std::log1p(-0.25 * t * t);
  }
  return clamp_probability(1.0 + detW * detW * (1.0 - 2.0 * std::exp(-logdet)));
}

std::vector<double> HomCurve::normalized() const {
  std::vector<double> out(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) out[i] = p_max > 0.0 ? probs[i] / p_max : 0.0;
  return out;
}

std::optional<double> curve_plateau(const std::vector<double>& probs) {
  constexpr int kRun = 5;
  constexpr double kSlope = 1e-4;
  const auto flat = [&](std::size_t start, int dir) {
    for (int k = 0; k < kRun; ++k) {
      const std::size_t a = start + static_cast<std::size_t>(dir * k);
      const std::size_t b = a + static_cast<std::size_t>(dir);
      const double ref = std::max(std::abs(probs[a]), 1e-300);
      if (std::abs(probs[b] - probs[a]) / ref >= kSlope) return false;
    }
    return true;
  };
  if (probs.size() < static_cast<std::size_t>(kRun) + 1) return std::nullopt;
  const std::size_t last = probs.size() - 1;
  const bool left = flat(0, +1);
  const bool right = flat(last, -1);
  if (left && right) return 0.5 * (probs.front() + probs.back());
  if (left) return probs.front();
  if (right) return probs.back();
  return std::nullopt;
}

HomCurve hom_dip_curve(const HomSetup& s, Execution exec) {
  if (s.oversample_k < 1) throw Error(ErrorKind::InvalidArgument, "oversample factor must be >= 1");
  if (s.q_step < 1) throw Error(ErrorKind::InvalidArgument, "q_step must be positive");
  if (s.q_range.hi < s.q_range.lo) throw Error(ErrorKind::InvalidArgument, "empty delay range");
  s.model.validate();
  const int k = s.oversample_k;
  const int qmax = std::max(std::abs(s.q_range.lo), std::abs(s.q_range.hi));

  BetaMatrix beta;
  IndexRange window;
  if (s.model.is_cw()) {
    if (!s.window) throw Error(ErrorKind::InvalidArgument, "CW HOM curves need a window");
    window = refine_window(*s.window, k).indices();
    const SamplingGrid coarse = minimal_grid(s.model, s.preset, IndexRange{0, 0});
    // margin of 8 coherence times beyond the largest shift keeps the
    // truncation edge of T away from the window
    const int margin = qmax + 8 * k + 1;
    const SamplingGrid fine =
        make_grid(coarse.tau / k, IndexRange{window.lo - margin, window.hi + margin}, k);
    beta = beta_matrix(sample_r_matrix(s.model, fine), s.beta_circ / static_cast<double>(k), fine);
  } else {
    const SamplingGrid coarse = minimal_grid(s.model, s.preset);
    beta = sample_beta(s.model, coarse, s.beta_circ, k);
    window = s.window ? refine_window(*s.window, k).indices() : beta.range();
  }

  const DisentangledSet full = disentangle(beta.values);
  double detW = full.detW;
  if (s.model.is_cw()) detW = det_sech(singular_values(window_block(beta.values, beta.first_index, window)));

  // CW: the margin keeps every column the window needs on the grid, while the
  // Toeplitz T has mass all along the diagonal, so the global check is moot
  const double max_dropped = s.model.is_cw() ? 1.0 : 1e-6;
  std::vector<int> qs;
  for (int q = s.q_range.lo; q <= s.q_range.hi; q += s.q_step) qs.push_back(q);

  HomCurve c;
  c.tau = beta.tau;
  c.shifts = qs;
  c.probs = parallel_map(
      qs.size(),
      [&](std::size_t i) {
        const ShiftedT sh = shift_T(full.T, qs[i], max_dropped);
        return hom_probability(window_block(sh.T, beta.first_index, window), detW);
      },
      exec);
  for (int q : qs) c.delays.push_back(q * beta.tau);

  c.p_min = *std::min_element(c.probs.begin(), c.probs.end());
  if (!s.model.is_cw()) {
    c.p_max = hom_max(beta.values, full.detW);
    c.p_max_source = PmaxSource::ClosedForm;
  } else if (auto plateau = curve_plateau(c.probs)) {
    c.p_max = *plateau;
    c.p_max_source = PmaxSource::Plateau;
  } else {
    c.p_max = *std::max_element(c.probs.begin(), c.probs.end());
    c.p_max_source = PmaxSource::CurveMaximum;
  }
  c.visibility = c.p_max > 0.0 ? (c.p_max - c.p_min) / c.p_max : 0.0;
  return c;
}

HomCurve hom_dip_curve(const JointAmplitude& model, cplx beta_circ, const std::optional<WindowSpec>& window,
                       int oversample_k, IndexRange q_range, BandlimitPreset preset, Execution exec) {
  HomSetup s;
  s.model = model;
  s.beta_circ = beta_circ;
  s.window = window;
  s.oversample_k = oversample_k;
  s.q_range = q_range;
  s.preset = preset;
  return hom_dip_curve(s, exec);
}

}  // namespace wsq
