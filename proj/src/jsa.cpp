#include "wsq/jsa.hpp"

#include <cmath>
#include <sstream>

#include "wsq/error.hpp"

namespace wsq {

namespace {

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

}  // namespace

void JointAmplitude::validate() const {
  if (!(coherence_time > 0.0) || !std::isfinite(coherence_time))
    throw Error(ErrorKind::InvalidArgument, "coherence time must be positive");
  if (kind == AmplitudeKind::DoubleGaussianPulsed &&
      (!(pulse_duration >= coherence_time) || !std::isfinite(pulse_duration)))
    throw Error(ErrorKind::InvalidArgument, "pulse duration must be >= coherence time");
  if (kind == AmplitudeKind::TabulatedSymmetric) {
    if (!table || table->samples.rows() != table->samples.cols() || table->samples.size() == 0)
      throw Error(ErrorKind::InvalidArgument, "tabulated amplitude needs square samples");
    if (!(table->step > 0.0)) throw Error(ErrorKind::InvalidArgument, "table step must be positive");
  }
}

JointAmplitude double_gaussian_pulsed(double pulse_duration, double coherence_time) {
  JointAmplitude m;
  m.kind = AmplitudeKind::DoubleGaussianPulsed;
  m.pulse_duration = pulse_duration;
  m.coherence_time = coherence_time;
  m.validate();
  return m;
}

JointAmplitude double_gaussian_cw(double coherence_time) {
  JointAmplitude m;
  m.kind = AmplitudeKind::DoubleGaussianCW;
  m.pulse_duration = std::numeric_limits<double>::infinity();
  m.coherence_time = coherence_time;
  m.validate();
  return m;
}

JointAmplitude tabulated_symmetric(TabulatedAmplitude table, double coherence_time) {
  if ((table.samples - table.samples.transpose()).norm() > 1e-10 * std::max(1.0, table.samples.norm()))
    throw Error(ErrorKind::AsymmetricBeta, "tabulated amplitude is not symmetric");
  JointAmplitude m;
  m.kind = AmplitudeKind::TabulatedSymmetric;
  m.coherence_time = coherence_time;
  m.pulse_duration = table.step * table.samples.rows();
  m.table = std::move(table);
  m.validate();
  return m;
}

SamplingGrid make_grid(double tau, IndexRange range, int oversample_factor) {
  if (!(tau > 0.0)) throw Error(ErrorKind::InvalidArgument, "tau must be positive");
  if (range.hi < range.lo) throw Error(ErrorKind::InvalidArgument, "empty index range");
  SamplingGrid g;
  g.tau = tau;
  g.omega = 2.0 * kPi / tau;
  g.oversample_factor = oversample_factor;
  g.range = range;
  return g;
}

SamplingGrid minimal_grid(const JointAmplitude& model, BandlimitPreset preset,
                          std::optional<IndexRange> range, int cw_half_width) {
  model.validate();
  const double tc = model.coherence_time;
  const double tau = preset == BandlimitPreset::Minimal ? tc : std::sqrt(kPi) * tc;
  if (!range) {
    switch (model.kind) {
      case AmplitudeKind::DoubleGaussianPulsed: {
        const int half = static_cast<int>(std::floor(4.0 * model.pulse_duration / tau));
        range = IndexRange{-half, half};
        break;
      }
      case AmplitudeKind::DoubleGaussianCW:
        range = IndexRange{-cw_half_width, cw_half_width};
        break;
      case AmplitudeKind::TabulatedSymmetric: {
        const auto& t = *model.table;
        const double t0 = t.first_index * t.step;
        const double t1 = (t.first_index + t.samples.rows() - 1) * t.step;
        range = IndexRange{static_cast<int>(std::ceil(t0 / tau)), static_cast<int>(std::floor(t1 / tau))};
        break;
      }
    }
  }
  return make_grid(tau, *range, 1);
}

cplx evaluate_jta(const JointAmplitude& model, double t1, double t2) {
  const double tc = model.coherence_time;
  const double diff = t1 - t2;
  switch (model.kind) {
    case AmplitudeKind::DoubleGaussianPulsed: {
      const double tp = model.pulse_duration;
      const double sum = t1 + t2;
      return {std::exp(-kPi * diff * diff / (4.0 * tc * tc) - kPi * sum * sum / (4.0 * tp * tp)) /
                  std::sqrt(tp * tc),
              0.0};
    }
    case AmplitudeKind::DoubleGaussianCW:
      return {std::exp(-kPi * diff * diff / (4.0 * tc * tc)), 0.0};
    case AmplitudeKind::TabulatedSymmetric: {
      const auto& t = *model.table;
      const Eigen::Index n = t.samples.rows();
      CVector row(n), col(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        const double ti = (t.first_index + static_cast<double>(i)) * t.step;
        row(i) = sinc(kPi * (t1 - ti) / t.step);
        col(i) = sinc(kPi * (t2 - ti) / t.step);
      }
      return row.transpose() * t.samples * col;
    }
  }
  return {0.0, 0.0};
}

cplx evaluate_jsa(const JointAmplitude& model, double w1, double w2) {
  const double tc = model.coherence_time;
  const double diff = w1 - w2;
  switch (model.kind) {
    case AmplitudeKind::DoubleGaussianPulsed: {
      const double tp = model.pulse_duration;
      const double sum = w1 + w2;
      return {std::sqrt(tp * tc / (kPi * kPi)) *
                  std::exp(-tc * tc * diff * diff / (4.0 * kPi) - tp * tp * sum * sum / (4.0 * kPi)),
              0.0};
    }
    case AmplitudeKind::DoubleGaussianCW:
      return {std::exp(-tc * tc * diff * diff / (4.0 * kPi)), 0.0};
    case AmplitudeKind::TabulatedSymmetric:
      break;
  }
  throw Error(ErrorKind::InvalidArgument, "spectral amplitude not available for tabulated models");
}

CMatrix sample_r_matrix(const JointAmplitude& model, const SamplingGrid& grid) {
  const int n = grid.range.size();
  CMatrix r(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      r(i, j) = evaluate_jta(model, grid.time(grid.range.lo + i), grid.time(grid.range.lo + j));
  const double peak = r.cwiseAbs().maxCoeff();
  if (!(peak > std::numeric_limits<double>::epsilon() * 1e-3) || !std::isfinite(peak))
    throw Error(ErrorKind::AllZeroWindow, "joint amplitude vanishes on the sampled window");
  r /= peak;
  return r;
}

BetaMatrix beta_matrix(const CMatrix& r, cplx beta_circ, const SamplingGrid& grid) {
  BetaMatrix b = beta_matrix(r, beta_circ);
  b.first_index = grid.range.lo;
  b.tau = grid.tau;
  return b;
}

BetaMatrix beta_matrix(const CMatrix& r, cplx beta_circ) {
  if (r.rows() != r.cols()) throw Error(ErrorKind::InvalidArgument, "r must be square");
  if (r.size() > 0 && r.cwiseAbs().maxCoeff() > 1.0 + 1e-12)
    throw Error(ErrorKind::InvalidArgument, "|r_nm| exceeds 1");
  BetaMatrix b;
  b.values = beta_circ * r;
  b.beta_circ = beta_circ;
  return b;
}

OversampleResult oversample(const JointAmplitude& model, const SamplingGrid& grid, int k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "oversample factor must be >= 1");
  model.validate();
  OversampleResult out;
  out.grid = make_grid(grid.tau / k, IndexRange{grid.range.lo * k, grid.range.hi * k},
                       grid.oversample_factor * k);
  out.beta_circ_scale = 1.0 / k;
  std::ostringstream note;
  note << "bandlimit raised by " << k << "; beta_circ on the fine grid is beta_circ/" << k
       << " (beta_nm scales with tau); index range expanded by " << k;
  out.note = note.str();
  return out;
}

BetaMatrix sample_beta(const JointAmplitude& model, const SamplingGrid& coarse, cplx beta_circ, int k) {
  const OversampleResult fine = oversample(model, coarse, k);
  const CMatrix r = sample_r_matrix(model, fine.grid);
  return beta_matrix(r, beta_circ * fine.beta_circ_scale, fine.grid);
}

}  // namespace wsq
