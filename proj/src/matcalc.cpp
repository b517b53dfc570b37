#include "wsq/matcalc.hpp"

#include <cmath>

#include <Eigen/SVD>

#include "wsq/error.hpp"

namespace wsq {

namespace {

void require_square_finite(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::InvalidArgument, std::string(what) + " must be square");
  if (!m.allFinite()) throw Error(ErrorKind::NonFinite, std::string(what) + " has non-finite entries");
}

}  // namespace

CMatrix HermitianSpectrum::apply(const std::function<double(double)>& f) const {
  RVector fv(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) fv(i) = f(values(i));
  return vectors * fv.asDiagonal() * vectors.adjoint();
}

PolarFactors polar_decompose(const CMatrix& beta) {
  require_square_finite(beta, "beta");
  PolarFactors pf;
  const Eigen::Index n = beta.rows();
  if (n == 0) {
    pf.U = pf.P = pf.Q = pf.A = pf.B = CMatrix(0, 0);
    pf.singular_values = RVector(0);
    return pf;
  }
  Eigen::BDCSVD<CMatrix> svd(beta, Eigen::ComputeFullU | Eigen::ComputeFullV);
  pf.A = svd.matrixU();
  pf.B = svd.matrixV();
  pf.singular_values = svd.singularValues();
  pf.U = pf.A * pf.B.adjoint();
  const auto s = pf.singular_values.cast<cplx>().asDiagonal();
  pf.P = pf.B * s * pf.B.adjoint();
  pf.Q = pf.A * s * pf.A.adjoint();
  return pf;
}

RVector singular_values(const CMatrix& beta) {
  require_square_finite(beta, "beta");
  if (beta.size() == 0) return RVector(0);
  if (beta.imag().cwiseAbs().maxCoeff() == 0.0) {
    Eigen::BDCSVD<RMatrix> svd(beta.real());
    return svd.singularValues();
  }
  Eigen::BDCSVD<CMatrix> svd(beta);
  return svd.singularValues();
}

HermitianSpectrum hermitian_eigen(const CMatrix& H, double tol) {
  require_square_finite(H, "H");
  const double scale = std::max(H.norm(), 1.0);
  if ((H - H.adjoint()).norm() > tol * scale)
    throw Error(ErrorKind::NotHermitian, "matrix is not Hermitian within tolerance");
  const CMatrix Hs = 0.5 * (H + H.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(Hs);
  return {es.eigenvalues(), es.eigenvectors()};
}

CMatrix hermitian_matfun(const CMatrix& H, const std::function<double(double)>& f, double tol) {
  return hermitian_eigen(H, tol).apply(f);
}

double log_sech(double x) {
  const double ax = std::abs(x);
  return -ax - std::log1p(std::exp(-2.0 * ax)) + std::log(2.0);
}

double det_sech(const RVector& singular_values) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < singular_values.size(); ++i) acc += log_sech(singular_values(i));
  return std::exp(acc);
}

DisentangledSet disentangle(const CMatrix& beta) {
  DisentangledSet d;
  d.polar = polar_decompose(beta);
  const HermitianSpectrum q = d.polar.q_spectrum();
  const HermitianSpectrum p = d.polar.p_spectrum();
  const CMatrix tanhQ = q.apply([](double x) { return std::tanh(x); });
  d.W = q.apply([](double x) { return 1.0 / std::cosh(x); });
  d.L = q.apply(log_sech);
  d.Y = p.apply(log_sech).transpose();
  d.T = tanhQ * d.polar.U;
  d.V = (d.polar.U.adjoint() * tanhQ).transpose();
  d.detW = det_sech(d.polar.singular_values);
  return d;
}

BogoliubovSet bogoliubov(const CMatrix& beta) {
  const PolarFactors pf = polar_decompose(beta);
  const HermitianSpectrum q = pf.q_spectrum();
  BogoliubovSet b;
  b.muA = q.apply([](double x) { return std::cosh(x); });
  b.nuA = q.apply([](double x) { return std::sinh(x); }) * pf.U;
  b.muB = (pf.U.adjoint() * b.muA * pf.U).transpose();
  b.nuB = b.nuA.transpose();
  return b;
}

CMatrix require_symmetric(const CMatrix& beta, double tol) {
  require_square_finite(beta, "beta");
  const double scale = std::max(beta.norm(), 1e-300);
  if (beta.size() > 0 && (beta - beta.transpose()).norm() > tol * scale)
    throw Error(ErrorKind::AsymmetricBeta, "degenerate regime needs a symmetric beta");
  return 0.5 * (beta + beta.transpose());
}

MomentSet moments(const CMatrix& beta_in, Regime regime, int first_index) {
  const CMatrix beta = regime == Regime::Degenerate ? require_symmetric(beta_in) : beta_in;
  const PolarFactors pf = polar_decompose(beta);
  const HermitianSpectrum q = pf.q_spectrum();
  MomentSet m;
  m.regime = regime;
  m.first_index = first_index;
  const auto sinh2 = [](double x) {
    const double s = std::sinh(x);
    return s * s;
  };
  const CMatrix sc = q.apply([](double x) { return 0.5 * std::sinh(2.0 * x); }) * pf.U;
  if (regime == Regime::Nondegenerate) {
    m.Na = q.apply(sinh2).transpose();
    // <B_n^dag B_m> = (nuA^dag nuA)_nm = (U^dag sinh^2 Q U)_nm = sinh^2 P
    m.Nb = pf.p_spectrum().apply(sinh2);
    m.Mab = sc;
  } else {
    m.Nd = pf.p_spectrum().apply(sinh2);
    m.Md = 0.5 * (sc + sc.transpose());
  }
  return m;
}

MomentSet moments_from_bogoliubov(const CMatrix& beta_in, Regime regime) {
  const CMatrix beta = regime == Regime::Degenerate ? require_symmetric(beta_in) : beta_in;
  const BogoliubovSet b = bogoliubov(beta);
  MomentSet m;
  m.regime = regime;
  // <A_n^dag A_m> = sum_k conj(nuA_nk) nuA_mk, <A_n B_m> = sum_k muA_nk nuB_mk
  const CMatrix na = b.nuA.conjugate() * b.nuA.transpose();
  const CMatrix mab = b.muA * b.nuB.transpose();
  if (regime == Regime::Nondegenerate) {
    m.Na = na;
    m.Nb = b.nuB.conjugate() * b.nuB.transpose();
    m.Mab = mab;
  } else {
    m.Nd = na;
    m.Md = mab;
  }
  return m;
}

}  // namespace wsq
