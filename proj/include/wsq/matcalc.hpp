#pragma once

#include <functional>

#include "wsq/linalg.hpp"

namespace wsq {

/// Eigendecomposition H = V diag(values) V^dagger of a Hermitian matrix.
struct HermitianSpectrum {
  RVector values;
  CMatrix vectors;

  CMatrix apply(const std::function<double(double)>& f) const;
};

/// beta = U P = Q U. The SVD beta = A S B^dagger is kept because it is the
/// eigendecomposition of both factors: Q = A S A^dagger, P = B S B^dagger.
struct PolarFactors {
  CMatrix U;
  CMatrix P;
  CMatrix Q;
  RVector singular_values;
  CMatrix A;
  CMatrix B;

  HermitianSpectrum q_spectrum() const { return {singular_values, A}; }
  HermitianSpectrum p_spectrum() const { return {singular_values, B}; }
};

PolarFactors polar_decompose(const CMatrix& beta);

/// Singular values only, in decreasing order (real arithmetic when beta is real).
RVector singular_values(const CMatrix& beta);

HermitianSpectrum hermitian_eigen(const CMatrix& H, double tol = 1e-10);

/// f(H) in the eigenbasis of H. Throws NotHermitian if ||H - H^dagger|| exceeds
/// tol relative to ||H||.
CMatrix hermitian_matfun(const CMatrix& H, const std::function<double(double)>& f,
                         double tol = 1e-10);

/// Normally ordered form of the squeezing operator:
/// S|vac> = detW exp(sum T_nm A_n^dag B_m^dag)|vac>.
struct DisentangledSet {
  CMatrix W;  // sech Q
  double detW = 1.0;
  CMatrix T;  // tanh(Q) U
  CMatrix L;  // ln sech Q
  CMatrix Y;  // ln sech P^T
  CMatrix V;  // (U^dagger tanh Q)^T
  PolarFactors polar;
};

DisentangledSet disentangle(const CMatrix& beta);

/// ln sech x for x >= 0, stable for large x.
double log_sech(double x);

/// det(sech Q) = exp(sum ln sech s_i) over the singular values of beta.
double det_sech(const RVector& singular_values);

struct BogoliubovSet {
  CMatrix muA;
  CMatrix nuA;
  CMatrix muB;
  CMatrix nuB;
};

/// S^dag A S = muA A + nuA B^dag, S^dag B S = muB B + nuB A^dag.
BogoliubovSet bogoliubov(const CMatrix& beta);

enum class Regime { Degenerate, Nondegenerate };

/// Second moments of the squeezed vacuum.
/// Nondegenerate: Na_nm = <A_n^dag A_m> = (sinh^2 Q)^T, Nb_nm = <B_n^dag B_m> = sinh^2 P,
/// Mab_nm = <A_n B_m> = sinh Q cosh Q U.
/// Degenerate: Nd_nm = <A_n^dag A_m> = sinh^2 P, Md_nm = <A_n A_m> = sinh Q cosh Q U.
/// Matrices not belonging to the regime are left empty.
struct MomentSet {
  Regime regime = Regime::Nondegenerate;
  CMatrix Na;
  CMatrix Nb;
  CMatrix Mab;
  CMatrix Nd;
  CMatrix Md;
  int first_index = 0;

  const CMatrix& N() const { return regime == Regime::Degenerate ? Nd : Nb; }
  const CMatrix& M() const { return regime == Regime::Degenerate ? Md : Mab; }
};

/// Returns beta symmetrized if it is symmetric within tol (relative Frobenius),
/// throws AsymmetricBeta otherwise.
CMatrix require_symmetric(const CMatrix& beta, double tol = 1e-10);

MomentSet moments(const CMatrix& beta, Regime regime, int first_index = 0);

/// Same moments assembled from the Bogoliubov coefficients (independent path
/// used for consistency checks).
MomentSet moments_from_bogoliubov(const CMatrix& beta, Regime regime);

}  // namespace wsq
