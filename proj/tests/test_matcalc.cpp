#include <cmath>

#include "support.hpp"
#include "wsq/fock_oracle.hpp"
#include "wsq/matcalc.hpp"

using namespace wsq;
using wsq::test::kind_of;
using wsq::test::random_general;
using wsq::test::random_symmetric;
using wsq::test::scalar;

namespace {
CMatrix identity(Eigen::Index d) { return CMatrix::Identity(d, d); }
}

TEST_SUITE("matcalc") {

TEST_CASE("polar decomposition of a scalar") {
  const auto pf = polar_decompose(scalar(0.3));
  CHECK(std::abs(pf.U(0, 0) - 1.0) < 1e-14);
  CHECK(std::abs(pf.P(0, 0) - 0.3) < 1e-14);
  CHECK(std::abs(pf.Q(0, 0) - 0.3) < 1e-14);
}

TEST_CASE("polar factors of random matrices") {
  for (unsigned seed = 1; seed <= 5; ++seed) {
    const CMatrix b = random_general(4, 0.8, seed);
    const auto pf = polar_decompose(b);
    CHECK(max_abs_diff(pf.U * pf.P, b) < 1e-12);
    CHECK(max_abs_diff(pf.Q * pf.U, b) < 1e-12);
    CHECK(max_abs_diff(pf.U.adjoint() * pf.U, identity(4)) < 1e-12);
    CHECK(max_abs_diff(pf.U * pf.P * pf.U.adjoint(), pf.Q) < 1e-12);
    CHECK(max_abs_diff(pf.P, pf.P.adjoint()) < 1e-14);
    CHECK(pf.singular_values.minCoeff() >= 0.0);
    CHECK((singular_values(b) - pf.singular_values).norm() < 1e-12);
  }
}

TEST_CASE("real and complex singular value paths agree") {
  const CMatrix b = random_symmetric(6, 0.5, 3).real().cast<cplx>();
  const RVector fast = singular_values(b);
  const RVector ref = polar_decompose(b).singular_values;
  CHECK((fast - ref).norm() < 1e-12);
}

TEST_CASE("non-finite input is rejected") {
  CMatrix b = scalar(0.1);
  b(0, 0) = cplx(std::nan(""), 0.0);
  CHECK(kind_of([&] { polar_decompose(b); }) == ErrorKind::NonFinite);
}

TEST_CASE("hermitian matrix functions") {
  CHECK(max_abs_diff(hermitian_matfun(CMatrix::Zero(3, 3), [](double x) { return 1.0 / std::cosh(x); }),
                     identity(3)) < 1e-15);
  const CMatrix h = scalar(0.5);
  CHECK(std::real(hermitian_matfun(h, [](double x) { return std::tanh(x); })(0, 0)) ==
        doctest::Approx(0.462117).epsilon(1e-6));
  const CMatrix b = random_general(3, 0.6, 11);
  const CMatrix hh = b + b.adjoint();
  const CMatrix s = hermitian_matfun(hh, [](double x) { return std::sinh(x); });
  const CMatrix c = hermitian_matfun(hh, [](double x) { return std::cosh(x); });
  CHECK(max_abs_diff(c * c - s * s, identity(3)) < 1e-12);
  CHECK(kind_of([&] { hermitian_matfun(b, [](double x) { return x; }); }) == ErrorKind::NotHermitian);
}

TEST_CASE("log sech stays finite for large arguments") {
  CHECK(log_sech(0.4) == doctest::Approx(std::log(1.0 / std::cosh(0.4))).epsilon(1e-14));
  CHECK(log_sech(800.0) == doctest::Approx(-800.0 + std::log(2.0)).epsilon(1e-14));
  CHECK(std::isfinite(log_sech(1e5)));
}

TEST_CASE("disentangling of a scalar") {
  const auto ds = disentangle(scalar(0.4));
  CHECK(std::real(ds.T(0, 0)) == doctest::Approx(0.379949).epsilon(1e-6));
  CHECK(ds.detW == doctest::Approx(0.925007).epsilon(1e-6));
  CHECK(std::real(ds.W(0, 0)) == doctest::Approx(0.925007).epsilon(1e-6));
}

TEST_CASE("disentangling of the zero matrix") {
  const auto ds = disentangle(CMatrix::Zero(3, 3));
  CHECK(ds.detW == 1.0);
  CHECK(ds.T.norm() == 0.0);
  CHECK(max_abs_diff(ds.W, identity(3)) < 1e-15);
}

TEST_CASE("disentangled matrices satisfy their identities") {
  for (unsigned seed = 1; seed <= 4; ++seed) {
    const CMatrix b = random_general(3, 0.7, seed);
    const auto ds = disentangle(b);
    const CMatrix tq = ds.T * ds.polar.U.adjoint();  // tanh Q
    CHECK(max_abs_diff(ds.W * ds.W + tq * tq, identity(3)) < 1e-12);
    CHECK(ds.detW == doctest::Approx(std::real(ds.W.determinant())).epsilon(1e-12));
    CHECK(max_abs_diff(hermitian_matfun(ds.L, [](double x) { return std::exp(x); }), ds.W) < 1e-12);
    CHECK(max_abs_diff(ds.V, (ds.polar.U.adjoint() * tq).transpose()) < 1e-12);
  }
  const CMatrix s = random_symmetric(4, 0.5, 9);
  const auto ds = disentangle(s);
  CHECK(max_abs_diff(ds.T, ds.T.transpose()) < 1e-12);
}

TEST_CASE("det W matches the vacuum overlap of the number-basis state") {
  const CMatrix b = random_general(2, 0.3, 21);
  const auto st = build_squeezed_state(b, 10);
  CHECK(std::abs(std::abs(oracle_vacuum_amplitude(st)) - disentangle(b).detW) < 1e-6);
}

TEST_CASE("bogoliubov coefficients are symplectic") {
  const auto zero = bogoliubov(CMatrix::Zero(2, 2));
  CHECK(max_abs_diff(zero.muA, identity(2)) < 1e-15);
  CHECK(zero.nuA.norm() == 0.0);
  const auto sc = bogoliubov(scalar(0.3));
  CHECK(std::abs(sc.muA(0, 0)) == doctest::Approx(std::cosh(0.3)));
  CHECK(std::abs(sc.nuA(0, 0)) == doctest::Approx(std::sinh(0.3)));
  const auto bg = bogoliubov(random_general(3, 0.6, 5));
  CHECK(max_abs_diff(bg.muA * bg.muA.adjoint() - bg.nuA * bg.nuA.adjoint(), identity(3)) < 1e-12);
  CHECK(max_abs_diff(bg.muB * bg.muB.adjoint() - bg.nuB * bg.nuB.adjoint(), identity(3)) < 1e-12);
}

TEST_CASE("moments of a scalar") {
  const auto m = moments(scalar(0.5), Regime::Degenerate);
  CHECK(std::real(m.Nd(0, 0)) == doctest::Approx(0.2715403174).epsilon(1e-9));
  CHECK(std::real(m.Md(0, 0)) == doctest::Approx(0.587600).epsilon(1e-6));
  const double n = std::real(m.Nd(0, 0)), mm = std::abs(m.Md(0, 0));
  CHECK(mm * mm == doctest::Approx(n * (n + 1.0)).epsilon(1e-12));
  const auto z = moments(CMatrix::Zero(2, 2), Regime::Nondegenerate);
  CHECK(z.Na.norm() == 0.0);
  CHECK(z.Mab.norm() == 0.0);
}

TEST_CASE("moments agree with the bogoliubov route") {
  for (unsigned seed = 1; seed <= 4; ++seed) {
    const CMatrix g = random_general(3, 0.6, seed);
    const auto a = moments(g, Regime::Nondegenerate);
    const auto b = moments_from_bogoliubov(g, Regime::Nondegenerate);
    CHECK(max_abs_diff(a.Na, b.Na) < 1e-10);
    CHECK(max_abs_diff(a.Nb, b.Nb) < 1e-10);
    CHECK(max_abs_diff(a.Mab, b.Mab) < 1e-10);
    CHECK(std::abs(a.Na.trace() - a.Nb.trace()) < 1e-12);
    const CMatrix s = random_symmetric(3, 0.6, seed + 100);
    const auto c = moments(s, Regime::Degenerate);
    const auto d = moments_from_bogoliubov(s, Regime::Degenerate);
    CHECK(max_abs_diff(c.Nd, d.Nd) < 1e-10);
    CHECK(max_abs_diff(c.Md, d.Md) < 1e-10);
    CHECK(max_abs_diff(c.Md, c.Md.transpose()) < 1e-12);
    CHECK(max_abs_diff(c.Nd, c.Nd.adjoint()) < 1e-12);
  }
}

TEST_CASE("moments agree with the number-basis oracle") {
  const CMatrix g = random_general(2, 0.25, 31);
  const auto lib = moments(g, Regime::Nondegenerate);
  const auto orc = oracle_moments(build_squeezed_state(g, 10));
  CHECK(max_abs_diff(lib.Na, orc.Na) < 1e-6);
  CHECK(max_abs_diff(lib.Nb, orc.Nb) < 1e-6);
  CHECK(max_abs_diff(lib.Mab, orc.Mab) < 1e-6);
  const CMatrix s = random_symmetric(2, 0.25, 32);
  const auto libd = moments(s, Regime::Degenerate);
  const auto orcd = oracle_moments(build_squeezed_state(s, 20, Regime::Degenerate));
  CHECK(max_abs_diff(libd.Nd, orcd.Nd) < 1e-6);
  CHECK(max_abs_diff(libd.Md, orcd.Md) < 1e-6);
}

TEST_CASE("degenerate moments need a symmetric beta") {
  const CMatrix g = random_general(3, 0.5, 2);
  CHECK(kind_of([&] { moments(g, Regime::Degenerate); }) == ErrorKind::AsymmetricBeta);
  CHECK_NOTHROW(require_symmetric(random_symmetric(3, 0.5, 2)));
}

}
