#include <cmath>

#include "support.hpp"
#include "wsq/hom.hpp"
#include "wsq/matcalc.hpp"
#include "wsq/wsdecomp.hpp"

using namespace wsq;
using wsq::test::kind_of;
using wsq::test::random_symmetric;
using wsq::test::scalar;

namespace {
// scalar squeezer at position c of an n x n grid
CMatrix padded_scalar(double r, int n, int c) {
  CMatrix b = CMatrix::Zero(n, n);
  b(c, c) = r;
  return b;
}
}

TEST_SUITE("hom") {

TEST_CASE("shifting T") {
  const CMatrix t = random_symmetric(5, 0.3, 1);
  CHECK(max_abs_diff(shift_T(t, 0).T, t) == 0.0);
  CMatrix p = CMatrix::Zero(9, 9);
  p.block(2, 2, 5, 5) = t;
  const auto s = shift_T(p, 2);
  CHECK(s.dropped_mass == 0.0);
  CHECK(max_abs_diff(shift_T(s.T, -2).T, p) == 0.0);
  CHECK(s.T(2, 0) == p(2, 2));
  CHECK(kind_of([&] { shift_T(t, 2); }) == ErrorKind::ExcessiveShift);
  CHECK(shift_T(t, 2, 1.0).dropped_mass > 0.0);
}

TEST_CASE("vacuum never gives coincidences") {
  CHECK(hom_probability(CMatrix::Zero(4, 4), 1.0) == 0.0);
  CHECK(hom_max(CMatrix::Zero(4, 4), 1.0) == 0.0);
}

TEST_CASE("symmetric T at zero delay") {
  const auto ds = disentangle(scalar(0.4));
  CHECK(hom_probability(ds.T, ds.detW) == doctest::Approx(0.005624).epsilon(1e-4));
  CHECK(hom_probability(ds.T, ds.detW) == doctest::Approx(std::pow(1.0 - 1.0 / std::cosh(0.4), 2)).epsilon(1e-10));
  for (unsigned seed = 1; seed <= 4; ++seed) {
    const auto d = disentangle(random_symmetric(5, 0.4, seed));
    CHECK(std::abs(hom_probability(d.T, d.detW) - std::pow(1.0 - d.detW, 2)) < 1e-10);
  }
}

TEST_CASE("large delay limit") {
  const CMatrix b = padded_scalar(0.4, 9, 4);
  const auto ds = disentangle(b);
  const double far = hom_probability(shift_T(ds.T, 3).T, ds.detW);
  CHECK(hom_max(b, ds.detW) == doctest::Approx(far).epsilon(1e-10));
  const double t = std::tanh(0.4);
  const double w2 = 1.0 / std::pow(std::cosh(0.4), 2);
  CHECK(far == doctest::Approx(1.0 + w2 * (1.0 - 2.0 / (1.0 - t * t / 4.0))).epsilon(1e-12));
}

TEST_CASE("cw kernels have no large delay limit") {
  const auto wb = windowed_beta(double_gaussian_cw(1.0), cplx(0.1, 0.0), BandlimitPreset::Minimal, 1,
                                WindowSpec{0.0, 20, 0});
  CHECK(kind_of([&] { hom_max(wb.part.betaJ, 0.9); }) == ErrorKind::CWNotSupported);
}

TEST_CASE("singular determinant is reported") {
  CMatrix t = CMatrix::Zero(2, 2);
  t(0, 0) = 1.5;
  CHECK(kind_of([&] { hom_probability(t, 0.5); }) == ErrorKind::SingularDeterminant);
}

TEST_CASE("plateau detection") {
  std::vector<double> flat(20, 0.5);
  for (int i = 0; i < 6; ++i) flat[i] = 0.1 + 0.05 * i;
  CHECK(curve_plateau(flat).has_value());
  CHECK(*curve_plateau(flat) == doctest::Approx(0.5));
  std::vector<double> ramp(20);
  for (int i = 0; i < 20; ++i) ramp[i] = 0.01 * i;
  CHECK_FALSE(curve_plateau(ramp).has_value());
}

TEST_CASE("pulsed dip curve") {
  const auto c = hom_dip_curve(double_gaussian_pulsed(10.0, 1.0), cplx(0.1, 0.0), std::nullopt, 2, {-6, 6},
                               BandlimitPreset::GaussianCaption);
  REQUIRE(c.probs.size() == 13);
  CHECK(c.p_max_source == PmaxSource::ClosedForm);
  for (std::size_t i = 0; i < c.probs.size(); ++i) {
    CHECK(c.probs[i] >= 0.0);
    CHECK(c.probs[i] <= 1.0);
    CHECK(c.probs[i] == doctest::Approx(c.probs[c.probs.size() - 1 - i]).epsilon(1e-8));
  }
  const auto n = c.normalized();
  CHECK(n[6] < 0.02);
  CHECK(c.visibility > 0.98);
  CHECK(c.p_min == doctest::Approx(c.probs[6]));
  CHECK(c.delays[7] == doctest::Approx(c.tau));
}

TEST_CASE("visibility falls with strength and with pulse length") {
  const auto model = double_gaussian_pulsed(10.0, 1.0);
  double prev = 2.0;
  for (double b : {0.05, 0.2, 0.5, 1.0}) {
    const auto c = hom_dip_curve(model, cplx(b, 0.0), std::nullopt, 1, {0, 0});
    CHECK(c.visibility < prev);
    prev = c.visibility;
  }
  const double v5 = hom_dip_curve(double_gaussian_pulsed(5.0, 1.0), cplx(0.5, 0.0), std::nullopt, 1, {0, 0}).visibility;
  const double v15 = hom_dip_curve(double_gaussian_pulsed(15.0, 1.0), cplx(0.5, 0.0), std::nullopt, 1, {0, 0}).visibility;
  CHECK(v5 > v15);
}

TEST_CASE("cw dip curve uses the plateau") {
  const auto c = hom_dip_curve(double_gaussian_cw(1.0), cplx(0.1, 0.0), WindowSpec{0.0, 10, 0}, 1, {-30, 30});
  CHECK(c.p_max_source == PmaxSource::Plateau);
  CHECK(c.p_min < c.p_max);
  for (std::size_t i = 0; i < c.probs.size(); ++i)
    CHECK(c.probs[i] == doctest::Approx(c.probs[c.probs.size() - 1 - i]).epsilon(1e-8));
}

TEST_CASE("parallel dip curve matches serial") {
  HomSetup s;
  s.model = double_gaussian_pulsed(5.0, 1.0);
  s.beta_circ = cplx(0.3, 0.0);
  s.oversample_k = 2;
  s.q_range = {-4, 4};
  const auto a = hom_dip_curve(s, Execution::Serial);
  const auto b = hom_dip_curve(s, Execution::Parallel);
  for (std::size_t i = 0; i < a.probs.size(); ++i) CHECK(a.probs[i] == b.probs[i]);
  CHECK(a.visibility == b.visibility);
}

}
