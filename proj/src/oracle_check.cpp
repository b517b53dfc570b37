#include "wsq/oracle_check.hpp"

#include <chrono>
#include <cmath>
#include <random>

#include "wsq/coincidence.hpp"
#include "wsq/error.hpp"
#include "wsq/fock_oracle.hpp"
#include "wsq/homodyne.hpp"
#include "wsq/hom.hpp"
#include "wsq/matcalc.hpp"

namespace wsq {

namespace {

double max_abs(const CMatrix& a, const CMatrix& b) { return max_abs_diff(a, b); }

CheckRow row(const std::string& name, int id, int dim, int cutoff, double err, double tol) {
  return CheckRow{name, id, dim, cutoff, err, tol, std::isfinite(err) && err <= tol};
}

// T padded so a column shift by q keeps every entry: T_big(o+n, o+m) = T(n, m)
CMatrix pad_for_shift(const CMatrix& T, int q) {
  const int d = static_cast<int>(T.rows());
  const int size = d + std::abs(q);
  const int o = std::max(q, 0);
  CMatrix big = CMatrix::Zero(size, size);
  big.block(o, o, d, d) = T;
  return big;
}

}  // namespace

bool OracleReport::all_pass() const {
  for (const auto& r : rows)
    if (!r.pass) return false;
  return true;
}

double OracleReport::max_error(const std::string& prefix) const {
  double m = 0.0;
  for (const auto& r : rows)
    if (r.check.rfind(prefix, 0) == 0) m = std::max(m, r.max_abs_error);
  return m;
}

bool OracleReport::pass(const std::string& prefix) const {
  bool any = false;
  for (const auto& r : rows) {
    if (r.check.rfind(prefix, 0) != 0) continue;
    any = true;
    if (!r.pass) return false;
  }
  return any;
}

std::vector<CMatrix> random_betas(std::uint64_t seed, int cases, int max_dim, double beta_max) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<CMatrix> out;
  for (int i = 0; i < cases; ++i) {
    const int d = 1 + i % max_dim;
    CMatrix r(d, d);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) r(a, b) = std::polar(unit(rng), 2.0 * kPi * unit(rng));
    const double peak = r.cwiseAbs().maxCoeff();
    const double scale = beta_max * (0.05 + 0.95 * unit(rng));
    out.push_back(peak > 0.0 ? CMatrix(r * (scale / peak)) : CMatrix(r));
  }
  return out;
}

OracleReport run_oracle_checks(const OracleCheckOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  OracleReport rep;
  const std::vector<CMatrix> betas = random_betas(opt.seed, opt.cases, opt.max_dim, opt.beta_max);
  // LeakageExceeded means the truncated space cannot represent the state;
  // the remedy is a larger cutoff
  const auto build = [&](const CMatrix& b, Regime regime) {
    const int scale = regime == Regime::Degenerate ? 2 : 1;
    for (int cut = scale * opt.cutoff;; ++cut) {
      try {
        FockState st = build_squeezed_state(b, cut, regime, opt.leakage_tol);
        if (cut > scale * opt.cutoff) ++rep.escalations;
        return st;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::LeakageExceeded || cut >= scale * opt.max_cutoff) throw;
      }
    }
  };
  const auto lib_side = [&](const CMatrix& b) {
    CMatrix c = b;
    if (opt.corrupt) c(0, 0) += cplx(0.05, 0.0);
    return c;
  };

  for (int id = 0; id < static_cast<int>(betas.size()); ++id) {
    const CMatrix& beta = betas[id];
    const int d = static_cast<int>(beta.rows());
    const CMatrix lib = lib_side(beta);

    const FockState st = build(beta, Regime::Nondegenerate);
    const MomentSet om = oracle_moments(st);
    const MomentSet lm = moments(lib, Regime::Nondegenerate);
    const double em = std::max({max_abs(lm.Na, om.Na), max_abs(lm.Nb, om.Nb), max_abs(lm.Mab, om.Mab)});
    rep.rows.push_back(row("moments_nondegenerate", id, d, st.cutoff, em, 1e-6));

    const DisentangledSet ds = disentangle(lib);
    rep.rows.push_back(row("vacuum_overlap", id, d, st.cutoff, std::abs(cplx(ds.detW, 0.0) - oracle_vacuum_amplitude(st)), 1e-6));

    const OraclePairResult op = oracle_pair_probs(st, 4);
    double ep = 0.0;
    for (int s = 0; s <= 4; ++s) ep = std::max(ep, std::abs(pair_probability(lib, s) - op.dist.probs[s]));
    rep.rows.push_back(row("pair_probability", id, d, st.cutoff, ep, 1e-6));
    rep.rows.push_back(row("projector_algebra", id, d, st.cutoff, op.projector_error, 1e-10));

    const CMatrix sym = 0.5 * (beta + beta.transpose());
    const FockState sd = build(sym, Regime::Degenerate);
    const MomentSet odm = oracle_moments(sd);
    const MomentSet ldm = moments(lib_side(sym), Regime::Degenerate);
    rep.rows.push_back(
        row("moments_degenerate", id, d, sd.cutoff, std::max(max_abs(ldm.Nd, odm.Nd), max_abs(ldm.Md, odm.Md)), 1e-6));

    if (d == 2) {
      const FockState hs = build(sym, Regime::Nondegenerate);
      const DisentangledSet hd = disentangle(lib_side(sym));
      for (int q : {0, 3}) {
        const ShiftedT sh = shift_T(pad_for_shift(hd.T, q), q);
        const double lib_p = hom_probability(sh.T, hd.detW);
        const double orc_p = oracle_hom(hs, q, d + std::abs(q));
        rep.rows.push_back(row("hom_q" + std::to_string(q), id, d, hs.cutoff, std::abs(lib_p - orc_p), 1e-5));
      }
      // disjoint supports: the large-delay limit
      CMatrix padded = CMatrix::Zero(d + 2, d + 2);
      padded.block(1, 1, d, d) = lib_side(sym);
      const double pmax = hom_max(padded, hd.detW);
      rep.rows.push_back(row("hom_max", id, d, hs.cutoff, std::abs(pmax - oracle_hom(hs, d, 2 * d)), 1e-6));

      const ChargeVarianceResult cv = charge_variance_extrema(moments(lib_side(sym), Regime::Degenerate));
      const CVector xi = cv.lo_coefficients(true);
      rep.rows.push_back(
          row("quadrature_variance", id, d, sd.cutoff, std::abs(oracle_quadrature_variance(sd, xi) - cv.sigma2_min), 1e-5));
    }
  }

  {
    const double r = 0.3;
    CMatrix b(1, 1);
    b(0, 0) = r;
    const FockState st = build_squeezed_state(b, 10, Regime::Nondegenerate, opt.leakage_tol);
    const OraclePairResult op = oracle_pair_probs(st, 6);
    const double sech2 = 1.0 / (std::cosh(r) * std::cosh(r));
    const double t2 = std::tanh(r) * std::tanh(r);
    double e = 0.0;
    for (int s = 0; s <= 6; ++s) e = std::max(e, std::abs(op.dist.probs[s] - sech2 * std::pow(t2, s)));
    rep.rows.push_back(row("geometric_law", -1, 1, 10, e, 1e-8));
  }

  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace wsq
