#include "wsq/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/SparseCore>

#include "wsq/error.hpp"

namespace wsq {

namespace {

using Sparse = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;
using Occ = std::vector<std::uint8_t>;

void enumerate(FockState& st, Occ& cur, int mode) {
  const int L = st.levels();
  if (mode == st.modes()) {
    int sa = 0, sb = 0;
    for (int i = 0; i < st.n_signal; ++i) sa += cur[i];
    for (int i = 0; i < st.n_idler; ++i) sb += cur[st.n_signal + i];
    const bool keep = st.regime == Regime::Nondegenerate ? sa == sb : sa % 2 == 0;
    if (keep) st.occupations.insert(st.occupations.end(), cur.begin(), cur.end());
    return;
  }
  for (int v = 0; v < L; ++v) {
    cur[mode] = static_cast<std::uint8_t>(v);
    enumerate(st, cur, mode + 1);
  }
}

// Applies a^dag (dir=+1) or a (dir=-1) to mode m of occ in place; returns the
// matrix element, or 0 when the result leaves the truncated levels.
double ladder(Occ& occ, int m, int dir, int levels) {
  const int n = occ[m];
  if (dir > 0) {
    if (n + 1 >= levels) return 0.0;
    occ[m] = static_cast<std::uint8_t>(n + 1);
    return std::sqrt(n + 1.0);
  }
  if (n == 0) return 0.0;
  occ[m] = static_cast<std::uint8_t>(n - 1);
  return std::sqrt(static_cast<double>(n));
}

Sparse generator(const FockState& st, const CMatrix& beta) {
  const int N = st.basis_size();
  const int L = st.levels();
  const int d = static_cast<int>(beta.rows());
  std::vector<Eigen::Triplet<cplx>> trip;
  Occ occ(static_cast<std::size_t>(st.modes()));
  for (int i = 0; i < N; ++i) {
    for (int n = 0; n < d; ++n) {
      for (int m = 0; m < d; ++m) {
        const cplx b = beta(n, m);
        if (b == cplx(0.0, 0.0)) continue;
        const int mode_n = n;
        const int mode_m = st.regime == Regime::Nondegenerate ? st.n_signal + m : m;
        const double pref = st.regime == Regime::Nondegenerate ? 1.0 : 0.5;
        // creation term: pref * b * A_n^dag X_m^dag
        std::copy(st.occ(i), st.occ(i) + st.modes(), occ.begin());
        double c = ladder(occ, mode_m, +1, L);
        if (c != 0.0) c *= ladder(occ, mode_n, +1, L);
        if (c != 0.0) {
          const int j = st.find(occ.data());
          if (j >= 0) trip.emplace_back(j, i, pref * b * c);
        }
        // annihilation term: -pref * conj(b) * X_m A_n
        std::copy(st.occ(i), st.occ(i) + st.modes(), occ.begin());
        c = ladder(occ, mode_n, -1, L);
        if (c != 0.0) c *= ladder(occ, mode_m, -1, L);
        if (c != 0.0) {
          const int j = st.find(occ.data());
          if (j >= 0) trip.emplace_back(j, i, -pref * std::conj(b) * c);
        }
      }
    }
  }
  Sparse G(N, N);
  G.setFromTriplets(trip.begin(), trip.end());
  return G;
}

// exp(G) v by scaling and squaring of the Taylor action.
CVector expm_action(const Sparse& G, CVector v) {
  // infinity norm bounds the spectral radius; keep each step below 1/2
  double rowmax = 0.0;
  for (int k = 0; k < G.outerSize(); ++k) {
    double acc = 0.0;
    for (Sparse::InnerIterator it(G, k); it; ++it) acc += std::abs(it.value());
    rowmax = std::max(rowmax, acc);
  }
  const int steps = std::max(1, static_cast<int>(std::ceil(rowmax / 0.5)));
  const Sparse Gs = G / static_cast<double>(steps);
  for (int s = 0; s < steps; ++s) {
    CVector term = v;
    CVector acc = v;
    for (int k = 1; k < 80; ++k) {
      term = (Gs * term) / static_cast<double>(k);
      acc += term;
      if (term.norm() < 1e-18 * acc.norm()) break;
    }
    v = acc;
  }
  return v;
}

double binom_sqrt(int n, int m) {
  // sqrt((n+m)! / (n! m!))
  return std::exp(0.5 * (std::lgamma(n + m + 1.0) - std::lgamma(n + 1.0) - std::lgamma(m + 1.0)));
}

}  // namespace

std::uint64_t FockState::key(const std::uint8_t* o) const {
  std::uint64_t k = 0;
  for (int i = modes() - 1; i >= 0; --i) k = k * static_cast<std::uint64_t>(levels()) + o[i];
  return k;
}

int FockState::find(const std::uint8_t* o) const {
  const auto it = index.find(key(o));
  return it == index.end() ? -1 : it->second;
}

FockState build_squeezed_state(const CMatrix& beta_in, int cutoff, Regime regime, double leakage_tol) {
  if (beta_in.rows() != beta_in.cols() || beta_in.rows() < 1)
    throw Error(ErrorKind::InvalidArgument, "oracle beta must be square and nonempty");
  if (!beta_in.allFinite()) throw Error(ErrorKind::NonFinite, "oracle beta has non-finite entries");
  if (cutoff < 1 || cutoff > 40) throw Error(ErrorKind::InvalidArgument, "oracle cutoff must be in [1, 40]");
  const int d = static_cast<int>(beta_in.rows());
  const int modes = regime == Regime::Nondegenerate ? 2 * d : d;
  if (modes > 8) throw Error(ErrorKind::InvalidArgument, "oracle supports at most 8 modes");
  if (modes * std::log2(cutoff + 3.0) > 40.0)
    throw Error(ErrorKind::InvalidArgument, "truncated basis too large for the oracle");
  CMatrix beta = beta_in;
  if (regime == Regime::Degenerate) {
    if ((beta - beta.transpose()).norm() > 1e-10 * std::max(beta.norm(), 1e-300))
      throw Error(ErrorKind::AsymmetricBeta, "degenerate oracle needs a symmetric beta");
    beta = 0.5 * (beta + beta.transpose());
  }

  FockState st;
  st.regime = regime;
  st.n_signal = d;
  st.n_idler = regime == Regime::Nondegenerate ? d : 0;
  st.cutoff = cutoff;
  Occ cur(static_cast<std::size_t>(st.modes()), 0);
  enumerate(st, cur, 0);
  const int N = static_cast<int>(st.occupations.size() / st.modes());
  st.index.reserve(static_cast<std::size_t>(N) * 2);
  for (int i = 0; i < N; ++i) st.index.emplace(st.key(st.occ(i)), i);
  st.amplitudes = CVector::Zero(N);

  const Occ vac(static_cast<std::size_t>(st.modes()), 0);
  CVector v = CVector::Zero(N);
  v(st.find(vac.data())) = 1.0;
  v = expm_action(generator(st, beta), v);

  double leak = 0.0;
  for (int i = 0; i < N; ++i) {
    const std::uint8_t* o = st.occ(i);
    if (std::any_of(o, o + st.modes(), [&](std::uint8_t x) { return x > cutoff; })) {
      leak += std::norm(v(i));
      v(i) = 0.0;
    }
  }
  // the truncated generator is anti-Hermitian, so any norm defect is roundoff
  const double total = v.squaredNorm() + leak;
  st.amplitudes = v / std::sqrt(total);
  st.leakage = leak / total;
  if (st.leakage > leakage_tol)
    throw Error(ErrorKind::LeakageExceeded, "truncation leakage above tolerance; raise the cutoff");
  return st;
}

cplx oracle_vacuum_amplitude(const FockState& st) {
  const Occ vac(static_cast<std::size_t>(st.modes()), 0);
  const int i = st.find(vac.data());
  return i < 0 ? cplx(0.0, 0.0) : st.amplitudes(i);
}

MomentSet oracle_moments(const FockState& st) {
  const int d = st.n_signal;
  const int L = st.levels();
  const int N = st.basis_size();
  const double norm2 = st.amplitudes.squaredNorm();
  MomentSet m;
  m.regime = st.regime;
  CMatrix na = CMatrix::Zero(d, d), nb = CMatrix::Zero(d, d), mm = CMatrix::Zero(d, d);
  Occ occ(static_cast<std::size_t>(st.modes()));
  // <psi|X1 X2|psi> = sum_i conj(psi_j) c psi_i where X1 X2 |i> = c |j>
  const auto accumulate = [&](int mode1, int dir1, int mode2, int dir2, cplx& target) {
    for (int i = 0; i < N; ++i) {
      const cplx a = st.amplitudes(i);
      if (a == cplx(0.0, 0.0)) continue;
      std::copy(st.occ(i), st.occ(i) + st.modes(), occ.begin());
      double c = ladder(occ, mode2, dir2, L);
      if (c != 0.0) c *= ladder(occ, mode1, dir1, L);
      if (c == 0.0) continue;
      const int j = st.find(occ.data());
      if (j >= 0) target += std::conj(st.amplitudes(j)) * c * a;
    }
  };
  for (int n = 0; n < d; ++n) {
    for (int k = 0; k < d; ++k) {
      // <A_n^dag A_k>
      accumulate(n, +1, k, -1, na(n, k));
      if (st.regime == Regime::Nondegenerate) {
        accumulate(d + n, +1, d + k, -1, nb(n, k));
        // <A_n B_k>; removing one photon from each side stays in the sector
        accumulate(n, -1, d + k, -1, mm(n, k));
      } else {
        accumulate(n, -1, k, -1, mm(n, k));
      }
    }
  }
  if (st.regime == Regime::Nondegenerate) {
    m.Na = na / norm2;
    m.Nb = nb / norm2;
    m.Mab = mm / norm2;
  } else {
    m.Nd = na / norm2;
    m.Md = mm / norm2;
  }
  return m;
}

OraclePairResult oracle_pair_probs(const FockState& st, int s_max) {
  const int N = st.basis_size();
  std::vector<int> sector(static_cast<std::size_t>(N));
  int top = 0;
  for (int i = 0; i < N; ++i) {
    int s = 0;
    for (int k = 0; k < st.n_signal; ++k) s += st.occ(i)[k];
    if (st.regime == Regime::Degenerate) s /= 2;  // pairs in the degenerate case
    sector[i] = s;
    top = std::max(top, s);
  }
  OraclePairResult r;
  r.dist.probs.assign(static_cast<std::size_t>(s_max) + 1, 0.0);
  // P_s psi for every s present in the basis
  std::vector<CVector> proj(static_cast<std::size_t>(top) + 1, CVector::Zero(N));
  for (int i = 0; i < N; ++i) proj[sector[i]](i) = st.amplitudes(i);
  const double norm2 = st.amplitudes.squaredNorm();
  CVector sum = CVector::Zero(N);
  double err = 0.0;
  for (int s = 0; s <= top; ++s) {
    sum += proj[s];
    if (s <= s_max) r.dist.probs[s] = proj[s].squaredNorm() / norm2;
    // P_s P_s psi = P_s psi (idempotence) and P_t P_s psi = 0 for t != s
    CVector again = CVector::Zero(N);
    for (int i = 0; i < N; ++i)
      if (sector[i] == s) again(i) = proj[s](i);
    err = std::max(err, (again - proj[s]).norm());
    for (int t = s + 1; t <= top; ++t) err = std::max(err, std::abs(proj[t].dot(proj[s])));
  }
  err = std::max(err, (sum - st.amplitudes).norm());
  double total = 0.0;
  for (double p : r.dist.probs) total += p;
  r.dist.truncation_mass = std::max(0.0, 1.0 - total);
  r.projector_error = err;
  return r;
}

double oracle_hom(const FockState& st, int q, int grid_modes) {
  if (st.regime != Regime::Nondegenerate)
    throw Error(ErrorKind::InvalidArgument, "HOM oracle needs a nondegenerate state");
  const int d = st.n_signal;
  const int lo = std::min(0, -q);
  const int hi = std::max(d - 1, d - 1 - q);
  const int P = hi - lo + 1;
  if (P > grid_modes) throw Error(ErrorKind::InvalidArgument, "shift leaves the available mode positions");
  const double norm2 = st.amplitudes.squaredNorm();
  std::map<std::vector<int>, cplx> vac_c, vac_d;
  std::vector<int> nsig(static_cast<std::size_t>(P)), nidl(static_cast<std::size_t>(P));
  std::vector<int> out(static_cast<std::size_t>(P));
  cplx vac_both{0.0, 0.0};
  for (int i = 0; i < st.basis_size(); ++i) {
    const cplx a = st.amplitudes(i);
    if (a == cplx(0.0, 0.0)) continue;
    std::fill(nsig.begin(), nsig.end(), 0);
    std::fill(nidl.begin(), nidl.end(), 0);
    const std::uint8_t* o = st.occ(i);
    int total = 0;
    for (int n = 0; n < d; ++n) {
      nsig[n - lo] = o[n];
      nidl[n - q - lo] = o[d + n];
      total += o[n] + o[d + n];
    }
    if (total == 0) vac_both += a;
    double mag = 1.0;
    int sign = 1;
    for (int p = 0; p < P; ++p) {
      out[p] = nsig[p] + nidl[p];
      mag *= std::pow(std::sqrt(0.5), out[p]) * binom_sqrt(nsig[p], nidl[p]);
      if (nidl[p] % 2) sign = -sign;
    }
    vac_c[out] += a * (mag * sign);  // everything exits through port d
    vac_d[out] += a * mag;           // everything exits through port c
  }
  double pc = 0.0, pd = 0.0;
  for (const auto& kv : vac_c) pc += std::norm(kv.second);
  for (const auto& kv : vac_d) pd += std::norm(kv.second);
  return 1.0 - (pc + pd - std::norm(vac_both)) / norm2;
}

double oracle_quadrature_variance(const FockState& st, const CVector& xi) {
  if (st.regime != Regime::Degenerate)
    throw Error(ErrorKind::InvalidArgument, "quadrature oracle needs a degenerate state");
  if (xi.size() != st.n_signal) throw Error(ErrorKind::InvalidArgument, "LO coefficient count mismatch");
  const int L = st.levels();
  std::unordered_map<std::uint64_t, cplx> image;
  Occ occ(static_cast<std::size_t>(st.modes()));
  for (int i = 0; i < st.basis_size(); ++i) {
    const cplx a = st.amplitudes(i);
    if (a == cplx(0.0, 0.0)) continue;
    for (int j = 0; j < st.n_signal; ++j) {
      std::copy(st.occ(i), st.occ(i) + st.modes(), occ.begin());
      double c = ladder(occ, j, -1, L);
      if (c != 0.0) image[st.key(occ.data())] += std::conj(xi(j)) * c * a;
      std::copy(st.occ(i), st.occ(i) + st.modes(), occ.begin());
      c = ladder(occ, j, +1, L);
      if (c != 0.0) image[st.key(occ.data())] += xi(j) * c * a;
    }
  }
  double acc = 0.0;
  for (const auto& kv : image) acc += std::norm(kv.second);
  return acc / st.amplitudes.squaredNorm();
}

}  // namespace wsq
