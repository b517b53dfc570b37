#include "wsq/coincidence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

#include "wsq/error.hpp"
#include "wsq/matcalc.hpp"

namespace wsq {

namespace {

constexpr int kLogSpaceAbove = 20;

void partitions_rec(int remaining, int max_part, std::vector<int>& q, std::vector<std::vector<int>>& out) {
  if (remaining == 0) {
    out.push_back(q);
    return;
  }
  for (int u = std::min(remaining, max_part); u >= 1; --u) {
    ++q[u];
    partitions_rec(remaining - u, u, q, out);
    --q[u];
  }
}

struct TanhSpectrum {
  RVector x;
  double detW;
};

TanhSpectrum tanh_spectrum(const CMatrix& betaJ) {
  const RVector sv = singular_values(betaJ);
  TanhSpectrum t;
  t.x.resize(sv.size());
  for (Eigen::Index i = 0; i < t.x.size(); ++i) {
    const double th = std::tanh(sv(i));
    t.x(i) = th * th;
  }
  t.detW = det_sech(sv);
  return t;
}

// p_u = sum_i x_i^u for u = 1..s
std::vector<double> power_sums(const RVector& x, int s) {
  std::vector<double> p(static_cast<std::size_t>(s) + 1, 0.0);
  RVector pw = x;
  for (int u = 1; u <= s; ++u) {
    p[u] = pw.sum();
    pw = pw.cwiseProduct(x);
  }
  return p;
}

}  // namespace

void DetectorModel::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(ErrorKind::AlphaOutOfRange, "alpha must lie in [0, 1]");
  if (s_max < 1) throw Error(ErrorKind::InvalidArgument, "s_max must be positive");
  if (!(tail_tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tail_tol must be positive");
}

double detection_prob(int x, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(ErrorKind::AlphaOutOfRange, "alpha must lie in [0, 1]");
  if (x < 0) throw Error(ErrorKind::InvalidArgument, "photon number must be nonnegative");
  if (x == 0) return 0.0;
  // 1 - (1-alpha)^x without cancellation for small alpha
  if (alpha == 1.0) return 1.0;
  return -std::expm1(x * std::log1p(-alpha));
}

const std::vector<std::vector<int>>& integer_partitions(int s) {
  if (s < 1) throw Error(ErrorKind::InvalidArgument, "partitions need s >= 1");
  static std::mutex mu;
  static std::map<int, std::vector<std::vector<int>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(s);
  if (it != cache.end()) return it->second;
  std::vector<std::vector<int>> out;
  std::vector<int> q(static_cast<std::size_t>(s) + 1, 0);
  partitions_rec(s, s, q, out);
  return cache.emplace(s, std::move(out)).first->second;
}

double PairDistribution::mean() const {
  double acc = 0.0;
  for (std::size_t s = 0; s < probs.size(); ++s) acc += static_cast<double>(s) * probs[s];
  return acc;
}

double pair_probability(const RVector& x, double detW, int s) {
  if (s < 0) throw Error(ErrorKind::InvalidArgument, "s must be nonnegative");
  const double w2 = detW * detW;
  if (s == 0) return w2;
  const std::vector<double> p = power_sums(x, s);
  const auto& parts = integer_partitions(s);
  if (s <= kLogSpaceAbove) {
    double acc = 0.0;
    for (const auto& q : parts) {
      double term = 1.0;
      for (int u = 1; u <= s; ++u) {
        if (q[u] == 0) continue;
        term *= std::pow(p[u] / u, q[u]) / std::tgamma(q[u] + 1.0);
      }
      acc += term;
    }
    return w2 * acc;
  }
  std::vector<double> logs;
  logs.reserve(parts.size());
  for (const auto& q : parts) {
    double lt = 0.0;
    for (int u = 1; u <= s && std::isfinite(lt); ++u) {
      if (q[u] == 0) continue;
      if (p[u] <= 0.0) {
        lt = -std::numeric_limits<double>::infinity();
        break;
      }
      lt += q[u] * (std::log(p[u]) - std::log(static_cast<double>(u))) - std::lgamma(q[u] + 1.0);
    }
    logs.push_back(lt);
  }
  const double mx = *std::max_element(logs.begin(), logs.end());
  if (!std::isfinite(mx)) return 0.0;
  double acc = 0.0;
  for (double l : logs) acc += std::exp(l - mx);
  return std::exp(std::log(w2) + mx + std::log(acc));
}

double pair_probability(const CMatrix& betaJ, int s) {
  const TanhSpectrum t = tanh_spectrum(betaJ);
  return pair_probability(t.x, t.detW, s);
}

PairDistribution pair_distribution(const RVector& x, double detW, int s_max) {
  if (s_max < 0) throw Error(ErrorKind::InvalidArgument, "s_max must be nonnegative");
  const std::vector<double> p = power_sums(x, s_max);
  PairDistribution d;
  d.probs.assign(static_cast<std::size_t>(s_max) + 1, 0.0);
  d.probs[0] = detW * detW;
  for (int s = 1; s <= s_max; ++s) {
    double acc = 0.0;
    for (int u = 1; u <= s; ++u) acc += p[u] * d.probs[s - u];
    d.probs[s] = acc / s;
  }
  double total = 0.0;
  for (double v : d.probs) total += v;
  d.truncation_mass = std::max(0.0, 1.0 - total);
  return d;
}

PairDistribution pair_distribution(const CMatrix& betaJ, int s_max) {
  const TanhSpectrum t = tanh_spectrum(betaJ);
  return pair_distribution(t.x, t.detW, s_max);
}

CoincidenceProbs coincidence_probs(const PairDistribution& dist, double alpha) {
  CoincidenceProbs c;
  double single = 0.0;
  for (std::size_t s = 1; s < dist.probs.size(); ++s) {
    const double D = detection_prob(static_cast<int>(s), alpha);
    c.P_HH += D * D * dist.probs[s];
    single += D * dist.probs[s];
  }
  c.P_HV = single * single;
  c.truncation_mass = dist.truncation_mass;
  return c;
}

CoincidenceProbs coincidence_probs(const CMatrix& betaJ, const DetectorModel& det) {
  det.validate();
  const PairDistribution dist = pair_distribution(betaJ, det.s_max);
  if (dist.truncation_mass > det.tail_tol)
    throw Error(ErrorKind::TruncationFailure, "pair distribution tail exceeds tail_tol at s_max");
  return coincidence_probs(dist, det.alpha);
}

CoincidenceProbs coincidence_probs(const CMatrix& betaH, const CMatrix& betaV, const DetectorModel& det) {
  det.validate();
  const PairDistribution dh = pair_distribution(betaH, det.s_max);
  const PairDistribution dv = pair_distribution(betaV, det.s_max);
  if (std::max(dh.truncation_mass, dv.truncation_mass) > det.tail_tol)
    throw Error(ErrorKind::TruncationFailure, "pair distribution tail exceeds tail_tol at s_max");
  CoincidenceProbs c = coincidence_probs(dh, det.alpha);
  double sv = 0.0, sh = 0.0;
  for (std::size_t s = 1; s < dh.probs.size(); ++s) {
    const double D = detection_prob(static_cast<int>(s), det.alpha);
    sh += D * dh.probs[s];
    sv += D * dv.probs[s];
  }
  c.P_HV = sh * sv;
  c.truncation_mass = std::max(dh.truncation_mass, dv.truncation_mass);
  return c;
}

CoincidenceProbs small_alpha_probs(const CMatrix& betaJ, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(ErrorKind::AlphaOutOfRange, "alpha must lie in [0, 1]");
  const RVector sv = singular_values(betaJ);
  double n = 0.0, n4 = 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    const double s = std::sinh(sv(i));
    n += s * s;
    n4 += s * s * s * s;
  }
  CoincidenceProbs c;
  c.P_HH = alpha * alpha * (n + n * n + n4);
  c.P_HV = alpha * alpha * n * n;
  return c;
}

WeakWindowProbs weak_window_probs(double N_J, double alpha) {
  const double d1 = detection_prob(1, alpha);
  const double d2 = detection_prob(2, alpha);
  WeakWindowProbs w;
  w.P_HH = d1 * d1 * N_J + (0.5 * d2 * d2 - d1 * d1) * N_J * N_J;
  w.P_HV = d1 * d1 * N_J * N_J;
  w.outside_weak_regime = N_J > 0.1;
  return w;
}

double visibility(double P_HH, double P_HV) {
  const double den = P_HH + P_HV;
  if (!(den > 0.0)) throw Error(ErrorKind::BothZero, "visibility undefined when both probabilities vanish");
  return (P_HH - P_HV) / den;
}

std::vector<VisibilityRow> visibility_sweep(const CMatrix& r, const std::vector<double>& beta_circs,
                                            const std::vector<double>& alphas, int s_max,
                                            double tail_tol, Execution exec) {
  const std::size_t na = alphas.size();
  return parallel_map(
      beta_circs.size() * na,
      [&](std::size_t k) {
        const double bc = beta_circs[k / na];
        const double a = alphas[k % na];
        const CMatrix beta = bc * r;
        DetectorModel det{a, s_max, tail_tol};
        const CoincidenceProbs exact = coincidence_probs(beta, det);
        VisibilityRow row{};
        row.beta_circ = bc;
        row.alpha = a;
        const RVector sv = singular_values(beta);
        for (Eigen::Index i = 0; i < sv.size(); ++i) {
          const double s = std::sinh(sv(i));
          row.N_J += s * s;
        }
        row.P_HH = exact.P_HH;
        row.P_HV = exact.P_HV;
        row.visibility = visibility(exact.P_HH, exact.P_HV);
        if (a < 1.0 && bc != 0.0) {
          const CoincidenceProbs c2 = small_alpha_probs(beta, a);
          row.small_alpha_visibility = visibility(c2.P_HH, c2.P_HV);
          row.residual = std::abs(row.visibility - row.small_alpha_visibility);
        } else {
          row.small_alpha_visibility = std::numeric_limits<double>::quiet_NaN();
          row.residual = std::numeric_limits<double>::quiet_NaN();
        }
        return row;
      },
      exec);
}

}  // namespace wsq
