#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wsq/jsa.hpp"
#include "wsq/wsdecomp.hpp"

namespace wsq {

/// Flat INI run configuration. Every key is optional; unknown sections or
/// keys are rejected. Lists are comma separated or linspace(a, b, n).
///
/// [model]     kind = pulsed | cw, tp, tc
/// [grid]      bandlimit = minimal | caption, oversample
/// [squeezing] beta_circ, beta_phase
/// [window]    t_j, d_j (minimal-bandlimit indices; d_j = 0 means the whole pulse)
/// [detector]  alpha, s_max, tail_tol
/// [sweep]     theta, omega (units of the minimal bandlimit), beta_circ, alpha,
///             ratio (T_p/T_c), q_min, q_max, q_step (working-grid indices)
/// [decompose] points
/// [oracle]    seed, cases, max_dim, beta_max, cutoff, leakage_tol
/// [output]    format = csv | json
struct RunConfig {
  std::string kind = "pulsed";
  double tp = 10.0;
  double tc = 1.0;

  BandlimitPreset bandlimit = BandlimitPreset::Minimal;
  int oversample = 1;

  double beta_circ = 0.1;
  double beta_phase = 0.0;

  double t_j = 0.0;
  int d_j = 0;

  double alpha = 1.0;
  int s_max = 40;
  double tail_tol = 1e-10;

  std::vector<double> theta;
  std::vector<double> omega;
  std::vector<double> beta_sweep;
  std::vector<double> alpha_sweep;
  std::vector<double> ratio_sweep;
  int q_min = 0;
  int q_max = 0;
  int q_step = 1;

  int decompose_points = 101;

  std::uint64_t seed = 20240601;
  int oracle_cases = 20;
  int oracle_max_dim = 3;
  double oracle_beta_max = 0.3;
  int oracle_cutoff = 8;
  double oracle_leakage_tol = 1e-8;

  std::string format = "csv";

  void validate() const;
  JointAmplitude model() const;
  JointAmplitude model_with_ratio(double ratio) const;
  cplx beta() const;
  std::optional<WindowSpec> window() const;
  /// Minimal-bandlimit tau of the configured model.
  double coarse_tau() const;

  /// Sorted key=value listing of every setting; the config hash covers it.
  std::string canonical() const;
  std::uint64_t hash() const;
};

RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);
/// Resolves a preset name to presets/<name>.ini (WSQ_PRESET_DIR overrides the
/// compiled-in directory).
std::string preset_path(const std::string& name);

/// FNV-1a 64-bit.
std::uint64_t fnv1a(const std::string& s);

std::vector<double> parse_list(const std::string& text);

}  // namespace wsq
