#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wsq/linalg.hpp"

namespace wsq {

struct OracleCheckOptions {
  std::uint64_t seed = 20240601;
  int cases = 20;
  int max_dim = 3;
  double beta_max = 0.3;
  int cutoff = 8;
  int max_cutoff = 10;  // a state whose leakage exceeds leakage_tol is rebuilt
                        // with a higher cutoff, up to this value
  // Degenerate states put photons into a mode in pairs, so their per-mode
  // number distribution decays as tanh^n instead of tanh^2n; they run at twice
  // the nondegenerate cutoffs.
  double leakage_tol = 1e-8;
  bool corrupt = false;  // perturb the library-side beta (negative control)
};

struct CheckRow {
  std::string check;
  int case_id = 0;
  int dim = 0;
  int cutoff = 0;
  double max_abs_error = 0.0;
  double tolerance = 0.0;
  bool pass = true;
};

struct OracleReport {
  std::vector<CheckRow> rows;
  double seconds = 0.0;

  bool all_pass() const;
  /// Largest error among rows whose check name starts with `prefix`.
  double max_error(const std::string& prefix) const;
  bool pass(const std::string& prefix) const;
  /// Number of oracle states that needed a cutoff above the starting one.
  int escalations = 0;
};

/// Seeded complex matrices: dimension cycles through 1..max_dim, entries
/// u e^{i phi} with u, phi uniform, rescaled so max |beta_nm| is uniform in
/// [0.05, 1] * beta_max.
std::vector<CMatrix> random_betas(std::uint64_t seed, int cases, int max_dim, double beta_max);

/// Every library-vs-oracle comparison: moments (both regimes), vacuum
/// overlap, pair probabilities s <= 4, projector algebra, and on the 2-mode
/// cases HOM at q = 0, 3 and the large-delay limit plus the optimal-LO
/// quadrature variance. A scalar geometric-law check is always included.
OracleReport run_oracle_checks(const OracleCheckOptions& opt);

}  // namespace wsq
