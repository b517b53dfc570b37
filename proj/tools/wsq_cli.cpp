// wsq: figure-data and oracle-check front end.
#include <cmath>
#include <iostream>
#include <limits>
#include <string>

#include <CLI11.hpp>

#include "wsq/coincidence.hpp"
#include "wsq/config.hpp"
#include "wsq/error.hpp"
#include "wsq/hom.hpp"
#include "wsq/homodyne.hpp"
#include "wsq/jsa.hpp"
#include "wsq/oracle_check.hpp"
#include "wsq/output.hpp"
#include "wsq/parallel.hpp"
#include "wsq/wsdecomp.hpp"

using namespace wsq;

namespace {

struct Context {
  RunConfig cfg;
  std::string out_dir = "out";
  std::string command;

  std::string emit(const Table& t, const std::string& stem) const {
    const std::string p = write_table(t, out_dir, stem, cfg.format, cfg.hash(), command);
    std::cout << "wrote " << p << '\n';
    return p;
  }
};

int cmd_decompose(const Context& cx) {
  const RunConfig& c = cx.cfg;
  const JointAmplitude model = c.model();
  const WindowedBeta wb = windowed_beta(model, c.beta(), c.bandlimit, c.oversample, c.window());
  const int np = c.decompose_points;

  Table spec{{"w1_over_omega", "w2_over_omega", "abs_gamma_sq"}, {}};
  const double omega = 2.0 * kPi / c.coarse_tau();
  double peak = 0.0;
  std::vector<double> vals;
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < np; ++j) {
      const double w1 = -omega + 2.0 * omega * i / (np - 1);
      const double w2 = -omega + 2.0 * omega * j / (np - 1);
      const double v = std::norm(evaluate_jsa(model, w1, w2));
      vals.push_back(v);
      peak = std::max(peak, v);
    }
  for (int i = 0, k = 0; i < np; ++i)
    for (int j = 0; j < np; ++j, ++k)
      spec.add({-1.0 + 2.0 * i / (np - 1), -1.0 + 2.0 * j / (np - 1), vals[k] / peak});
  cx.emit(spec, "jsa_spectral");

  Table temp{{"t1", "t2", "abs_gamma_bar_sq"}, {}};
  const double extent = model.is_cw() ? 0.5 * wb.grid.range.size() * wb.grid.tau : 4.0 * c.tp;
  vals.clear();
  peak = 0.0;
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < np; ++j) {
      const double v = std::norm(evaluate_jta(model, -extent + 2.0 * extent * i / (np - 1),
                                              -extent + 2.0 * extent * j / (np - 1)));
      vals.push_back(v);
      peak = std::max(peak, v);
    }
  for (int i = 0, k = 0; i < np; ++i)
    for (int j = 0; j < np; ++j, ++k)
      temp.add({-extent + 2.0 * extent * i / (np - 1), -extent + 2.0 * extent * j / (np - 1), vals[k] / peak});
  cx.emit(temp, "jta_temporal");

  Table rt{{"n", "m", "r_re", "r_im", "r_abs", "in_window"}, {}};
  const CMatrix& b = wb.beta.values;
  const double scale = std::abs(wb.beta.beta_circ) > 0.0 ? 1.0 / std::abs(wb.beta.beta_circ) : 0.0;
  const CMatrix r = scale > 0.0 ? CMatrix(b * scale) : sample_r_matrix(model, wb.grid);
  for (int i = 0; i < r.rows(); ++i)
    for (int j = 0; j < r.cols(); ++j) {
      const int n = wb.beta.first_index + i, m = wb.beta.first_index + j;
      const long long inside = wb.part.range.contains(n) && wb.part.range.contains(m) ? 1 : 0;
      rt.add({static_cast<long long>(n), static_cast<long long>(m), r(i, j).real(), r(i, j).imag(),
              std::abs(r(i, j)), inside});
    }
  cx.emit(rt, "r_matrix");
  std::cout << "window neglected_mass=" << wb.part.neglected_mass << '\n';
  return 0;
}

int cmd_homodyne(const Context& cx) {
  const RunConfig& c = cx.cfg;
  const JointAmplitude model = c.model();
  const auto win = c.window();
  if (!c.omega.empty()) {
    const WindowedBeta wb = windowed_beta(model, c.beta(), c.bandlimit, c.oversample, win);
    const double omega = 2.0 * kPi / c.coarse_tau();
    std::vector<double> w;
    for (double x : c.omega) w.push_back(x * omega);
    const auto rows = spectrum_sweep(wb.part.betaJ, wb.grid, w);
    Table t{{"omega_over_Omega", "sigma2_theta0", "sigma2_theta_half_pi", "db_theta0", "db_theta_half_pi"}, {}};
    for (std::size_t i = 0; i < rows.size(); ++i)
      t.add({c.omega[i], rows[i].sigma2_theta0, rows[i].sigma2_theta_half_pi, variance_db(rows[i].sigma2_theta0),
             variance_db(rows[i].sigma2_theta_half_pi)});
    cx.emit(t, "spectrum");
  }
  if (!c.beta_sweep.empty()) {
    Table t{{"model", "ratio", "beta_circ", "db_min", "db_max", "db_spectrum_w0"}, {}};
    std::vector<double> ratios = c.ratio_sweep;
    const bool cw = model.is_cw();
    if (ratios.empty() && !cw) ratios.push_back(c.tp / c.tc);
    const auto run = [&](const JointAmplitude& m, const std::string& label, double ratio) {
      const WindowedBeta wb = windowed_beta(m, cplx(1.0, 0.0), c.bandlimit, c.oversample, win);
      const CMatrix r = wb.part.betaJ / std::abs(wb.beta.beta_circ);
      const auto rows = strength_sweep(r * (1.0 / c.oversample), wb.grid, c.beta_sweep);
      for (const auto& row : rows)
        t.add({label, ratio, row.beta_circ, row.db_min, row.db_max,
               label == "cw" ? row.db_spectrum : std::numeric_limits<double>::quiet_NaN()});
    };
    if (cw) {
      run(model, "cw", std::numeric_limits<double>::infinity());
    } else {
      for (double ratio : ratios) run(c.model_with_ratio(ratio), "pulsed", ratio);
      // the CW spectral reference plotted alongside the pulsed curves
      if (win) run(double_gaussian_cw(c.tc), "cw", std::numeric_limits<double>::infinity());
    }
    cx.emit(t, "strength");
  }
  return 0;
}

int cmd_coincidence(const Context& cx) {
  const RunConfig& c = cx.cfg;
  const JointAmplitude model = c.model();
  const auto win = c.window();
  const std::vector<double> betas = c.beta_sweep.empty() ? std::vector<double>{c.beta_circ} : c.beta_sweep;
  const WindowedBeta wb = windowed_beta(model, cplx(1.0, 0.0), c.bandlimit, c.oversample, win);
  const CMatrix r = wb.part.betaJ * (std::polar(1.0, c.beta_phase) / std::abs(wb.beta.beta_circ) / double(c.oversample));

  Table dist{{"beta_circ", "s", "P_s"}, {}};
  Table summary{{"beta_circ", "N_J", "sum_P", "mean_s", "P_0", "one_minus_detW_sq", "truncation_mass"}, {}};
  for (double bc : betas) {
    const CMatrix beta = bc * r;
    const PairDistribution d = pair_distribution(beta, c.s_max);
    for (int s = 0; s <= c.s_max; ++s) dist.add({bc, static_cast<long long>(s), d.probs[s]});
    double sum = 0.0;
    for (double p : d.probs) sum += p;
    summary.add({bc, pair_count(beta), sum, d.mean(), d.probs[0], 1.0 - d.probs[0], d.truncation_mass});
  }
  cx.emit(dist, "pair_distribution");
  cx.emit(summary, "pair_summary");

  const std::vector<double> alphas = c.alpha_sweep.empty() ? std::vector<double>{c.alpha} : c.alpha_sweep;
  std::vector<double> positive;
  for (double b : betas)
    if (b > 0.0) positive.push_back(b);
  const auto rows = visibility_sweep(r, positive, alphas, c.s_max, c.tail_tol);
  Table vis{{"beta_circ", "alpha", "N_J", "P_HH", "P_HV", "visibility", "visibility_small_alpha", "residual"}, {}};
  for (const auto& v : rows)
    vis.add({v.beta_circ, v.alpha, v.N_J, v.P_HH, v.P_HV, v.visibility, v.small_alpha_visibility, v.residual});
  cx.emit(vis, "visibility");
  return 0;
}

int cmd_hom(const Context& cx) {
  const RunConfig& c = cx.cfg;
  const std::vector<double> betas = c.beta_sweep.empty() ? std::vector<double>{c.beta_circ} : c.beta_sweep;
  const bool cw = c.kind == "cw";
  std::vector<double> ratios = c.ratio_sweep;
  if (ratios.empty()) ratios.push_back(cw ? std::numeric_limits<double>::infinity() : c.tp / c.tc);

  Table curve{{"ratio", "beta_circ", "q", "tau_H_over_tau", "P_HOM", "P_normalized"}, {}};
  Table vis{{"ratio", "beta_circ", "p_min", "p_max", "p_max_source", "visibility"}, {}};
  for (double ratio : ratios) {
    for (double bc : betas) {
      HomSetup s;
      s.model = cw ? c.model() : c.model_with_ratio(ratio);
      s.beta_circ = std::polar(bc, c.beta_phase);
      s.window = c.window();
      s.oversample_k = c.oversample;
      s.q_range = IndexRange{c.q_min, c.q_max};
      s.q_step = c.q_step;
      s.preset = c.bandlimit;
      const HomCurve hc = hom_dip_curve(s);
      const auto norm = hc.normalized();
      for (std::size_t i = 0; i < hc.probs.size(); ++i)
        curve.add({ratio, bc, static_cast<long long>(hc.shifts[i]),
                   static_cast<double>(hc.shifts[i]) / c.oversample, hc.probs[i], norm[i]});
      const char* src = hc.p_max_source == PmaxSource::ClosedForm ? "closed_form"
                        : hc.p_max_source == PmaxSource::Plateau  ? "plateau"
                                                                   : "curve_maximum";
      vis.add({ratio, bc, hc.p_min, hc.p_max, std::string(src), hc.visibility});
    }
  }
  cx.emit(curve, "hom_curve");
  cx.emit(vis, "hom_visibility");
  return 0;
}

int cmd_oracle_check(const Context& cx, bool corrupt) {
  const RunConfig& c = cx.cfg;
  OracleCheckOptions o;
  o.seed = c.seed;
  o.cases = c.oracle_cases;
  o.max_dim = c.oracle_max_dim;
  o.beta_max = c.oracle_beta_max;
  o.cutoff = c.oracle_cutoff;
  o.leakage_tol = c.oracle_leakage_tol;
  o.corrupt = corrupt;
  const OracleReport rep = run_oracle_checks(o);
  Table t{{"check", "case", "dim", "cutoff", "max_abs_error", "tolerance", "pass"}, {}};
  for (const auto& r : rep.rows)
    t.add({r.check, static_cast<long long>(r.case_id), static_cast<long long>(r.dim),
           static_cast<long long>(r.cutoff), r.max_abs_error,
           r.tolerance, std::string(r.pass ? "pass" : "FAIL")});
  cx.emit(t, "oracle_report");
  int failed = 0;
  for (const auto& r : rep.rows) failed += r.pass ? 0 : 1;
  std::cout << rep.rows.size() - failed << "/" << rep.rows.size() << " oracle comparisons passed in "
            << rep.seconds << " s (" << rep.escalations << " oracle states rebuilt above cutoff " << o.cutoff
            << ")\n";
  return rep.all_pass() ? 0 : 1;
}

int exit_code(const Error& e) { return e.kind() == ErrorKind::Io ? 2 : 1; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Whittaker-Shannon squeezed-light numerics"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path, preset, out_dir = "out";
  int threads = 0;
  long long seed = -1;
  bool corrupt = false;
  app.add_option("--config", config_path, "INI configuration file");
  app.add_option("--preset", preset, "named preset (fig1, fig3, fig5, fig6, fig7, fig8, fig9, fig10)");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--threads", threads, "worker threads (0 = OpenMP default)")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", seed, "seed for random test matrices (overrides the config)");

  auto* dec = app.add_subcommand("decompose", "joint amplitudes and the r_nm matrix");
  auto* hd = app.add_subcommand("homodyne", "CW variance spectrum and squeezing-strength sweep");
  auto* co = app.add_subcommand("coincidence", "pair distributions and polarization visibilities");
  auto* hm = app.add_subcommand("hom", "Hong-Ou-Mandel dip curves and visibilities");
  auto* oc = app.add_subcommand("oracle-check", "compare against the truncated Fock-space oracle");
  oc->add_flag("--corrupt-beta", corrupt, "perturb the library-side beta (negative control)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    Context cx;
    if (!config_path.empty() && !preset.empty()) throw Error(ErrorKind::Config, "use either --config or --preset");
    if (!preset.empty()) config_path = preset_path(preset);
    if (!config_path.empty()) cx.cfg = load_config(config_path);
    if (seed >= 0) cx.cfg.seed = static_cast<std::uint64_t>(seed);
    cx.out_dir = out_dir;
    set_threads(threads);
    if (dec->parsed()) return cx.command = "decompose", cmd_decompose(cx);
    if (hd->parsed()) return cx.command = "homodyne", cmd_homodyne(cx);
    if (co->parsed()) return cx.command = "coincidence", cmd_coincidence(cx);
    if (hm->parsed()) return cx.command = "hom", cmd_hom(cx);
    if (oc->parsed()) return cx.command = "oracle-check", cmd_oracle_check(cx, corrupt);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
