#include "wsq/config.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "wsq/error.hpp"

namespace wsq {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"model", {"kind", "tp", "tc"}},
      {"grid", {"bandlimit", "oversample"}},
      {"squeezing", {"beta_circ", "beta_phase"}},
      {"window", {"t_j", "d_j"}},
      {"detector", {"alpha", "s_max", "tail_tol"}},
      {"sweep", {"theta", "omega", "beta_circ", "alpha", "ratio", "q_min", "q_max", "q_step"}},
      {"decompose", {"points"}},
      {"oracle", {"seed", "cases", "max_dim", "beta_max", "cutoff", "leakage_tol"}},
      {"output", {"format"}},
  };
  return s;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw Error(ErrorKind::Config, "key '" + key + "' expects a number, got '" + v + "'");
  }
}

long long to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long long d = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw Error(ErrorKind::Config, "key '" + key + "' expects an integer, got '" + v + "'");
  }
}

std::string join(const std::vector<double>& xs) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
  return os.str();
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::Config, what);
}

}  // namespace

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<double> parse_list(const std::string& text) {
  std::string t = boost::algorithm::trim_copy(text);
  std::vector<double> out;
  if (t.empty()) return out;
  if (boost::algorithm::starts_with(t, "linspace(") && boost::algorithm::ends_with(t, ")")) {
    std::vector<std::string> parts;
    const std::string inner = t.substr(9, t.size() - 10);
    boost::algorithm::split(parts, inner, boost::is_any_of(","));
    require(parts.size() == 3, "linspace needs (start, stop, count)");
    for (auto& p : parts) boost::algorithm::trim(p);
    const double a = to_double("linspace", parts[0]);
    const double b = to_double("linspace", parts[1]);
    const long long n = to_int("linspace", parts[2]);
    require(n >= 1 && n <= 1000000, "linspace count out of range");
    for (long long i = 0; i < n; ++i)
      out.push_back(n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    return out;
  }
  std::vector<std::string> parts;
  boost::algorithm::split(parts, t, boost::is_any_of(","));
  for (auto& p : parts) {
    boost::algorithm::trim(p);
    if (!p.empty()) out.push_back(to_double("list", p));
  }
  return out;
}

RunConfig parse_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorKind::Config, e.what());
  }
  RunConfig c;
  for (const auto& [section, body] : tree) {
    if (!body.data().empty()) throw Error(ErrorKind::Config, "key outside any section: '" + section + "'");
    const auto it = schema().find(section);
    if (it == schema().end()) throw Error(ErrorKind::Config, "unknown section [" + section + "]");
    for (const auto& [key, node] : body) {
      if (!it->second.count(key)) throw Error(ErrorKind::Config, "unknown key '" + section + "." + key + "'");
      const std::string v = boost::algorithm::trim_copy(node.get_value<std::string>());
      const std::string full = section + "." + key;
      if (full == "model.kind") c.kind = v;
      else if (full == "model.tp") c.tp = to_double(full, v);
      else if (full == "model.tc") c.tc = to_double(full, v);
      else if (full == "grid.bandlimit") {
        if (v == "minimal") c.bandlimit = BandlimitPreset::Minimal;
        else if (v == "caption") c.bandlimit = BandlimitPreset::GaussianCaption;
        else throw Error(ErrorKind::Config, "grid.bandlimit must be minimal or caption");
      } else if (full == "grid.oversample") c.oversample = static_cast<int>(to_int(full, v));
      else if (full == "squeezing.beta_circ") c.beta_circ = to_double(full, v);
      else if (full == "squeezing.beta_phase") c.beta_phase = to_double(full, v);
      else if (full == "window.t_j") c.t_j = to_double(full, v);
      else if (full == "window.d_j") c.d_j = static_cast<int>(to_int(full, v));
      else if (full == "detector.alpha") c.alpha = to_double(full, v);
      else if (full == "detector.s_max") c.s_max = static_cast<int>(to_int(full, v));
      else if (full == "detector.tail_tol") c.tail_tol = to_double(full, v);
      else if (full == "sweep.theta") c.theta = parse_list(v);
      else if (full == "sweep.omega") c.omega = parse_list(v);
      else if (full == "sweep.beta_circ") c.beta_sweep = parse_list(v);
      else if (full == "sweep.alpha") c.alpha_sweep = parse_list(v);
      else if (full == "sweep.ratio") c.ratio_sweep = parse_list(v);
      else if (full == "sweep.q_min") c.q_min = static_cast<int>(to_int(full, v));
      else if (full == "sweep.q_max") c.q_max = static_cast<int>(to_int(full, v));
      else if (full == "sweep.q_step") c.q_step = static_cast<int>(to_int(full, v));
      else if (full == "decompose.points") c.decompose_points = static_cast<int>(to_int(full, v));
      else if (full == "oracle.seed") c.seed = static_cast<std::uint64_t>(to_int(full, v));
      else if (full == "oracle.cases") c.oracle_cases = static_cast<int>(to_int(full, v));
      else if (full == "oracle.max_dim") c.oracle_max_dim = static_cast<int>(to_int(full, v));
      else if (full == "oracle.beta_max") c.oracle_beta_max = to_double(full, v);
      else if (full == "oracle.cutoff") c.oracle_cutoff = static_cast<int>(to_int(full, v));
      else if (full == "oracle.leakage_tol") c.oracle_leakage_tol = to_double(full, v);
      else if (full == "output.format") c.format = v;
    }
  }
  c.validate();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open config '" + path + "'");
  return parse_config(in);
}

std::string preset_path(const std::string& name) {
  if (name.empty() || name.find('/') != std::string::npos || name.find("..") != std::string::npos)
    throw Error(ErrorKind::Config, "invalid preset name '" + name + "'");
  const char* env = std::getenv("WSQ_PRESET_DIR");
  const std::filesystem::path dir = env && *env ? env : WSQ_PRESET_DIR;
  const std::filesystem::path p = dir / (name + ".ini");
  if (!std::filesystem::exists(p)) throw Error(ErrorKind::Io, "no preset named '" + name + "' in " + dir.string());
  return p.string();
}

void RunConfig::validate() const {
  require(kind == "pulsed" || kind == "cw", "model.kind must be pulsed or cw");
  require(std::isfinite(tc) && tc > 0.0, "model.tc must be positive");
  require(kind == "cw" || (std::isfinite(tp) && tp >= tc), "model.tp must be >= model.tc");
  require(oversample >= 1 && oversample <= 64, "grid.oversample must be in [1, 64]");
  require(std::isfinite(beta_circ) && beta_circ >= 0.0 && beta_circ <= 5.0, "squeezing.beta_circ must be in [0, 5]");
  require(std::isfinite(beta_phase), "squeezing.beta_phase must be finite");
  require(std::isfinite(t_j), "window.t_j must be finite");
  require(d_j >= 0 && d_j <= 20000, "window.d_j must be in [0, 20000]");
  require(kind == "pulsed" || d_j >= 1, "CW models need window.d_j >= 1");
  require(alpha >= 0.0 && alpha <= 1.0, "detector.alpha must be in [0, 1]");
  require(s_max >= 1 && s_max <= 100000, "detector.s_max must be in [1, 100000]");
  require(tail_tol > 0.0 && tail_tol < 1.0, "detector.tail_tol must be in (0, 1)");
  for (double a : alpha_sweep) require(a > 0.0 && a <= 1.0, "sweep.alpha entries must be in (0, 1]");
  for (double b : beta_sweep) require(std::isfinite(b) && b >= 0.0 && b <= 5.0, "sweep.beta_circ entries must be in [0, 5]");
  for (double r : ratio_sweep) require(std::isfinite(r) && r >= 1.0, "sweep.ratio entries must be >= 1");
  for (double w : omega) require(std::isfinite(w), "sweep.omega entries must be finite");
  for (double t : theta) require(std::isfinite(t), "sweep.theta entries must be finite");
  require(q_min <= q_max, "sweep.q_min must not exceed sweep.q_max");
  require(q_step >= 1, "sweep.q_step must be positive");
  require(decompose_points >= 2 && decompose_points <= 2001, "decompose.points must be in [2, 2001]");
  require(oracle_cases >= 0 && oracle_cases <= 1000, "oracle.cases must be in [0, 1000]");
  require(oracle_max_dim >= 1 && oracle_max_dim <= 4, "oracle.max_dim must be in [1, 4]");
  require(oracle_beta_max >= 0.0 && oracle_beta_max <= 0.5, "oracle.beta_max must be in [0, 0.5]");
  require(oracle_cutoff >= 4 && oracle_cutoff <= 12, "oracle.cutoff must be in [4, 12]");
  require(oracle_leakage_tol > 0.0, "oracle.leakage_tol must be positive");
  require(format == "csv" || format == "json", "output.format must be csv or json");
}

JointAmplitude RunConfig::model() const {
  return kind == "cw" ? double_gaussian_cw(tc) : double_gaussian_pulsed(tp, tc);
}

JointAmplitude RunConfig::model_with_ratio(double ratio) const { return double_gaussian_pulsed(ratio * tc, tc); }

cplx RunConfig::beta() const { return std::polar(beta_circ, beta_phase); }

std::optional<WindowSpec> RunConfig::window() const {
  if (d_j == 0) return std::nullopt;
  return make_window(t_j, d_j, coarse_tau());
}

double RunConfig::coarse_tau() const { return bandlimit == BandlimitPreset::Minimal ? tc : std::sqrt(kPi) * tc; }

std::string RunConfig::canonical() const {
  std::map<std::string, std::string> kv;
  const auto num = [](double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
  };
  kv["model.kind"] = kind;
  kv["model.tp"] = num(tp);
  kv["model.tc"] = num(tc);
  kv["grid.bandlimit"] = bandlimit == BandlimitPreset::Minimal ? "minimal" : "caption";
  kv["grid.oversample"] = std::to_string(oversample);
  kv["squeezing.beta_circ"] = num(beta_circ);
  kv["squeezing.beta_phase"] = num(beta_phase);
  kv["window.t_j"] = num(t_j);
  kv["window.d_j"] = std::to_string(d_j);
  kv["detector.alpha"] = num(alpha);
  kv["detector.s_max"] = std::to_string(s_max);
  kv["detector.tail_tol"] = num(tail_tol);
  kv["sweep.theta"] = join(theta);
  kv["sweep.omega"] = join(omega);
  kv["sweep.beta_circ"] = join(beta_sweep);
  kv["sweep.alpha"] = join(alpha_sweep);
  kv["sweep.ratio"] = join(ratio_sweep);
  kv["sweep.q_min"] = std::to_string(q_min);
  kv["sweep.q_max"] = std::to_string(q_max);
  kv["sweep.q_step"] = std::to_string(q_step);
  kv["decompose.points"] = std::to_string(decompose_points);
  kv["oracle.seed"] = std::to_string(seed);
  kv["oracle.cases"] = std::to_string(oracle_cases);
  kv["oracle.max_dim"] = std::to_string(oracle_max_dim);
  kv["oracle.beta_max"] = num(oracle_beta_max);
  kv["oracle.cutoff"] = std::to_string(oracle_cutoff);
  kv["oracle.leakage_tol"] = num(oracle_leakage_tol);
  kv["output.format"] = format;
  std::ostringstream os;
  for (const auto& [k, v] : kv) os << k << '=' << v << '\n';
  return os.str();
}

std::uint64_t RunConfig::hash() const { return fnv1a(canonical()); }

}  // namespace wsq
