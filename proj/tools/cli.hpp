#pragma once

// Command-line front end: spectrum, dynamics, sweep, bell-times, verify.
//
// Precedence of settings: command-line flags, then --config file keys, then
// built-in defaults (J = 25 ueV, all detunings and tunnelings zero).

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "cqm/cqm.hpp"

namespace cqm::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kNumericError = 3, kNoSolution = 4 };

class ConfigError : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  std::string command;
  SystemParams params;
  std::optional<double> ratio;  // sets delta1 = delta2 = ratio * J
  std::string init = "RL";
  std::optional<double> tmax;
  std::optional<int> steps;
  std::string kind = "eigen";
  std::optional<std::string> grid;
  int state = 0;
  int sign = 1;
  int n = 1;
  int m = 1;
  std::uint64_t seed = verify::Options{}.seed;
  int samples = verify::Options{}.samples;
  std::string out;
  std::string pgm;
  std::string config;

  SystemParams resolved_params() const {
    SystemParams p = params;
    if (ratio) p.delta1 = p.delta2 = *ratio * p.j;
    return p;
  }
};

inline StateVector parse_initial_state(std::string_view label) {
  for (std::size_t i = 0; i < 4; ++i) {
    if (label == kPositionalLabels[i]) return ket(static_cast<PositionalState>(i));
    if (label == kBellLabels[i]) return to_positional(ket(static_cast<BellState>(i)));
  }
  throw ConfigError("unknown initial state '" + std::string(label) +
                    "' (expected LL, LR, RL, RR, PsiMinus, PhiMinus, PsiPlus or PhiPlus)");
}

namespace detail {

inline double parse_double(std::string_view s, std::string_view what) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v))
    throw ConfigError("bad number '" + std::string(s) + "' in " + std::string(what));
  return v;
}

inline int parse_int(std::string_view s, std::string_view what) {
  int v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw ConfigError("bad integer '" + std::string(s) + "' in " + std::string(what));
  return v;
}

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace detail

// "MIN:MAX:COUNT"
inline Axis parse_grid(std::string_view text, std::string name, std::string unit) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string_view::npos) throw ConfigError("grid must be MIN:MAX:COUNT, got '" + std::string(text) + "'");
  Axis a;
  a.name = std::move(name);
  a.unit = std::move(unit);
  a.min = detail::parse_double(text.substr(0, c1), "grid");
  a.max = detail::parse_double(text.substr(c1 + 1, c2 - c1 - 1), "grid");
  a.count = detail::parse_int(text.substr(c2 + 1), "grid");
  try {
    a.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  return a;
}

inline std::string format_grid(const Axis& a) {
  return io::exact(a.min) + ":" + io::exact(a.max) + ":" + std::to_string(a.count);
}

// Line-oriented "key = value"; blank lines and lines starting with '#' are
// ignored. Keys are flag names without the leading dashes.
inline std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::vector<std::pair<std::string, std::string>> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = detail::trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    std::string key = detail::trim(std::string_view(t).substr(0, eq));
    std::string value = detail::trim(std::string_view(t).substr(eq + 1));
    if (key.empty()) throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
    kv.emplace_back(std::move(key), std::move(value));
  }
  return kv;
}

namespace detail {

inline std::string bell_label_of(const StateVector& psi, double& weight) {
  const StateVector b = to_bell(psi);
  std::size_t best = 0;
  for (std::size_t i = 1; i < 4; ++i)
    if (std::norm(b[i]) > std::norm(b[best])) best = i;
  weight = std::norm(b[best]);
  return std::string(kBellLabels[best]);
}

inline io::Metadata param_metadata(const RunConfig& cfg, const SystemParams& p) {
  return {{"command", cfg.command},    {"j", io::exact(p.j)},       {"d1", io::exact(p.delta1)},
          {"d2", io::exact(p.delta2)}, {"e1", io::exact(p.eps1)}, {"e2", io::exact(p.eps2)}};
}

inline std::ofstream open_output(const std::string& path, bool binary = false) {
  std::ofstream f(path, binary ? std::ios::binary | std::ios::out : std::ios::out);
  if (!f) throw ConfigError("cannot open '" + path + "' for writing");
  return f;
}

inline double require_tmax(const RunConfig& cfg, double fallback) {
  const double t = cfg.tmax.value_or(fallback);
  if (!(t > 0.0) || !std::isfinite(t)) throw ConfigError("--tmax must be positive");
  return t;
}

inline int require_steps(const RunConfig& cfg, int fallback) {
  const int s = cfg.steps.value_or(fallback);
  if (s < 2) throw ConfigError("--steps must be at least 2");
  return s;
}

}  // namespace detail

inline int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
  const SystemParams p = cfg.resolved_params();
  const Spectrum s = eigensystem(p);

  struct Row {
    double energy, concurrence, weight;
    std::string bell;
    bool degenerate;
  };
  std::vector<Row> rows;
  for (std::size_t k = 0; k < 4; ++k) {
    const StateVector psi = eigenstate(s, k);
    Row r{s.energies[k], concurrence_pure(psi), 0.0, {}, s.is_degenerate(k)};
    r.bell = detail::bell_label_of(psi, r.weight);
    rows.push_back(r);
  }

  out << "resonance: " << to_string(classify_resonance(p)) << '\n';
  out << std::left << std::setw(6) << "state" << std::setw(14) << "energy_ueV" << std::setw(13) << "concurrence"
      << std::setw(10) << "dominant" << std::setw(10) << "weight"
      << "degenerate\n";
  for (std::size_t k = 0; k < 4; ++k) {
    const Row& r = rows[k];
    out << std::left << std::setw(6) << k << std::setw(14) << io::fixed6(r.energy) << std::setw(13)
        << io::fixed6(r.concurrence) << std::setw(10) << r.bell << std::setw(10) << io::fixed6(r.weight)
        << (r.degenerate ? "yes" : "no") << '\n';
  }

  if (!cfg.out.empty()) {
    auto f = detail::open_output(cfg.out);
    io::write_metadata(f, detail::param_metadata(cfg, p));
    f << "state,energy_ueV,concurrence,dominant_bell,bell_weight,degenerate\n";
    for (std::size_t k = 0; k < 4; ++k) {
      const Row& r = rows[k];
      f << k << ',' << io::fixed6(r.energy) << ',' << io::fixed6(r.concurrence) << ',' << r.bell << ','
        << io::fixed6(r.weight) << ',' << (r.degenerate ? 1 : 0) << '\n';
    }
  }
  return kOk;
}

inline int cmd_dynamics(const RunConfig& cfg, std::ostream& out) {
  const SystemParams p = cfg.resolved_params();
  const StateVector psi0 = parse_initial_state(cfg.init);
  const double tmax = detail::require_tmax(cfg, 1.0);
  const int steps = detail::require_steps(cfg, 1001);
  const Trajectory tr = trajectory(p, psi0, tmax, steps);

  io::Metadata meta = detail::param_metadata(cfg, p);
  meta.emplace_back("init", cfg.init);
  meta.emplace_back("tmax", io::exact(tmax));
  meta.emplace_back("steps", std::to_string(steps));
  if (cfg.out.empty()) {
    io::write_trajectory_csv(out, tr, meta);
  } else {
    auto f = detail::open_output(cfg.out);
    io::write_trajectory_csv(f, tr, meta);
  }
  return kOk;
}

inline int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  const SystemParams p = cfg.resolved_params();
  io::Metadata meta = detail::param_metadata(cfg, p);
  meta.emplace_back("kind", cfg.kind);

  SweepGrid g;
  if (cfg.kind == "eigen") {
    if (cfg.state < 0 || cfg.state > 3) throw ConfigError("--state must be in 0..3");
    const std::string text = cfg.grid.value_or(io::exact(-p.j) + ":" + io::exact(p.j) + ":201");
    const Axis e1 = parse_grid(text, "eps1", "ueV");
    const Axis e2 = parse_grid(text, "eps2", "ueV");
    g = eigen_concurrence_map(p, e1, e2, cfg.state);
    meta.emplace_back("grid", format_grid(e1));
    meta.emplace_back("state", std::to_string(cfg.state));
  } else if (cfg.kind == "tunneling-dynamics") {
    if (classify_resonance(p) != Resonance::FullResonance)
      throw ConfigError("tunneling-dynamics sweep requires --e1 0 --e2 0");
    const Axis ratio = parse_grid(cfg.grid.value_or("0:1:101"), "ratio", "1");
    const double tmax = detail::require_tmax(cfg, 3.0);
    const int steps = detail::require_steps(cfg, 301);
    g = dynamics_tunneling_map(p, tmax, steps, ratio, parse_initial_state(cfg.init));
    meta.emplace_back("grid", format_grid(ratio));
    meta.emplace_back("init", cfg.init);
    meta.emplace_back("tmax", io::exact(tmax));
    meta.emplace_back("steps", std::to_string(steps));
  } else if (cfg.kind == "detuning-dynamics") {
    if (std::abs(p.delta1 - p.delta2) > kEqualTunnelingTolerance)
      throw ConfigError("detuning-dynamics sweep requires --d1 == --d2 (or --ratio)");
    if (cfg.sign != 1 && cfg.sign != -1) throw ConfigError("--sign must be +1 or -1");
    const std::string text = cfg.grid.value_or(io::exact(-p.j) + ":" + io::exact(p.j) + ":101");
    const Axis eps = parse_grid(text, "eps1", "ueV");
    const double tmax = detail::require_tmax(cfg, 1.0);
    const int steps = detail::require_steps(cfg, 201);
    g = dynamics_detuning_map(p, tmax, steps, eps, parse_initial_state(cfg.init), cfg.sign);
    meta.emplace_back("grid", format_grid(eps));
    meta.emplace_back("init", cfg.init);
    meta.emplace_back("sign", std::to_string(cfg.sign));
    meta.emplace_back("tmax", io::exact(tmax));
    meta.emplace_back("steps", std::to_string(steps));
  } else {
    throw ConfigError("unknown sweep kind '" + cfg.kind + "' (eigen, tunneling-dynamics, detuning-dynamics)");
  }

  if (cfg.out.empty()) {
    io::write_sweep_csv(out, g, meta);
  } else {
    auto f = detail::open_output(cfg.out);
    io::write_sweep_csv(f, g, meta);
  }
  if (!cfg.pgm.empty()) {
    auto f = detail::open_output(cfg.pgm, true);
    io::write_pgm(f, g);
  }
  return kOk;
}

inline int cmd_bell_times(const RunConfig& cfg, std::ostream& out) {
  const double j = cfg.params.j;
  BellCondition c;
  try {
    c = bell_condition(cfg.n, cfg.m, j);
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  const double conc = concurrence_pure(propagate(c.params(), ket(PositionalState::RL), c.t_e));
  out << "n = " << c.n << '\n'
      << "m = " << c.m << '\n'
      << "j_ueV = " << io::fixed6(c.j) << '\n'
      << "ratio = " << io::fixed6(c.ratio) << '\n'
      << "delta_ueV = " << io::fixed6(c.delta) << '\n'
      << "t_e_ns = " << io::fixed6(c.t_e) << '\n'
      << "concurrence_at_t_e = " << io::fixed6(conc) << '\n';
  return kOk;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  if (cfg.samples < 1) throw ConfigError("--samples must be positive");
  const auto results = verify::run_all({cfg.seed, cfg.samples});
  bool ok = true;
  for (const auto& r : results) {
    ok = ok && r.passed();
    std::ostringstream worst;
    worst << std::scientific << std::setprecision(3) << r.worst << " (tol " << r.tolerance << ")";
    out << (r.passed() ? "PASS  " : "FAIL  ") << std::left << std::setw(42) << r.name << worst.str() << '\n';
  }
  return ok ? kOk : kNumericError;
}

namespace detail {

// Config entries become "--key=value" arguments placed right after the
// subcommand, ahead of the real flags; options keep the last value given.
inline std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--config") {
      if (i + 1 >= args.size()) throw ConfigError("--config needs a path");
      path = args[++i];
    } else if (a.rfind("--config=", 0) == 0) {
      path = a.substr(9);
    } else {
      rest.push_back(a);
    }
  }
  if (path.empty() || rest.empty()) return rest;

  std::vector<std::string> expanded{rest.front()};
  for (const auto& [k, v] : read_config_file(path)) {
    if (k == "command") {
      if (v != rest.front()) throw ConfigError("config file is for command '" + v + "', not '" + rest.front() + "'");
      continue;
    }
    expanded.push_back("--" + k + "=" + v);
  }
  expanded.insert(expanded.end(), rest.begin() + 1, rest.end());
  return expanded;
}

inline void add_param_flags(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--j", cfg.params.j, "Coulomb coupling J (ueV)");
  sub->add_option("--d1", cfg.params.delta1, "tunneling of molecule 1 (ueV)");
  sub->add_option("--d2", cfg.params.delta2, "tunneling of molecule 2 (ueV)");
  sub->add_option("--e1", cfg.params.eps1, "detuning of molecule 1 (ueV)");
  sub->add_option("--e2", cfg.params.eps2, "detuning of molecule 2 (ueV)");
  sub->add_option("--ratio", cfg.ratio, "set d1 = d2 = ratio * J");
}

}  // namespace detail

// Runs the tool on argv-style arguments (program name excluded).
inline int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Entanglement of two Coulomb-coupled charge qubits", "cqm"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  auto* spectrum = app.add_subcommand("spectrum", "Eigenenergies and eigenstate concurrences");
  detail::add_param_flags(spectrum, cfg);
  spectrum->add_option("--out", cfg.out, "also write the table as CSV");

  auto* dynamics = app.add_subcommand("dynamics", "Populations and concurrence versus time (CSV)");
  detail::add_param_flags(dynamics, cfg);
  dynamics->add_option("--init", cfg.init, "initial state: LL LR RL RR PsiMinus PhiMinus PsiPlus PhiPlus");
  dynamics->add_option("--tmax", cfg.tmax, "final time (ns), default 1");
  dynamics->add_option("--steps", cfg.steps, "number of time points, default 1001");
  dynamics->add_option("--out", cfg.out, "CSV path (default: standard output)");

  auto* sweep = app.add_subcommand("sweep", "Concurrence heatmaps (CSV and PGM)");
  detail::add_param_flags(sweep, cfg);
  sweep->add_option("--kind", cfg.kind, "eigen | tunneling-dynamics | detuning-dynamics");
  sweep->add_option("--grid", cfg.grid, "MIN:MAX:COUNT of the swept parameter");
  sweep->add_option("--state", cfg.state, "eigenstate index 0..3 (eigen)");
  sweep->add_option("--init", cfg.init, "initial state (dynamics kinds)");
  sweep->add_option("--sign", cfg.sign, "eps2 = sign * eps1 (detuning-dynamics)");
  sweep->add_option("--tmax", cfg.tmax, "final time (ns)");
  sweep->add_option("--steps", cfg.steps, "number of time points");
  sweep->add_option("--out", cfg.out, "CSV path (default: standard output)");
  sweep->add_option("--pgm", cfg.pgm, "8-bit graymap path");

  auto* bell = app.add_subcommand("bell-times", "Tunneling ratio and time for Bell-state generation");
  bell->add_option("--n", cfg.n, "t_e = n pi hbar / Omega+");
  bell->add_option("--m", cfg.m, "t_e = m pi hbar / (2 Omega-), m odd");
  bell->add_option("--j", cfg.params.j, "Coulomb coupling J (ueV)");

  auto* ver = app.add_subcommand("verify", "Run the invariant self-check");
  ver->add_option("--seed", cfg.seed, "random seed");
  ver->add_option("--samples", cfg.samples, "samples per check");

  try {
    std::vector<std::string> args = detail::expand_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    if (*spectrum) {
      cfg.command = "spectrum";
      return cmd_spectrum(cfg, out);
    }
    if (*dynamics) {
      cfg.command = "dynamics";
      return cmd_dynamics(cfg, out);
    }
    if (*sweep) {
      cfg.command = "sweep";
      return cmd_sweep(cfg, out);
    }
    if (*bell) {
      cfg.command = "bell-times";
      return cmd_bell_times(cfg, out);
    }
    cfg.command = "verify";
    return cmd_verify(cfg, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const NoRealSolution& e) {
    err << "error: " << e.what() << '\n';
    return kNoSolution;
  } catch (const Error& e) {
    err << "numeric error: " << e.what() << '\n';
    return kNumericError;
  }
}

}  // namespace cqm::cli
