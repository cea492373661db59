#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <ostream>
#include <vector>

#include <CLI11.hpp>

namespace qdephase::cli {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double parse_number(const std::string& text, const std::string& token) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw UsageError("could not parse number '" + text + "' in '" + token + "'");
  }
  if (pos != text.size()) {
    throw UsageError("trailing characters after number '" + text + "' in '" + token + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t end = text.find(sep, start);
    parts.push_back(text.substr(start, end - start));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return parts;
}

std::string outcome_value(const SurvivalOutcome& outcome) {
  return format_double(outcome.is_finite() ? outcome.time() : kInf);
}

}  // namespace

ProcessSpec parse_process(const std::string& token) {
  const std::size_t colon = token.find(':');
  const std::string name = token.substr(0, colon);

  std::map<std::string, double> kv;
  if (colon != std::string::npos) {
    for (const std::string& pair : split(token.substr(colon + 1), ',')) {
      const std::size_t eq = pair.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw UsageError("expected key=value, got '" + pair + "' in '" + token + "'");
      }
      kv[pair.substr(0, eq)] = parse_number(pair.substr(eq + 1), token);
    }
  }
  auto take = [&](const char* key) {
    const auto it = kv.find(key);
    if (it == kv.end()) {
      throw UsageError("process '" + token + "' is missing parameter '" +
                       std::string(key) + "'");
    }
    const double v = it->second;
    kv.erase(it);
    return v;
  };
  auto done = [&] {
    if (!kv.empty()) {
      throw UsageError("process '" + token + "' has unknown parameter '" +
                       kv.begin()->first + "'");
    }
  };

  if (name == "ou") {
    const double gamma = take("gamma");
    done();
    return ProcessSpec::ou(gamma);
  }
  if (name == "fgn") {
    const double hurst = take("h");
    done();
    return ProcessSpec::fgn(hurst);
  }
  if (name == "wiener") {
    done();
    return ProcessSpec::wiener();
  }
  if (name == "white") {
    done();
    return ProcessSpec::white_noise();
  }
  throw UsageError("unknown process '" + token +
                   "' (expected ou:gamma=..., fgn:h=..., wiener, white)");
}

BellMixture parse_state(const std::string& token) {
  if (token == "phi+") return BellMixture::phi_plus();
  if (token == "phi-") return BellMixture::phi_minus();
  if (token == "psi+") return BellMixture::psi_plus();
  if (token == "psi-") return BellMixture::psi_minus();
  if (token == "mixed") return BellMixture::maximally_mixed();
  if (token.rfind("c=", 0) == 0) {
    const auto parts = split(token.substr(2), ',');
    if (parts.size() != 4) {
      throw UsageError("state '" + token + "' needs exactly 4 weights");
    }
    double c[4];
    for (int i = 0; i < 4; ++i) c[i] = parse_number(parts[i], token);
    return {c[0], c[1], c[2], c[3]};
  }
  throw UsageError("unknown state '" + token +
                   "' (expected phi+, phi-, psi+, psi-, mixed or c=c1,c2,c3,c4)");
}

EnvTopology parse_env(const std::string& token) {
  if (token == "indep") return EnvTopology::Independent;
  if (token == "common") return EnvTopology::Common;
  throw UsageError("unknown environment '" + token + "' (expected indep or common)");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

void cmd_curve(const RunConfig& cfg, std::ostream& os) {
  const EvolutionParams p{cfg.lambda, cfg.omega0, cfg.spec, cfg.env};
  const TimeGrid grid(cfg.t_max, cfg.n_points);
  os << "t,negativity\n";
  for (std::size_t k = 0; k < grid.n_nodes(); ++k) {
    const double t = grid.node(k);
    os << format_double(t) << ',' << format_double(negativity_at(cfg.state, p, t))
       << '\n';
  }
}

void cmd_trajectory(const RunConfig& cfg, std::ostream& os) {
  const EvolutionParams p{cfg.lambda, cfg.omega0, cfg.spec, cfg.env};
  const TimeGrid grid(cfg.t_max, cfg.n_points);
  os << "t,a1,a2,a3,negativity\n";
  for (const auto& row : trajectory(cfg.state, p, grid)) {
    os << format_double(row.t) << ',' << format_double(row.bloch.a1) << ','
       << format_double(row.bloch.a2) << ',' << format_double(row.bloch.a3) << ','
       << format_double(row.negativity) << '\n';
  }
}

void cmd_tstar(const RunConfig& cfg, std::ostream& os) {
  const double n0 = negativity_bell_mixture(cfg.state, 1.0, cfg.env);
  const auto res = preserving_time(cfg.state, cfg.spec, cfg.lambda,
                                   ThresholdRatio(cfg.ratio), cfg.env);
  os << "N0,value,outcome\n";
  os << format_double(n0) << ',' << outcome_value(res) << ',' << res.label() << '\n';
}

void cmd_tes(const RunConfig& cfg, std::ostream& os) {
  const double n0 = negativity_bell_mixture(cfg.state, 1.0, cfg.env);
  const auto res = survival_time(cfg.state, cfg.spec, cfg.lambda, cfg.env);
  os << "N0,value,outcome\n";
  os << format_double(n0) << ',' << outcome_value(res) << ',' << res.label() << '\n';
}

void cmd_scatter(const RunConfig& cfg, std::ostream& os) {
  const auto rows = scatter_study(cfg.n_states, cfg.spec, cfg.lambda, cfg.env,
                                  ThresholdRatio(cfg.ratio), SeededRng(cfg.seed),
                                  cfg.threads);
  os << "c1,c2,c3,c4,N0,tstar,tes_outcome,tes,tstar_bound,tes_bound\n";
  for (const auto& row : rows) {
    os << format_double(row.state.c1()) << ',' << format_double(row.state.c2()) << ','
       << format_double(row.state.c3()) << ',' << format_double(row.state.c4()) << ','
       << format_double(row.n0) << ',' << outcome_value(row.preserving) << ','
       << row.survival.label() << ',' << outcome_value(row.survival) << ','
       << format_double(row.tstar_bound) << ',' << format_double(row.tes_bound)
       << '\n';
  }
}

void cmd_mc_validate(const RunConfig& cfg, std::ostream& os) {
  const EvolutionParams p{cfg.lambda, cfg.omega0, cfg.spec, cfg.env};
  const auto rows =
      mc_validate_curve(cfg.state, p, cfg.t_max, cfg.n_points, cfg.mc_samples,
                        cfg.grid_density, SeededRng(cfg.seed), cfg.threads);
  const double budget = 4.0 / std::sqrt(static_cast<double>(cfg.mc_samples));
  os << "t,max_abs_error,budget,pass\n";
  for (const auto& row : rows) {
    os << format_double(row.t) << ',' << format_double(row.max_abs_error) << ','
       << format_double(budget) << ',' << (row.max_abs_error <= budget ? '1' : '0')
       << '\n';
  }
}

void cmd_sweep(const RunConfig& cfg, std::ostream& os) {
  const bool is_ou = cfg.sweep_family == "ou";
  if (!is_ou && cfg.sweep_family != "fgn") {
    throw UsageError("sweep: process family must be 'ou' or 'fgn', got '" +
                     cfg.sweep_family + "'");
  }
  double lo = cfg.param_min;
  double hi = cfg.param_max;
  if (lo == 0.0 && hi == 0.0) {  // family defaults
    lo = is_ou ? 1e-2 : 0.05;
    hi = is_ou ? 1e2 : 0.95;
  }
  if (!(lo > 0.0) || !(hi > lo)) {
    throw std::domain_error("sweep: need 0 < param-min < param-max");
  }
  std::string spacing = cfg.spacing;
  if (spacing == "auto") spacing = is_ou ? "log" : "linear";
  if (spacing != "log" && spacing != "linear") {
    throw UsageError("sweep: spacing must be auto, log or linear, got '" +
                     cfg.spacing + "'");
  }
  if (cfg.n_points < 1) throw std::domain_error("sweep: n-points must be >= 1");

  const ThresholdRatio r(cfg.ratio);
  os << "param,tstar\n";
  for (int k = 0; k < cfg.n_points; ++k) {
    const double frac =
        cfg.n_points == 1 ? 0.0 : static_cast<double>(k) / (cfg.n_points - 1);
    const double v = spacing == "log"
                         ? std::exp(std::log(lo) + frac * (std::log(hi) - std::log(lo)))
                         : lo + frac * (hi - lo);
    const ProcessSpec spec = is_ou ? ProcessSpec::ou(v) : ProcessSpec::fgn(v);
    os << format_double(v) << ','
       << format_double(preserving_time_bell(spec, cfg.lambda, r, cfg.env)) << '\n';
  }
}

namespace {

struct RawOptions {
  std::string process = "white";
  std::string env = "indep";
  std::string state = "phi+";
  RunConfig cfg;
  std::string output;
};

void add_physics_options(CLI::App* sub, RawOptions& raw) {
  sub->add_option("--process", raw.process,
                  "noise process: ou:gamma=G, fgn:h=H, wiener, white")
      ->capture_default_str();
  sub->add_option("--env", raw.env, "environment topology: indep or common")
      ->capture_default_str();
  sub->add_option("--lambda", raw.cfg.lambda, "coupling constant")
      ->capture_default_str();
  sub->add_option("--omega0", raw.cfg.omega0, "qubit energy splitting")
      ->capture_default_str();
  sub->add_option("--output", raw.output, "write CSV to this file instead of stdout");
}

void add_state_option(CLI::App* sub, RawOptions& raw) {
  sub->add_option("--state", raw.state,
                  "initial state: phi+, phi-, psi+, psi-, mixed, c=c1,c2,c3,c4")
      ->capture_default_str();
}

void add_grid_options(CLI::App* sub, RawOptions& raw) {
  sub->add_option("--t-max", raw.cfg.t_max, "end of the time window")
      ->capture_default_str();
  sub->add_option("--n-points", raw.cfg.n_points, "number of grid intervals")
      ->capture_default_str();
}

int dispatch(const std::string& name, const RunConfig& cfg, std::ostream& os) {
  if (name == "curve") cmd_curve(cfg, os);
  else if (name == "trajectory") cmd_trajectory(cfg, os);
  else if (name == "tstar") cmd_tstar(cfg, os);
  else if (name == "tes") cmd_tes(cfg, os);
  else if (name == "scatter") cmd_scatter(cfg, os);
  else if (name == "mc-validate") cmd_mc_validate(cfg, os);
  else if (name == "sweep") cmd_sweep(cfg, os);
  else throw std::logic_error("dispatch: unknown command " + name);
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{
      "Two-qubit dephasing under classical Gaussian noise: negativity decay, "
      "entanglement-preserving and survival times, and Monte Carlo validation. "
      "All commands emit CSV."};
  app.require_subcommand(1);

  RawOptions raw;

  CLI::App* curve = app.add_subcommand("curve", "negativity as a function of time");
  add_physics_options(curve, raw);
  add_state_option(curve, raw);
  add_grid_options(curve, raw);

  CLI::App* traj = app.add_subcommand(
      "trajectory", "Bloch coordinates (a1, a2, a3) and negativity over time");
  add_physics_options(traj, raw);
  add_state_option(traj, raw);
  add_grid_options(traj, raw);

  CLI::App* tstar = app.add_subcommand(
      "tstar", "entanglement-preserving time of the initial state");
  add_physics_options(tstar, raw);
  add_state_option(tstar, raw);
  tstar->add_option("--r", raw.cfg.ratio, "negativity ratio defining t*")
      ->capture_default_str();

  CLI::App* tes = app.add_subcommand(
      "tes", "entanglement-survival time (sudden death) of the initial state");
  add_physics_options(tes, raw);
  add_state_option(tes, raw);

  CLI::App* scatter = app.add_subcommand(
      "scatter", "timescales and lower bounds for random entangled mixtures");
  add_physics_options(scatter, raw);
  scatter->add_option("--n-states", raw.cfg.n_states, "number of random states")
      ->capture_default_str();
  scatter->add_option("--r", raw.cfg.ratio, "negativity ratio defining t*")
      ->capture_default_str();
  scatter->add_option("--seed", raw.cfg.seed, "RNG seed")->capture_default_str();
  scatter->add_option("--threads", raw.cfg.threads,
                      "worker threads (0 = hardware)")
      ->capture_default_str();

  CLI::App* mc = app.add_subcommand(
      "mc-validate", "max element-wise |Monte Carlo - analytic| over time");
  add_physics_options(mc, raw);
  add_state_option(mc, raw);
  add_grid_options(mc, raw);
  mc->add_option("--mc-samples", raw.cfg.mc_samples, "number of noise realizations")
      ->capture_default_str();
  mc->add_option("--grid-density", raw.cfg.grid_density,
                 "path-sampling steps per unit time")
      ->capture_default_str();
  mc->add_option("--seed", raw.cfg.seed, "RNG seed")->capture_default_str();
  mc->add_option("--threads", raw.cfg.threads, "worker threads (0 = hardware)")
      ->capture_default_str();

  CLI::App* sweep = app.add_subcommand(
      "sweep", "Bell-state t* as a function of the process parameter");
  sweep->add_option("--process", raw.process, "process family to sweep: ou or fgn")
      ->capture_default_str();
  sweep->add_option("--env", raw.env, "environment topology: indep or common")
      ->capture_default_str();
  sweep->add_option("--lambda", raw.cfg.lambda, "coupling constant")
      ->capture_default_str();
  sweep->add_option("--r", raw.cfg.ratio, "negativity ratio defining t*")
      ->capture_default_str();
  sweep->add_option("--n-points", raw.cfg.n_points, "number of parameter values")
      ->capture_default_str();
  sweep->add_option("--param-min", raw.cfg.param_min, "sweep start (family default)");
  sweep->add_option("--param-max", raw.cfg.param_max, "sweep end (family default)");
  sweep->add_option("--spacing", raw.cfg.spacing, "auto, log or linear")
      ->capture_default_str();
  sweep->add_option("--output", raw.output, "write CSV to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    RunConfig cfg = raw.cfg;
    cfg.env = parse_env(raw.env);
    if (command == "sweep") {
      // only the family matters here; a supplied parameter is the sweep
      // variable and is ignored
      cfg.sweep_family = raw.process.substr(0, raw.process.find(':'));
    } else {
      cfg.spec = parse_process(raw.process);
      cfg.state = parse_state(raw.state);
    }

    if (raw.output.empty()) {
      return dispatch(command, cfg, std::cout);
    }
    std::ofstream file(raw.output);
    if (!file) {
      throw std::runtime_error("cannot open output file '" + raw.output + "'");
    }
    return dispatch(command, cfg, file);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace qdephase::cli
