#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "qdephase/dynamics.hpp"
#include "qdephase/states.hpp"
#include "qdephase/timescales.hpp"

namespace qdephase::cli {

/// Malformed command-line input (maps to exit code 2). Domain violations
/// inside well-formed input throw std::domain_error and map to exit 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  ProcessSpec spec = ProcessSpec::white_noise();
  EnvTopology env = EnvTopology::Independent;
  BellMixture state = BellMixture::phi_plus();
  double lambda = 1.0;
  double omega0 = 1.0;
  double ratio = 0.99;
  double t_max = 1.0;
  int n_points = 200;
  int mc_samples = 10000;
  int grid_density = 256;
  int n_states = 500;
  int threads = 0;  // 0 = hardware concurrency
  std::uint64_t seed = 42;
  // sweep command
  std::string sweep_family;  // "ou" | "fgn"
  double param_min = 0.0;
  double param_max = 0.0;
  std::string spacing = "auto";  // auto | log | linear
};

/// Mini-grammar `name[:key=value,...]`: ou:gamma=1, fgn:h=0.9, wiener, white.
ProcessSpec parse_process(const std::string& token);

/// `phi+`, `phi-`, `psi+`, `psi-`, `mixed`, or `c=c1,c2,c3,c4`.
BellMixture parse_state(const std::string& token);

/// `indep` or `common`.
EnvTopology parse_env(const std::string& token);

/// 15 significant digits, '.' decimal separator ("%.15g").
std::string format_double(double v);

void cmd_curve(const RunConfig& cfg, std::ostream& os);
void cmd_trajectory(const RunConfig& cfg, std::ostream& os);
void cmd_tstar(const RunConfig& cfg, std::ostream& os);
void cmd_tes(const RunConfig& cfg, std::ostream& os);
void cmd_scatter(const RunConfig& cfg, std::ostream& os);
void cmd_mc_validate(const RunConfig& cfg, std::ostream& os);
void cmd_sweep(const RunConfig& cfg, std::ostream& os);

/// Full argv entry point. Exit codes: 0 success, 1 domain/math error,
/// 2 usage error.
int run(int argc, const char* const* argv);

}  // namespace qdephase::cli
