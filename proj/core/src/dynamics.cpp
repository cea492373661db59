#include "qdephase/dynamics.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <stdexcept>

#include "parallel.hpp"

namespace qdephase {

namespace {

using Accumulator = std::array<std::complex<double>, 16>;

constexpr std::size_t kMcBlock = 256;

std::complex<double> unit_phase(double angle) {
  return {std::cos(angle), std::sin(angle)};
}

// Diagonal of U(t) = exp(-i theta1 sigma_z) x exp(-i theta2 sigma_z) in the
// computational basis, theta_i = omega0 t + lambda phi_i.
std::array<std::complex<double>, 4> unitary_diagonal(double theta1, double theta2) {
  return {unit_phase(-(theta1 + theta2)), unit_phase(-(theta1 - theta2)),
          unit_phase(theta1 - theta2), unit_phase(theta1 + theta2)};
}

void accumulate_realization(Accumulator& acc, const TwoQubitDensity& rho0,
                            const std::array<std::complex<double>, 4>& d) {
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      acc[static_cast<std::size_t>(i) * 4 + j] += d[i] * std::conj(d[j]) * rho0(i, j);
    }
  }
}

int mc_grid_steps(double span, int grid_density) {
  if (grid_density < 1) throw std::domain_error("mc: grid_density must be >= 1");
  return std::max(1, static_cast<int>(std::ceil(grid_density * span)));
}

void check_mc_args(const EvolutionParams& p, double t, int n_samples) {
  if (!(p.lambda >= 0.0)) throw std::domain_error("mc: lambda must be >= 0");
  if (!(t >= 0.0)) throw std::domain_error("mc: negative time");
  if (n_samples < 100) throw std::domain_error("mc: need at least 100 samples");
}

}  // namespace

double dephasing_factor(const EvolutionParams& p, double t) {
  const double exponent = 4.0 * bound_constant(p.env) * p.lambda * p.lambda;
  const double x = std::exp(-exponent * beta(p.spec, t));
  // exp underflows to 0 for large beta; keep the contract x in (0, 1]
  return std::max(x, std::numeric_limits<double>::denorm_min());
}

TwoQubitDensity evolve(const BellMixture& m, const EvolutionParams& p, double t) {
  const double x = dephasing_factor(p, t);
  const std::complex<double> rotation = unit_phase(-4.0 * p.omega0 * t);

  TwoQubitDensity rho = density_matrix(m);
  rho(0, 3) *= x * rotation;
  rho(3, 0) *= x * std::conj(rotation);
  if (p.env == EnvTopology::Independent) {
    rho(1, 2) *= x;
    rho(2, 1) *= x;
  }
  // common environment: the (c3 - c4)/2 coherence is conserved exactly
  return rho;
}

BlochDiagonal apply_dephasing(const BlochDiagonal& b, double x, EnvTopology env) {
  if (env == EnvTopology::Independent) {
    return {b.a1 * x, b.a2 * x, b.a3};
  }
  return {0.5 * ((b.a1 - b.a2) * x + b.a1 + b.a2),
          0.5 * ((b.a2 - b.a1) * x + b.a1 + b.a2), b.a3};
}

BlochDiagonal evolve_bloch(const BlochDiagonal& b, const EvolutionParams& p, double t) {
  return apply_dephasing(b, dephasing_factor(p, t), p.env);
}

double negativity_at(const BellMixture& m, const EvolutionParams& p, double t) {
  return negativity_bell_mixture(m, dephasing_factor(p, t), p.env);
}

TwoQubitDensity mc_evolve(const BellMixture& m, const EvolutionParams& p, double t,
                          int n_samples, int grid_density, const SeededRng& rng,
                          int n_threads) {
  check_mc_args(p, t, n_samples);
  const TwoQubitDensity rho0 = density_matrix(m);
  if (t == 0.0) return rho0;

  const bool white = p.spec.kind() == ProcessSpec::Kind::WhiteNoise;
  std::optional<PathSampler> sampler;
  if (!white) sampler.emplace(p.spec, TimeGrid(t, mc_grid_steps(t, grid_density)));
  const double white_sd = white ? std::sqrt(t) : 0.0;
  const bool common = p.env == EnvTopology::Common;

  const std::size_t total = static_cast<std::size_t>(n_samples);
  const std::size_t n_blocks = (total + kMcBlock - 1) / kMcBlock;
  std::vector<Accumulator> block_sums(n_blocks);

  detail::for_each_block(total, kMcBlock, n_threads,
                         [&](std::size_t b, std::size_t begin, std::size_t end) {
    std::vector<double> z(sampler ? sampler->deviate_count() : 0);
    std::vector<double> path(sampler ? sampler->grid().n_nodes() : 0);
    auto draw_phase = [&](SeededRng& sub) {
      if (white) return white_sd * sub.normal();
      for (double& v : z) v = sub.normal();
      sampler->path_from_deviates(z, path);
      return sampler->phase_from_path(path);
    };
    Accumulator acc{};
    for (std::size_t i = begin; i < end; ++i) {
      SeededRng sub = rng.substream(i);
      const double phi1 = draw_phase(sub);
      const double phi2 = common ? phi1 : draw_phase(sub);
      const auto d = unitary_diagonal(p.omega0 * t + p.lambda * phi1,
                                      p.omega0 * t + p.lambda * phi2);
      accumulate_realization(acc, rho0, d);
    }
    block_sums[b] = acc;
  });

  Accumulator sum{};
  for (const Accumulator& acc : block_sums) {
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += acc[k];
  }
  TwoQubitDensity::Matrix mean{};
  for (std::size_t k = 0; k < mean.size(); ++k) {
    mean[k] = sum[k] / static_cast<double>(n_samples);
  }
  return TwoQubitDensity(mean);
}

std::vector<TrajectoryPoint> trajectory(const BellMixture& m,
                                        const EvolutionParams& p,
                                        const TimeGrid& grid) {
  const BlochDiagonal b0 = c_to_a(m);
  std::vector<TrajectoryPoint> out;
  out.reserve(grid.n_nodes());
  for (std::size_t k = 0; k < grid.n_nodes(); ++k) {
    const double t = grid.node(k);
    const double x = dephasing_factor(p, t);
    out.push_back({t, apply_dephasing(b0, x, p.env),
                   negativity_bell_mixture(m, x, p.env)});
  }
  return out;
}

std::vector<McErrorRow> mc_validate_curve(const BellMixture& m,
                                          const EvolutionParams& p, double t_max,
                                          int n_rows, int n_samples,
                                          int grid_density, const SeededRng& rng,
                                          int n_threads) {
  check_mc_args(p, t_max, n_samples);
  if (n_rows < 1) throw std::domain_error("mc_validate_curve: n_rows must be >= 1");
  if (!(t_max > 0.0)) throw std::domain_error("mc_validate_curve: t_max must be > 0");

  // Internal grid refines the output rows so each output time is a node.
  const int steps_per_row =
      std::max(1, static_cast<int>(std::ceil(
                      static_cast<double>(mc_grid_steps(t_max, grid_density)) / n_rows)));
  const TimeGrid grid(t_max, steps_per_row * n_rows);
  const std::size_t n_out = static_cast<std::size_t>(n_rows) + 1;

  const bool white = p.spec.kind() == ProcessSpec::Kind::WhiteNoise;
  std::optional<PathSampler> sampler;
  if (!white) sampler.emplace(p.spec, grid);
  const bool common = p.env == EnvTopology::Common;
  const double sqrt_dt = std::sqrt(grid.dt());

  const TwoQubitDensity rho0 = density_matrix(m);
  const std::size_t total = static_cast<std::size_t>(n_samples);
  const std::size_t n_blocks = (total + kMcBlock - 1) / kMcBlock;
  std::vector<std::vector<Accumulator>> block_sums(
      n_blocks, std::vector<Accumulator>(n_out));

  detail::for_each_block(total, kMcBlock, n_threads,
                         [&](std::size_t b, std::size_t begin, std::size_t end) {
    const std::size_t n_nodes = grid.n_nodes();
    std::vector<double> z(sampler ? sampler->deviate_count() : 0);
    std::vector<double> path(sampler ? n_nodes : 0);
    std::vector<double> phase1(n_nodes);
    std::vector<double> phase2(n_nodes);
    // phase[k] = integral of B over [0, t_k]; trapezoid prefix sums for
    // sampled paths, independent sqrt(dt) increments for white noise.
    auto draw_phases = [&](SeededRng& sub, std::vector<double>& phase) {
      phase[0] = 0.0;
      if (white) {
        for (std::size_t k = 1; k < n_nodes; ++k) {
          phase[k] = phase[k - 1] + sqrt_dt * sub.normal();
        }
        return;
      }
      for (double& v : z) v = sub.normal();
      sampler->path_from_deviates(z, path);
      for (std::size_t k = 1; k < n_nodes; ++k) {
        phase[k] = phase[k - 1] + 0.5 * grid.dt() * (path[k - 1] + path[k]);
      }
    };
    auto& sums = block_sums[b];
    for (std::size_t i = begin; i < end; ++i) {
      SeededRng sub = rng.substream(i);
      draw_phases(sub, phase1);
      const std::vector<double>& second = common ? phase1 : phase2;
      if (!common) draw_phases(sub, phase2);
      for (std::size_t row = 0; row < n_out; ++row) {
        const std::size_t node = row * static_cast<std::size_t>(steps_per_row);
        const double t = grid.node(node);
        const auto d = unitary_diagonal(p.omega0 * t + p.lambda * phase1[node],
                                        p.omega0 * t + p.lambda * second[node]);
        accumulate_realization(sums[row], rho0, d);
      }
    }
  });

  std::vector<McErrorRow> rows(n_out);
  for (std::size_t row = 0; row < n_out; ++row) {
    Accumulator sum{};
    for (const auto& block : block_sums) {
      for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += block[row][k];
    }
    const double t = grid.node(row * static_cast<std::size_t>(steps_per_row));
    const TwoQubitDensity expected = evolve(m, p, t);
    double err = 0.0;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        const std::complex<double> mc =
            sum[static_cast<std::size_t>(i) * 4 + j] / static_cast<double>(n_samples);
        err = std::max(err, std::abs(mc - expected(i, j)));
      }
    }
    rows[row] = {t, err};
  }
  return rows;
}

}  // namespace qdephase
