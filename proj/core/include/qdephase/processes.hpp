#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qdephase/rng.hpp"

namespace qdephase {

/// Zero-mean Gaussian noise process driving the dephasing, identified by
/// its covariance kernel. Wiener is an alias sharing the fractional-noise
/// code path at H = 1/2, so the two are equal by construction, not merely
/// within tolerance. White noise is the gamma -> infinity limit of the OU
/// process; it exists in beta-space only and carries no path sampler.
class ProcessSpec {
 public:
  enum class Kind { OrnsteinUhlenbeck, FractionalGaussianNoise, Wiener, WhiteNoise };

  /// Ornstein-Uhlenbeck process, K(t,s) = (gamma/2) exp(-gamma |t-s|).
  static ProcessSpec ou(double gamma);
  /// Fractional Gaussian noise with kernel
  /// K(t,s) = (|t|^{2H} + |s|^{2H} - |t-s|^{2H}) / 2, 0 < H < 1.
  static ProcessSpec fgn(double hurst);
  static ProcessSpec wiener();
  static ProcessSpec white_noise();

  Kind kind() const { return kind_; }
  double gamma() const;  // OU only
  double hurst() const;  // fgn and wiener (0.5)
  bool has_path_sampler() const { return kind_ != Kind::WhiteNoise; }

  /// Token form used by the CLI and in error messages, e.g. "ou:gamma=2".
  std::string name() const;

 private:
  ProcessSpec(Kind kind, double param) : kind_(kind), param_(param) {}

  Kind kind_;
  double param_;  // gamma or hurst; unused for white noise
};

/// Uniform grid 0 = t_0 < t_1 < ... < t_n = t_max with t_k = k * t_max / n.
struct TimeGrid {
  TimeGrid(double t_max_, int n_steps_);

  double t_max;
  int n_steps;

  std::size_t n_nodes() const { return static_cast<std::size_t>(n_steps) + 1; }
  double dt() const { return t_max / n_steps; }
  double node(std::size_t k) const {
    return t_max * (static_cast<double>(k) / n_steps);
  }
};

/// Covariance kernel K(t, s) for t, s >= 0.
/// Throws std::invalid_argument for white noise (distributional kernel).
double covariance(const ProcessSpec& spec, double t, double s);

/// beta(t) = double integral of K over [0,t]^2; the single scalar through
/// which every analytic result depends on time.
///   OU:          (exp(-gamma t) + gamma t - 1) / gamma
///   fgn/wiener:  t^{2H+2} / (2H+2)
///   white noise: t
double beta(const ProcessSpec& spec, double t);

/// Inverse of beta: the time t with beta(spec, t) = b. Closed form for
/// fgn/wiener/white noise; bracketed root-finding for OU.
double beta_inverse(const ProcessSpec& spec, double b);

/// Exact-in-law Gaussian path sampler on a fixed grid.
///
/// OU paths use the stationary AR(1) update, fractional paths a Cholesky
/// factor of the grid covariance (with at most one documented jitter of
/// 1e-12 * max diagonal if the factorization fails; anything worse is
/// reported, not absorbed). Construction does all the precomputation, so
/// one sampler can serve many paths.
class PathSampler {
 public:
  PathSampler(const ProcessSpec& spec, const TimeGrid& grid);

  const TimeGrid& grid() const { return grid_; }

  /// Number of standard-normal deviates one path consumes.
  std::size_t deviate_count() const;

  /// Deterministic linear map from deviates to path values at the grid
  /// nodes, B(t_0) .. B(t_n). out.size() must equal grid().n_nodes().
  void path_from_deviates(std::span<const double> z, std::span<double> out) const;

  std::vector<double> sample(SeededRng& rng) const;

  /// Trapezoid-rule integral of a sampled path over [0, t_max].
  double phase_from_path(std::span<const double> path) const;

  double sample_phase(SeededRng& rng) const;

 private:
  ProcessSpec spec_;
  TimeGrid grid_;
  // OU
  double ar_coeff_ = 0.0;
  double innovation_sd_ = 0.0;
  double stationary_sd_ = 0.0;
  // fgn/wiener: row-major lower-triangular factor for nodes t_1 .. t_n
  std::vector<double> chol_;
  std::size_t dim_ = 0;
};

/// One path of B at the grid nodes, distributed exactly with the process
/// covariance (no SDE discretization error).
std::vector<double> sample_path(const ProcessSpec& spec, const TimeGrid& grid,
                                SeededRng& rng);

/// One phase draw phi(t) = integral of B over [0, t]. The grid must span
/// [0, t]. White noise bypasses paths: phi is drawn exactly with variance
/// beta(t) = t. For repeated draws prefer PathSampler::sample_phase, which
/// reuses the precomputed factorization.
double sample_phase(const ProcessSpec& spec, double t, const TimeGrid& grid,
                    SeededRng& rng);

}  // namespace qdephase
