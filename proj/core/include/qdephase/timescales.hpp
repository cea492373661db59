#pragma once

#include <string>
#include <vector>

#include "qdephase/dynamics.hpp"

namespace qdephase {

/// Fraction r of the initial negativity defining the entanglement-
/// preserving time, 0 < r < 1. Defaults to 0.99.
class ThresholdRatio {
 public:
  explicit ThresholdRatio(double r = 0.99);
  double value() const { return r_; }

 private:
  double r_;
};

/// beta* = -ln(r) / 4, the beta-space threshold for a pure Bell state in
/// independent environments at unit coupling.
double beta_star(ThresholdRatio r);

/// How (and whether) a negativity threshold is reached:
///   FiniteTime  - N hits the threshold at a finite time
///   Asymptotic  - N approaches it only as t -> infinity
///   Never       - N is constant and never decays at all
class SurvivalOutcome {
 public:
  enum class Kind { FiniteTime, Asymptotic, Never };

  static SurvivalOutcome finite(double t) { return {Kind::FiniteTime, t}; }
  static SurvivalOutcome asymptotic() { return {Kind::Asymptotic, 0.0}; }
  static SurvivalOutcome never() { return {Kind::Never, 0.0}; }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::FiniteTime; }
  double time() const;  // throws std::logic_error unless FiniteTime
  std::string label() const;  // "finite" | "asymptotic" | "never"

 private:
  SurvivalOutcome(Kind k, double t) : kind_(k), time_(t) {}
  Kind kind_;
  double time_;
};

/// Entanglement-preserving time t* for an initial pure Bell state whose
/// negativity decays as exp(-4 A lambda^2 beta(t)), via the closed forms
///   OU:          (gamma b + W0(-exp(-gamma b - 1)) + 1) / gamma
///   white noise: b
///   fgn:         ((2H+2) b)^{1/(2H+2)}
///   wiener:      (3 b)^{1/3}
/// with b = beta*/(A lambda^2). Under a common environment this covers the
/// Phi Bell states; |Psi+-> do not decay there at all (see
/// preserving_time).
double preserving_time_bell(const ProcessSpec& spec, double lambda,
                            ThresholdRatio r, EnvTopology env);

/// Entanglement-preserving time for a general Bell mixture: the critical
/// dephasing factor x_c is solved exactly from the piecewise-linear
/// negativity, then t = beta_inverse(-ln x_c / (4 A lambda^2)). Returns
/// Never when the negativity is constant (common environment, mixtures
/// entangled through the undamped Psi coherence). Throws std::domain_error
/// if the state is not entangled.
SurvivalOutcome preserving_time(const BellMixture& m, const ProcessSpec& spec,
                                double lambda, ThresholdRatio r, EnvTopology env);

/// Lower bound on t* at initial negativity n0:
/// beta(t*) >= ln((n0+1)/(n0(2r-1)+1)) / (4 A lambda^2), attained by
/// mixtures of one Phi and one Psi Bell state.
double tstar_lower_bound(double n0, ThresholdRatio r, int A,
                         const ProcessSpec& spec, double lambda);

/// Entanglement-survival time: when the state becomes separable. The
/// discrimination between FiniteTime, Asymptotic and Never is exact case
/// analysis on the piecewise-linear negativity, never a numeric threshold.
SurvivalOutcome survival_time(const BellMixture& m, const ProcessSpec& spec,
                              double lambda, EnvTopology env);

/// Lower bound on the survival time, the r = 0 case of tstar_lower_bound:
/// beta(t_ES) >= ln((1+n0)/(1-n0)) / (4 A lambda^2). Requires n0 in (0,1);
/// it diverges as n0 -> 1.
double tes_lower_bound(double n0, int A, const ProcessSpec& spec, double lambda);

struct ScatterRow {
  BellMixture state;
  double n0 = 0.0;
  SurvivalOutcome preserving;
  SurvivalOutcome survival;
  double tstar_bound = 0.0;
  double tes_bound = 0.0;  // +infinity when n0 is 1 within rounding
};

/// Timescales and bounds for n_states random entangled mixtures. Row i is
/// generated from rng.substream(i), so the table is identical for every
/// seed-fixed run and worker count.
std::vector<ScatterRow> scatter_study(int n_states, const ProcessSpec& spec,
                                      double lambda, EnvTopology env,
                                      ThresholdRatio r, const SeededRng& rng,
                                      int n_threads = 0);

}  // namespace qdephase
