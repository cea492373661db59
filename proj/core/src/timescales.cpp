#include "qdephase/timescales.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "parallel.hpp"
#include "qdephase/numerics.hpp"

namespace qdephase {

namespace {

void check_lambda(double lambda) {
  if (!(lambda > 0.0)) throw std::domain_error("coupling lambda must be > 0");
}

void check_bound_constant(int A) {
  if (A != 1 && A != 2) throw std::domain_error("A must be 1 or 2");
}

// The negativity of an evolved Bell mixture is piecewise linear in the
// dephasing factor x: N(x) = max(0, v x - u) + max(0, w x - s) with
// v = |c3-c4|, u = c1+c2, w = |c1-c2|, s = c3+c4 in independent
// environments; under a common environment the first term loses its x
// (the Psi coherence is undamped). At most one term is positive, which
// makes the threshold crossing exactly solvable.
struct DecayChannel {
  bool constant = false;  // N does not depend on x at all
  double amplitude = 0.0;  // slope of the active term
  double offset = 0.0;     // its constant part
  double n0 = 0.0;         // initial negativity
};

DecayChannel classify(const BellMixture& m, EnvTopology env) {
  const double u = m.c1() + m.c2();
  const double s = m.c3() + m.c4();
  const double v = std::abs(m.c3() - m.c4());
  const double w = std::abs(m.c1() - m.c2());
  const double psi_term = v - u;  // carried by the inner (Psi) coherence
  const double phi_term = w - s;  // carried by the corner (Phi) coherence

  if (psi_term > 0.0) {
    if (env == EnvTopology::Common) return {true, 0.0, 0.0, psi_term};
    return {false, v, u, psi_term};
  }
  if (phi_term > 0.0) {
    return {false, w, s, phi_term};
  }
  throw std::domain_error("state is not entangled (negativity 0)");
}

double time_at_factor(const ProcessSpec& spec, double lambda, EnvTopology env,
                      double x_c) {
  const double exponent = 4.0 * bound_constant(env) * lambda * lambda;
  return beta_inverse(spec, -std::log(x_c) / exponent);
}

}  // namespace

ThresholdRatio::ThresholdRatio(double r) : r_(r) {
  if (!(r > 0.0 && r < 1.0)) {
    throw std::domain_error("ThresholdRatio: r must lie in (0, 1), got " +
                            std::to_string(r));
  }
}

double beta_star(ThresholdRatio r) { return -0.25 * std::log(r.value()); }

double SurvivalOutcome::time() const {
  if (kind_ != Kind::FiniteTime) {
    throw std::logic_error("SurvivalOutcome::time: outcome is not finite");
  }
  return time_;
}

std::string SurvivalOutcome::label() const {
  switch (kind_) {
    case Kind::FiniteTime: return "finite";
    case Kind::Asymptotic: return "asymptotic";
    case Kind::Never: return "never";
  }
  return "?";
}

double preserving_time_bell(const ProcessSpec& spec, double lambda,
                            ThresholdRatio r, EnvTopology env) {
  check_lambda(lambda);
  const double b = beta_star(r) / (bound_constant(env) * lambda * lambda);
  switch (spec.kind()) {
    case ProcessSpec::Kind::WhiteNoise:
      return b;
    case ProcessSpec::Kind::FractionalGaussianNoise:
    case ProcessSpec::Kind::Wiener: {
      const double e = 2.0 * spec.hurst() + 2.0;
      return std::pow(e * b, 1.0 / e);
    }
    case ProcessSpec::Kind::OrnsteinUhlenbeck: {
      const double g = spec.gamma();
      return (g * b + lambert_w0(-std::exp(-g * b - 1.0)) + 1.0) / g;
    }
  }
  throw std::logic_error("preserving_time_bell: unreachable");
}

SurvivalOutcome preserving_time(const BellMixture& m, const ProcessSpec& spec,
                                double lambda, ThresholdRatio r, EnvTopology env) {
  check_lambda(lambda);
  const DecayChannel ch = classify(m, env);
  if (ch.constant) return SurvivalOutcome::never();
  // Solve amplitude * x - offset = r * n0 for the critical factor.
  const double x_c = r.value() + (1.0 - r.value()) * (ch.offset / ch.amplitude);
  return SurvivalOutcome::finite(time_at_factor(spec, lambda, env, x_c));
}

double tstar_lower_bound(double n0, ThresholdRatio r, int A,
                         const ProcessSpec& spec, double lambda) {
  check_lambda(lambda);
  check_bound_constant(A);
  if (!(n0 > 0.0 && n0 <= 1.0)) {
    throw std::domain_error("tstar_lower_bound: N0 must lie in (0, 1]");
  }
  const double bound =
      std::log((n0 + 1.0) / (n0 * (2.0 * r.value() - 1.0) + 1.0)) / (4.0 * A);
  return beta_inverse(spec, bound / (lambda * lambda));
}

SurvivalOutcome survival_time(const BellMixture& m, const ProcessSpec& spec,
                              double lambda, EnvTopology env) {
  check_lambda(lambda);
  const DecayChannel ch = classify(m, env);
  if (ch.constant) return SurvivalOutcome::never();
  if (ch.offset == 0.0) return SurvivalOutcome::asymptotic();
  return SurvivalOutcome::finite(
      time_at_factor(spec, lambda, env, ch.offset / ch.amplitude));
}

double tes_lower_bound(double n0, int A, const ProcessSpec& spec, double lambda) {
  check_lambda(lambda);
  check_bound_constant(A);
  if (!(n0 > 0.0 && n0 < 1.0)) {
    throw std::domain_error("tes_lower_bound: N0 must lie in (0, 1)");
  }
  const double bound = std::log((1.0 + n0) / (1.0 - n0)) / (4.0 * A);
  return beta_inverse(spec, bound / (lambda * lambda));
}

std::vector<ScatterRow> scatter_study(int n_states, const ProcessSpec& spec,
                                      double lambda, EnvTopology env,
                                      ThresholdRatio r, const SeededRng& rng,
                                      int n_threads) {
  if (n_states < 1) throw std::domain_error("scatter_study: n_states must be >= 1");
  const int A = bound_constant(env);

  std::vector<ScatterRow> rows(
      static_cast<std::size_t>(n_states),
      ScatterRow{BellMixture::phi_plus(), 0.0, SurvivalOutcome::never(),
                 SurvivalOutcome::never(), 0.0, 0.0});

  detail::for_each_block(static_cast<std::size_t>(n_states), 64, n_threads,
                         [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      SeededRng sub = rng.substream(i);
      const BellMixture state = sample_random_mixture(sub, /*entangled_only=*/true);
      const double n0 = negativity_bell_mixture(state, 1.0, EnvTopology::Independent);
      rows[i] = ScatterRow{
          state,
          n0,
          preserving_time(state, spec, lambda, r, env),
          survival_time(state, spec, lambda, env),
          tstar_lower_bound(n0, r, A, spec, lambda),
          n0 < 1.0 ? tes_lower_bound(n0, A, spec, lambda)
                   : std::numeric_limits<double>::infinity(),
      };
    }
  });
  return rows;
}

}  // namespace qdephase
