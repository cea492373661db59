#include "qdephase/dynamics.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <doctest.h>

using namespace qdephase;

namespace {

EvolutionParams params(ProcessSpec spec, EnvTopology env, double lambda = 1.0,
                       double omega0 = 1.0) {
  return EvolutionParams{lambda, omega0, spec, env};
}

double max_elementwise_distance(const TwoQubitDensity& a, const TwoQubitDensity& b) {
  double err = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) err = std::max(err, std::abs(a(i, j) - b(i, j)));
  return err;
}

}  // namespace

TEST_CASE("dephasing factor") {
  const auto white = params(ProcessSpec::white_noise(), EnvTopology::Independent);
  CHECK(dephasing_factor(white, 0.0) == 1.0);
  CHECK(dephasing_factor(white, 0.25) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));

  const auto common = params(ProcessSpec::white_noise(), EnvTopology::Common);
  CHECK(dephasing_factor(common, 0.25) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));

  // lambda enters squared
  const auto half = params(ProcessSpec::white_noise(), EnvTopology::Independent, 0.5);
  CHECK(dephasing_factor(half, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
}

TEST_CASE("evolve at t = 0 is the identity map") {
  SeededRng rng(3);
  for (int i = 0; i < 50; ++i) {
    const BellMixture m = sample_random_mixture(rng, false);
    for (auto env : {EnvTopology::Independent, EnvTopology::Common}) {
      const auto p = params(ProcessSpec::ou(1.0), env);
      CHECK(max_elementwise_distance(evolve(m, p, 0.0), density_matrix(m)) == 0.0);
    }
  }
}

TEST_CASE("evolved Bell state matrix elements") {
  const auto p = params(ProcessSpec::ou(1.0), EnvTopology::Independent, 1.0, 0.0);
  const double t = 1.0;
  const double x = std::exp(-4.0 * std::exp(-1.0));  // e^{-4 beta_OU(1)}
  const auto rho = evolve(BellMixture::phi_plus(), p, t);
  CHECK(rho(0, 0).real() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(rho(3, 3).real() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(rho(0, 3).real() == doctest::Approx(0.5 * x).epsilon(1e-14));
  CHECK(rho(0, 3).imag() == doctest::Approx(0.0));
  CHECK(std::abs(rho(1, 2)) == 0.0);

  // with omega0 on, the corner picks up the e^{-4 i omega0 t} rotation
  const auto rotating = params(ProcessSpec::ou(1.0), EnvTopology::Independent, 1.0, 0.7);
  const auto rho2 = evolve(BellMixture::phi_plus(), rotating, t);
  CHECK(std::abs(rho2(0, 3)) == doctest::Approx(0.5 * x).epsilon(1e-14));
  CHECK(std::arg(rho2(0, 3)) == doctest::Approx(-4.0 * 0.7 * t).epsilon(1e-12));
  CHECK(rho2(3, 0) == std::conj(rho2(0, 3)));
}

TEST_CASE("psi states are fixed points of the common-environment map") {
  const auto p = params(ProcessSpec::wiener(), EnvTopology::Common);
  for (const auto& m : {BellMixture::psi_plus(), BellMixture::psi_minus(),
                        BellMixture(0.0, 0.0, 0.6, 0.4)}) {
    for (double t : {0.1, 1.0, 10.0}) {
      CHECK(max_elementwise_distance(evolve(m, p, t), density_matrix(m)) < 1e-15);
    }
  }
}

TEST_CASE("common environment conserves the inner coherence exactly") {
  SeededRng rng(41);
  for (int i = 0; i < 100; ++i) {
    const BellMixture m = sample_random_mixture(rng, false);
    const auto p = params(ProcessSpec::fgn(0.7), EnvTopology::Common);
    const double expected = 0.5 * (m.c3() - m.c4());
    for (double t : {0.3, 2.0}) {
      const auto rho = evolve(m, p, t);
      CHECK(rho(1, 2).real() == expected);
      CHECK(rho(1, 2).imag() == 0.0);
    }
  }
}

TEST_CASE("pure dephasing leaves populations untouched") {
  SeededRng rng(43);
  for (int i = 0; i < 100; ++i) {
    const BellMixture m = sample_random_mixture(rng, false);
    const auto rho0 = density_matrix(m);
    for (auto env : {EnvTopology::Independent, EnvTopology::Common}) {
      const auto p = params(ProcessSpec::ou(2.0), env);
      for (double t : {0.2, 1.0, 5.0}) {
        const auto rho = evolve(m, p, t);
        for (int d = 0; d < 4; ++d) CHECK(rho(d, d) == rho0(d, d));
      }
    }
  }
}

TEST_CASE("evolve_bloch pinned values") {
  const BlochDiagonal b{1.0, -1.0, 1.0};
  const auto scaled = apply_dephasing(b, 0.5, EnvTopology::Independent);
  CHECK(scaled.a1 == doctest::Approx(0.5));
  CHECK(scaled.a2 == doctest::Approx(-0.5));
  CHECK(scaled.a3 == 1.0);

  const auto common = apply_dephasing(b, 0.5, EnvTopology::Common);
  CHECK(common.a1 == doctest::Approx(0.5));
  CHECK(common.a2 == doctest::Approx(-0.5));
  CHECK(common.a3 == 1.0);

  const auto p = params(ProcessSpec::white_noise(), EnvTopology::Independent);
  const auto same = evolve_bloch(b, p, 0.0);
  CHECK(same.a1 == b.a1);
  CHECK(same.a2 == b.a2);
  CHECK(same.a3 == b.a3);
}

TEST_CASE("evolve and evolve_bloch agree through the state maps") {
  SeededRng rng(47);
  for (int i = 0; i < 100; ++i) {
    const BellMixture m = sample_random_mixture(rng, false);
    for (auto env : {EnvTopology::Independent, EnvTopology::Common}) {
      const auto p = params(ProcessSpec::ou(1.0), env, 1.0, 0.0);
      const double t = 0.4;
      const auto via_bloch = a_to_c(evolve_bloch(c_to_a(m), p, t));
      const auto direct = evolve(m, p, t);
      const auto from_bloch = density_matrix(via_bloch);
      CHECK(max_elementwise_distance(direct, from_bloch) < 1e-13);
    }
  }
}

TEST_CASE("negativity_at basic laws") {
  // Bell states: N = x in the independent case, N = y in the common case
  for (double t : {0.1, 0.5, 1.5}) {
    const auto pi = params(ProcessSpec::ou(1.0), EnvTopology::Independent);
    CHECK(negativity_at(BellMixture::phi_plus(), pi, t) ==
          doctest::Approx(dephasing_factor(pi, t)).epsilon(1e-14));
    const auto pc = params(ProcessSpec::ou(1.0), EnvTopology::Common);
    CHECK(negativity_at(BellMixture::phi_plus(), pc, t) ==
          doctest::Approx(dephasing_factor(pc, t)).epsilon(1e-14));
  }

  // constant-negativity family under a common environment
  const auto pc = params(ProcessSpec::wiener(), EnvTopology::Common);
  for (double t : {0.0, 0.5, 3.0}) {
    CHECK(negativity_at(BellMixture(0.0, 0.0, 0.6, 0.4), pc, t) ==
          doctest::Approx(0.2).epsilon(1e-15));
  }
}

TEST_CASE("negativity does not depend on omega0, bit for bit") {
  SeededRng rng(53);
  for (int i = 0; i < 50; ++i) {
    const BellMixture m = sample_random_mixture(rng, true);
    for (auto env : {EnvTopology::Independent, EnvTopology::Common}) {
      for (double t : {0.2, 1.0}) {
        const double n0 = negativity_at(m, params(ProcessSpec::ou(1.0), env, 1.0, 0.0), t);
        const double n1 = negativity_at(m, params(ProcessSpec::ou(1.0), env, 1.0, 1.0), t);
        const double n17 = negativity_at(m, params(ProcessSpec::ou(1.0), env, 1.0, 17.0), t);
        CHECK(n0 == n1);
        CHECK(n1 == n17);
      }
    }
  }
}

TEST_CASE("negativity is monotone non-increasing in time") {
  SeededRng rng(59);
  for (int i = 0; i < 30; ++i) {
    const BellMixture m = sample_random_mixture(rng, true);
    for (const auto& spec : {ProcessSpec::ou(1.0), ProcessSpec::fgn(0.9),
                             ProcessSpec::wiener(), ProcessSpec::white_noise()}) {
      for (auto env : {EnvTopology::Independent, EnvTopology::Common}) {
        const auto p = params(spec, env);
        double prev = negativity_at(m, p, 0.0);
        for (int k = 1; k <= 60; ++k) {
          const double n = negativity_at(m, p, 0.05 * k);
          CHECK(n <= prev + 1e-15);
          prev = n;
        }
      }
    }
  }
}

TEST_CASE("trajectory structure") {
  const TimeGrid grid(6.0, 120);

  SUBCASE("independent environments converge to the a1 = a2 = 0 line") {
    const auto p = params(ProcessSpec::ou(1.0), EnvTopology::Independent);
    const BellMixture m(0.55, 0.15, 0.2, 0.1);
    const auto rows = trajectory(m, p, grid);
    REQUIRE(rows.size() == grid.n_nodes());
    CHECK(rows.front().t == 0.0);
    const double a3 = rows.front().bloch.a3;
    for (const auto& row : rows) CHECK(row.bloch.a3 == a3);
    CHECK(std::abs(rows.back().bloch.a1) < 1e-6);
    CHECK(std::abs(rows.back().bloch.a2) < 1e-6);
  }

  SUBCASE("common environment fixes the a1 = a2 plane pointwise") {
    const auto p = params(ProcessSpec::ou(1.0), EnvTopology::Common);
    const BellMixture m = a_to_c({0.3, 0.3, -0.2});
    const auto rows = trajectory(m, p, grid);
    for (const auto& row : rows) {
      CHECK(row.bloch.a1 == doctest::Approx(0.3).epsilon(1e-14));
      CHECK(row.bloch.a2 == doctest::Approx(0.3).epsilon(1e-14));
    }
  }
}

TEST_CASE("mc_evolve with lambda = 0 reproduces the rotated state exactly") {
  const auto p = params(ProcessSpec::ou(1.0), EnvTopology::Independent, 0.0, 1.0);
  const BellMixture m(0.6, 0.1, 0.2, 0.1);
  const SeededRng rng(5);
  const auto mc = mc_evolve(m, p, 0.7, 500, 64, rng);
  CHECK(max_elementwise_distance(mc, evolve(m, p, 0.7)) < 1e-12);
}

TEST_CASE("mc_evolve approaches the analytic map") {
  const BellMixture m = BellMixture::phi_plus();
  const auto p = params(ProcessSpec::ou(1.0), EnvTopology::Independent, 1.0, 0.0);
  const SeededRng rng(12345);
  const int samples = 10000;
  const auto mc = mc_evolve(m, p, 1.0, samples, 256, rng);

  const double expected = 0.5 * std::exp(-4.0 * std::exp(-1.0));
  CHECK(std::abs(mc(0, 3)) == doctest::Approx(expected).epsilon(0.02 / expected));
  CHECK(max_elementwise_distance(mc, evolve(m, p, 1.0)) <
        4.0 / std::sqrt(static_cast<double>(samples)));
}

TEST_CASE("mc_evolve is deterministic across thread counts") {
  const BellMixture m(0.5, 0.2, 0.2, 0.1);
  const auto p = params(ProcessSpec::wiener(), EnvTopology::Common);
  const SeededRng rng(777);
  const auto one = mc_evolve(m, p, 0.5, 1000, 64, rng, 1);
  const auto four = mc_evolve(m, p, 0.5, 1000, 64, rng, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(one(i, j) == four(i, j));
}

TEST_CASE("mc_evolve argument validation") {
  const auto p = params(ProcessSpec::ou(1.0), EnvTopology::Independent);
  const SeededRng rng(1);
  CHECK_THROWS_AS(mc_evolve(BellMixture::phi_plus(), p, 1.0, 50, 64, rng),
                  std::domain_error);
  CHECK_THROWS_AS(mc_evolve(BellMixture::phi_plus(), p, -1.0, 500, 64, rng),
                  std::domain_error);
}

TEST_CASE("mc_validate_curve stays within the Monte Carlo budget") {
  const BellMixture m(0.1, 0.0, 0.9, 0.0);
  const auto p = params(ProcessSpec::ou(1.0), EnvTopology::Independent);
  const SeededRng rng(2025);
  const int samples = 4000;
  const auto rows = mc_validate_curve(m, p, 1.0, 8, samples, 256, rng);
  REQUIRE(rows.size() == 9);
  CHECK(rows.front().t == 0.0);
  CHECK(rows.front().max_abs_error < 1e-13);  // averaging rounding only
  const double budget = 4.0 / std::sqrt(static_cast<double>(samples));
  for (const auto& row : rows) CHECK(row.max_abs_error < budget);
}
