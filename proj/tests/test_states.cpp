#include "qdephase/states.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <doctest.h>

using namespace qdephase;

namespace {

// Independent eigenvalue oracle: cyclic Jacobi sweeps on a 4x4 Hermitian
// matrix. Deliberately avoids the 2x2 block shortcut used by the library.
std::vector<double> jacobi_eigenvalues(std::array<std::complex<double>, 16> a) {
  auto at = [&](int i, int j) -> std::complex<double>& { return a[i * 4 + j]; };
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) off += std::norm(at(i, j));
    if (off < 1e-30) break;
    for (int p = 0; p < 4; ++p) {
      for (int q = p + 1; q < 4; ++q) {
        const std::complex<double> apq = at(p, q);
        if (std::abs(apq) < 1e-18) continue;
        const double app = at(p, p).real();
        const double aqq = at(q, q).real();
        // unitary 2x2 rotation that zeroes the (p,q) element
        const double theta = 0.5 * std::atan2(2.0 * std::abs(apq), app - aqq);
        const std::complex<double> phase = std::conj(apq) / std::abs(apq);
        const double c = std::cos(theta);
        const std::complex<double> s = std::sin(theta) * phase;
        for (int k = 0; k < 4; ++k) {
          const std::complex<double> akp = at(k, p);
          const std::complex<double> akq = at(k, q);
          at(k, p) = c * akp + s * akq;
          at(k, q) = -std::conj(s) * akp + c * akq;
        }
        for (int k = 0; k < 4; ++k) {
          const std::complex<double> apk = at(p, k);
          const std::complex<double> aqk = at(q, k);
          at(p, k) = c * apk + std::conj(s) * aqk;
          at(q, k) = -s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> eigs = {at(0, 0).real(), at(1, 1).real(), at(2, 2).real(),
                              at(3, 3).real()};
  std::sort(eigs.begin(), eigs.end());
  return eigs;
}

// Negativity straight from the definition: partial transpose on the second
// qubit, then the Jacobi spectrum.
double negativity_oracle(const TwoQubitDensity& rho) {
  std::array<std::complex<double>, 16> pt{};
  for (int r1 = 0; r1 < 2; ++r1)
    for (int r2 = 0; r2 < 2; ++r2)
      for (int c1 = 0; c1 < 2; ++c1)
        for (int c2 = 0; c2 < 2; ++c2)
          pt[(2 * r1 + r2) * 4 + (2 * c1 + c2)] = rho(2 * r1 + c2, 2 * c1 + r2);
  double n = 0.0;
  for (double eig : jacobi_eigenvalues(pt))
    if (eig < 0.0) n -= 2.0 * eig;
  return n;
}

}  // namespace

TEST_CASE("bell mixture validation") {
  CHECK_THROWS_AS(BellMixture(0.5, 0.5, 0.5, -0.5), std::domain_error);
  CHECK_THROWS_AS(BellMixture(0.3, 0.3, 0.3, 0.3), std::domain_error);
  const BellMixture clamped(1.0 + 5e-13, -5e-13, 0.0, 0.0);
  CHECK(clamped.c2() == 0.0);
}

TEST_CASE("c_to_a pinned values") {
  const auto bell = c_to_a(BellMixture::phi_plus());
  CHECK(bell.a1 == 1.0);
  CHECK(bell.a2 == -1.0);
  CHECK(bell.a3 == 1.0);

  const auto mixed = c_to_a(BellMixture::maximally_mixed());
  CHECK(mixed.a1 == 0.0);
  CHECK(mixed.a2 == 0.0);
  CHECK(mixed.a3 == 0.0);

  const auto psim = c_to_a(BellMixture::psi_minus());
  CHECK(psim.a1 == -1.0);
  CHECK(psim.a2 == -1.0);
  CHECK(psim.a3 == -1.0);
}

TEST_CASE("a_to_c pinned values") {
  const auto mixed = a_to_c({0.0, 0.0, 0.0});
  for (double c : mixed.weights()) CHECK(c == 0.25);

  const auto phi = a_to_c({1.0, -1.0, 1.0});
  CHECK(phi.c1() == 1.0);
  CHECK(phi.c2() == 0.0);

  const auto equal_phi = a_to_c({0.0, 0.0, 1.0});
  CHECK(equal_phi.c1() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(equal_phi.c2() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(equal_phi.c3() == 0.0);
  CHECK(equal_phi.c4() == 0.0);

  CHECK_THROWS_AS(a_to_c({1.0, 1.0, 1.0}), std::domain_error);
}

TEST_CASE("c_to_a and a_to_c are mutually inverse") {
  SeededRng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const BellMixture m = sample_random_mixture(rng, false);
    const BellMixture back = a_to_c(c_to_a(m));
    for (int k = 0; k < 4; ++k) {
      CHECK(back.weights()[k] == doctest::Approx(m.weights()[k]).epsilon(1e-14));
    }
    const BlochDiagonal b = c_to_a(m);
    const BlochDiagonal b2 = c_to_a(a_to_c(b));
    CHECK(b2.a1 == doctest::Approx(b.a1).epsilon(1e-14));
    CHECK(b2.a2 == doctest::Approx(b.a2).epsilon(1e-14));
    CHECK(b2.a3 == doctest::Approx(b.a3).epsilon(1e-14));
  }
}

TEST_CASE("density matrix structure") {
  const auto phi = density_matrix(BellMixture::phi_plus());
  CHECK(phi(0, 0).real() == 0.5);
  CHECK(phi(0, 3).real() == 0.5);
  CHECK(phi(3, 0).real() == 0.5);
  CHECK(phi(3, 3).real() == 0.5);
  CHECK(std::abs(phi(1, 1)) == 0.0);
  CHECK(std::abs(phi(0, 1)) == 0.0);

  const auto mixed = density_matrix(BellMixture::maximally_mixed());
  for (int i = 0; i < 4; ++i) CHECK(mixed(i, i).real() == 0.25);
  CHECK(std::abs(mixed(0, 3)) == 0.0);

  const auto m = density_matrix(BellMixture(0.1, 0.0, 0.9, 0.0));
  CHECK(m(0, 0).real() == doctest::Approx(0.05));
  CHECK(m(1, 1).real() == doctest::Approx(0.45));
  CHECK(m(2, 2).real() == doctest::Approx(0.45));
  CHECK(m(3, 3).real() == doctest::Approx(0.05));
  CHECK(m(0, 3).real() == doctest::Approx(0.05));
  CHECK(m(1, 2).real() == doctest::Approx(0.45));
}

TEST_CASE("density matrices satisfy the type invariants") {
  SeededRng rng(17);
  for (int i = 0; i < 200; ++i) {
    CHECK_NOTHROW(density_matrix(sample_random_mixture(rng, false)).validate());
  }
}

TEST_CASE("negativity pinned values") {
  CHECK(negativity(density_matrix(BellMixture::phi_plus())) == doctest::Approx(1.0));
  CHECK(negativity(density_matrix(BellMixture::psi_minus())) == doctest::Approx(1.0));
  CHECK(negativity(density_matrix(BellMixture::maximally_mixed())) == 0.0);

  const auto rho = density_matrix(BellMixture(0.85, 0.05, 0.05, 0.05));
  CHECK(negativity(rho) == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(negativity(rho) == doctest::Approx(negativity_oracle(rho)).epsilon(1e-12));
}

TEST_CASE("negativity rejects invalid densities") {
  TwoQubitDensity::Matrix m{};
  m[0] = {0.9, 0.0};
  m[5] = {0.4, 0.0};  // trace 1.3
  m[10] = {0.0, 0.0};
  m[15] = {0.0, 0.0};
  CHECK_THROWS_AS(negativity(TwoQubitDensity(m)), std::domain_error);
}

TEST_CASE("negativity closed form agrees with the eigenvalue route") {
  SeededRng rng(31);
  for (int i = 0; i < 1000; ++i) {
    const BellMixture m = sample_random_mixture(rng, false);
    const auto rho = density_matrix(m);
    const double closed = negativity_bell_mixture(m, 1.0, EnvTopology::Independent);
    CHECK(closed == doctest::Approx(negativity(rho)).epsilon(1e-12));
  }
}

TEST_CASE("negativity against the Jacobi oracle on random mixtures") {
  SeededRng rng(83);
  for (int i = 0; i < 50; ++i) {
    const auto rho = density_matrix(sample_random_mixture(rng, false));
    CHECK(negativity(rho) == doctest::Approx(negativity_oracle(rho)).epsilon(1e-11));
  }
}

TEST_CASE("negativity_bell_mixture pinned values") {
  CHECK(negativity_bell_mixture(BellMixture::phi_plus(), 1.0,
                                EnvTopology::Independent) == doctest::Approx(1.0));
  CHECK(negativity_bell_mixture(BellMixture::phi_plus(), 1.0, EnvTopology::Common) ==
        doctest::Approx(1.0));

  // ESD point of the 1:9 Phi+/Psi+ mixture sits exactly at x = 1/9
  const BellMixture m(0.1, 0.0, 0.9, 0.0);
  CHECK(negativity_bell_mixture(m, 1.0 / 9.0, EnvTopology::Independent) ==
        doctest::Approx(0.0).epsilon(1e-15));
  CHECK(negativity_bell_mixture(m, 0.2, EnvTopology::Independent) > 0.0);

  // common environment, c1 = c2: constant over time
  const BellMixture psi_mix(0.0, 0.0, 0.6, 0.4);
  for (double x : {1.0, 0.7, 0.2, 1e-6}) {
    CHECK(negativity_bell_mixture(psi_mix, x, EnvTopology::Common) ==
          doctest::Approx(0.2).epsilon(1e-15));
  }

  CHECK_THROWS_AS(negativity_bell_mixture(m, 0.0, EnvTopology::Independent),
                  std::domain_error);
  CHECK_THROWS_AS(negativity_bell_mixture(m, 1.5, EnvTopology::Independent),
                  std::domain_error);
}

TEST_CASE("separable octahedron: negativity vanishes iff max weight <= 1/2") {
  SeededRng rng(11);
  for (int i = 0; i < 2000; ++i) {
    const BellMixture m = sample_random_mixture(rng, false);
    const double n = negativity_bell_mixture(m, 1.0, EnvTopology::Independent);
    const double cmax = *std::max_element(m.weights().begin(), m.weights().end());
    if (cmax > 0.5 + 1e-12) {
      CHECK(n > 0.0);
      CHECK(n == doctest::Approx(2.0 * cmax - 1.0).epsilon(1e-12));
    } else {
      CHECK(n <= 1e-11);  // exact zero up to the abs-sum cancellation noise
    }
  }
}

TEST_CASE("random mixtures sit on the simplex") {
  SeededRng rng(23);
  std::array<double, 4> mean{};
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    const BellMixture m = sample_random_mixture(rng, false);
    double sum = 0.0;
    for (int k = 0; k < 4; ++k) {
      CHECK(m.weights()[k] >= 0.0);
      sum += m.weights()[k];
      mean[k] += m.weights()[k];
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
  // each coordinate of a uniform simplex draw has mean 1/4 and
  // sd = sqrt(3)/(4 sqrt(5)); 4 standard errors of the sample mean
  const double se = 4.0 * std::sqrt(3.0 / 80.0) / std::sqrt(draws);
  for (double v : mean) CHECK(std::abs(v / draws - 0.25) < se);
}

TEST_CASE("entangled-only rejection sampling") {
  SeededRng rng(29);
  for (int i = 0; i < 500; ++i) {
    const BellMixture m = sample_random_mixture(rng, true);
    CHECK(negativity_bell_mixture(m, 1.0, EnvTopology::Independent) > 1e-6);
    CHECK(*std::max_element(m.weights().begin(), m.weights().end()) > 0.5);
  }
}
