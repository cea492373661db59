#include "qdephase/states.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qdephase {

namespace {

constexpr double kWeightSlack = 1e-12;

// Negativity values are clamped to [0, 1]; anything below this threshold
// collapses to exact zero. Past sudden death the defining expressions
// cancel exactly in real arithmetic but leave O(eps) noise in doubles,
// and a separable state must report 0, not 2e-16.
constexpr double kNegativitySnap = 1e-14;

double clamp_negativity(double n) {
  if (n < kNegativitySnap) return 0.0;
  return std::min(n, 1.0);
}

// Eigenvalues of the Hermitian 2x2 block [[a, b], [conj(b), d]].
struct BlockEigs {
  double lo, hi;
};

BlockEigs herm2_eigenvalues(double a, const std::complex<double>& b, double d) {
  const double mean = 0.5 * (a + d);
  const double disc = std::hypot(0.5 * (a - d), std::abs(b));
  return {mean - disc, mean + disc};
}

}  // namespace

BellMixture::BellMixture(double c1, double c2, double c3, double c4)
    : c_{c1, c2, c3, c4} {
  double sum = 0.0;
  for (double& c : c_) {
    if (c < -kWeightSlack) {
      throw std::domain_error("BellMixture: negative weight " + std::to_string(c));
    }
    sum += c;
    if (c < 0.0) c = 0.0;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::domain_error("BellMixture: weights sum to " + std::to_string(sum) +
                            ", expected 1");
  }
}

void TwoQubitDensity::validate() const {
  const auto& self = *this;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (std::abs(self(i, j) - std::conj(self(j, i))) > 1e-12) {
        throw std::domain_error("TwoQubitDensity: not Hermitian");
      }
      const bool on_x = (i == j) || (i + j == 3);
      if (!on_x && std::abs(self(i, j)) > 1e-12) {
        throw std::domain_error("TwoQubitDensity: not X-shaped");
      }
    }
  }
  const std::complex<double> trace = self(0, 0) + self(1, 1) + self(2, 2) + self(3, 3);
  if (std::abs(trace - 1.0) > 1e-12) {
    throw std::domain_error("TwoQubitDensity: trace differs from 1");
  }
  const auto outer = herm2_eigenvalues(self(0, 0).real(), self(0, 3), self(3, 3).real());
  const auto inner = herm2_eigenvalues(self(1, 1).real(), self(1, 2), self(2, 2).real());
  if (std::min(outer.lo, inner.lo) < -1e-10) {
    throw std::domain_error("TwoQubitDensity: negative eigenvalue");
  }
}

BlochDiagonal c_to_a(const BellMixture& m) {
  return {m.c1() - m.c2() + m.c3() - m.c4(),
          -m.c1() + m.c2() + m.c3() - m.c4(),
          m.c1() + m.c2() - m.c3() - m.c4()};
}

BellMixture a_to_c(const BlochDiagonal& b) {
  const double c1 = 0.25 * (1.0 + b.a1 - b.a2 + b.a3);
  const double c2 = 0.25 * (1.0 - b.a1 + b.a2 + b.a3);
  const double c3 = 0.25 * (1.0 + b.a1 + b.a2 - b.a3);
  const double c4 = 0.25 * (1.0 - b.a1 - b.a2 - b.a3);
  if (c1 < -kWeightSlack || c2 < -kWeightSlack || c3 < -kWeightSlack ||
      c4 < -kWeightSlack) {
    throw std::domain_error("a_to_c: point lies outside the Bell tetrahedron");
  }
  return {c1, c2, c3, c4};
}

TwoQubitDensity density_matrix(const BellMixture& m) {
  const double phi_pop = 0.5 * (m.c1() + m.c2());   // |00>,|11> populations
  const double psi_pop = 0.5 * (m.c3() + m.c4());   // |01>,|10> populations
  const double phi_coh = 0.5 * (m.c1() - m.c2());
  const double psi_coh = 0.5 * (m.c3() - m.c4());

  TwoQubitDensity::Matrix mat{};
  TwoQubitDensity rho(mat);
  rho(0, 0) = phi_pop;
  rho(3, 3) = phi_pop;
  rho(0, 3) = phi_coh;
  rho(3, 0) = phi_coh;
  rho(1, 1) = psi_pop;
  rho(2, 2) = psi_pop;
  rho(1, 2) = psi_coh;
  rho(2, 1) = psi_coh;
  return rho;
}

double negativity(const TwoQubitDensity& rho) {
  rho.validate();
  // Partial transposition swaps the two anti-diagonal coherences between
  // the (00,11) and (01,10) blocks.
  const auto outer = herm2_eigenvalues(rho(0, 0).real(), rho(1, 2), rho(3, 3).real());
  const auto inner = herm2_eigenvalues(rho(1, 1).real(), rho(0, 3), rho(2, 2).real());
  double n = 0.0;
  for (double eig : {outer.lo, outer.hi, inner.lo, inner.hi}) {
    if (eig < 0.0) n -= 2.0 * eig;
  }
  return clamp_negativity(n);
}

double negativity_bell_mixture(const BellMixture& m, double x, EnvTopology env) {
  if (!(x > 0.0) || x > 1.0 + 1e-12) {
    throw std::domain_error("negativity_bell_mixture: dephasing factor " +
                            std::to_string(x) + " outside (0, 1]");
  }
  const double c1 = m.c1(), c2 = m.c2(), c3 = m.c3(), c4 = m.c4();
  double n;
  if (env == EnvTopology::Independent) {
    n = 0.5 * (std::abs(c1 + c2 + x * (c3 - c4)) + std::abs(c1 + c2 - x * (c3 - c4)) +
               std::abs(x * (c1 - c2) + c3 + c4) + std::abs(-x * (c1 - c2) + c3 + c4)) -
        1.0;
  } else {
    n = 0.5 * (std::abs(x * (c1 - c2) + c3 + c4) + std::abs(x * (c2 - c1) + c3 + c4) +
               std::abs(1.0 - 2.0 * c3) + std::abs(1.0 - 2.0 * c4) - 2.0);
  }
  return clamp_negativity(n);
}

BellMixture sample_random_mixture(SeededRng& rng, bool entangled_only) {
  for (;;) {
    double draw[4];
    double sum = 0.0;
    for (double& v : draw) {
      v = rng.exponential();
      sum += v;
    }
    BellMixture m(draw[0] / sum, draw[1] / sum, draw[2] / sum, draw[3] / sum);
    if (!entangled_only) return m;
    if (negativity_bell_mixture(m, 1.0, EnvTopology::Independent) > 1e-6) return m;
  }
}

}  // namespace qdephase
