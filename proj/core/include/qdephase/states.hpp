#pragma once

#include <array>
#include <complex>

#include "qdephase/env.hpp"
#include "qdephase/rng.hpp"

namespace qdephase {

/// Probability weights (c1, c2, c3, c4) over the projectors onto
/// |Phi+>, |Phi->, |Psi+>, |Psi->. Validated on construction:
/// every weight >= 0 (tiny negatives up to -1e-12 are clamped) and the
/// sum equals 1 within 1e-12.
class BellMixture {
 public:
  BellMixture(double c1, double c2, double c3, double c4);

  static BellMixture phi_plus() { return {1.0, 0.0, 0.0, 0.0}; }
  static BellMixture phi_minus() { return {0.0, 1.0, 0.0, 0.0}; }
  static BellMixture psi_plus() { return {0.0, 0.0, 1.0, 0.0}; }
  static BellMixture psi_minus() { return {0.0, 0.0, 0.0, 1.0}; }
  static BellMixture maximally_mixed() { return {0.25, 0.25, 0.25, 0.25}; }

  double c1() const { return c_[0]; }
  double c2() const { return c_[1]; }
  double c3() const { return c_[2]; }
  double c4() const { return c_[3]; }
  const std::array<double, 4>& weights() const { return c_; }

 private:
  std::array<double, 4> c_;
};

/// Diagonal-Bloch coordinates (a1, a2, a3) of a Bell-diagonal state,
/// rho = (I + sum_i a_i sigma_i x sigma_i) / 4.
struct BlochDiagonal {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
};

/// 4x4 complex density matrix, row-major, basis order |00>,|01>,|10>,|11>.
/// Every state in this library is X-shaped (nonzero entries only on the
/// diagonal and anti-diagonal), which validate() relies on: positivity is
/// checked through the closed-form eigenvalues of the two 2x2 blocks, so
/// no general eigensolver is involved.
class TwoQubitDensity {
 public:
  using Matrix = std::array<std::complex<double>, 16>;

  explicit TwoQubitDensity(Matrix m) : m_(m) {}

  const std::complex<double>& operator()(int row, int col) const {
    return m_[static_cast<std::size_t>(row) * 4 + col];
  }
  std::complex<double>& operator()(int row, int col) {
    return m_[static_cast<std::size_t>(row) * 4 + col];
  }
  const Matrix& data() const { return m_; }

  /// Hermitian within 1e-12, unit trace within 1e-12, X-shaped within
  /// 1e-12, eigenvalues >= -1e-10. Throws std::domain_error otherwise.
  void validate() const;

 private:
  Matrix m_;
};

/// Bloch coordinates from mixture weights:
/// a1 = c1-c2+c3-c4, a2 = -c1+c2+c3-c4, a3 = c1+c2-c3-c4.
BlochDiagonal c_to_a(const BellMixture& m);

/// Inverse map. Throws std::domain_error if the point lies outside the
/// Bell-mixture tetrahedron (any recovered weight below -1e-12).
BellMixture a_to_c(const BlochDiagonal& b);

/// rho = sum_i c_i |Bell_i><Bell_i|; always X-shaped.
TwoQubitDensity density_matrix(const BellMixture& m);

/// Entanglement negativity N(rho) = 2 |sum of negative eigenvalues of the
/// partial transpose|, clamped to [0, 1]. The partial transpose of an
/// X-matrix splits into two 2x2 Hermitian blocks whose eigenvalues are
/// evaluated in closed form. Calls validate() on the input.
double negativity(const TwoQubitDensity& rho);

/// Closed-form negativity of an evolved Bell mixture as a function of the
/// dephasing factor x in (0, 1]:
///   independent (x = e^{-4 lambda^2 beta}):
///     N = (|c1+c2+x(c3-c4)| + |c1+c2-x(c3-c4)|
///        + |x(c1-c2)+c3+c4| + |-x(c1-c2)+c3+c4|) / 2 - 1
///   common (x = e^{-8 lambda^2 beta}):
///     N = (|x(c1-c2)+c3+c4| + |x(c2-c1)+c3+c4|
///        + |1-2c3| + |1-2c4| - 2) / 2
/// clamped at 0; values below 1e-14 (cancellation noise past sudden
/// death) collapse to exact zero.
double negativity_bell_mixture(const BellMixture& m, double x, EnvTopology env);

/// Mixture drawn uniformly on the 3-simplex (normalized unit-exponential
/// draws). With entangled_only set, rejection-samples until the t = 0
/// negativity exceeds 1e-6.
BellMixture sample_random_mixture(SeededRng& rng, bool entangled_only);

}  // namespace qdephase
