#include "qdephase/numerics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qdephase {

namespace {

// Expansion of W0 around the branch point z = -1/e in p = sqrt(2(1 + e z)).
double branch_point_series(double p) {
  return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)));
}

}  // namespace

double lambert_w0(double z) {
  if (std::isnan(z)) throw std::domain_error("lambert_w0: NaN argument");

  constexpr double kBranchPoint = -0.36787944117144233;  // -1/e
  if (z < kBranchPoint) {
    if (z < kBranchPoint - 1e-12) {
      throw std::domain_error("lambert_w0: argument " + std::to_string(z) +
                              " below -1/e");
    }
    return -1.0;  // rounding of -1/e itself
  }
  if (z == 0.0) return 0.0;

  const double q = 2.0 * (1.0 + std::exp(1.0) * z);
  if (q <= 0.0) return -1.0;
  const double p = std::sqrt(q);
  if (p < 1e-4) {
    // Halley's denominator degenerates as w -> -1; the series is already
    // accurate to O(p^4) here.
    return branch_point_series(p);
  }

  double w;
  if (z < -0.25) {
    w = branch_point_series(p);
  } else if (z < 3.0) {
    w = std::log1p(z);
  } else {
    const double l1 = std::log(z);
    const double l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  }

  for (int i = 0; i < 64; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - z;
    const double denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0);
    const double step = f / denom;
    w -= step;
    if (std::abs(step) <= 1e-16 * (1.0 + std::abs(w))) break;
  }
  return w < -1.0 ? -1.0 : w;
}

double find_root(const RealFn& f, double lo, double hi, Tolerance tol) {
  if (!(tol.abs_tol > 0.0)) throw std::domain_error("find_root: abs_tol must be > 0");
  if (tol.max_iter < 1) throw std::domain_error("find_root: max_iter must be >= 1");
  if (!(lo <= hi)) throw std::domain_error("find_root: inverted bracket");

  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw std::domain_error("find_root: f has the same sign at both bracket ends");
  }

  for (int iter = 0; iter < tol.max_iter; ++iter) {
    if (hi - lo <= tol.abs_tol) return 0.5 * (lo + hi);

    // Secant proposal on odd iterations; plain bisection otherwise keeps
    // the bracket shrinking geometrically.
    double mid = 0.5 * (lo + hi);
    if (iter % 2 == 1 && fhi != flo) {
      const double secant = lo - flo * (hi - lo) / (fhi - flo);
      const double margin = 0.01 * (hi - lo);
      if (secant > lo + margin && secant < hi - margin) mid = secant;
    }

    const double fmid = f(mid);
    if (fmid == 0.0) return mid;
    if ((fmid > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
      fhi = fmid;
    }
  }
  throw std::runtime_error("find_root: no convergence within max_iter");
}

}  // namespace qdephase
