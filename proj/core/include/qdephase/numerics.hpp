#pragma once

#include <functional>

namespace qdephase {

/// Scalar real function, used together with a sign-change bracket.
using RealFn = std::function<double(double)>;

struct Tolerance {
  double abs_tol = 1e-12;  // bracket width at which the root is accepted
  int max_iter = 200;
};

/// Principal branch W0 of the Lambert W function: the solution w >= -1 of
/// w * exp(w) = z, defined for z >= -1/e.
///
/// Halley iteration with a branch-aware initial guess; stays accurate in
/// the delicate region just above the branch point -1/e.
/// Throws std::domain_error for z < -1/e.
double lambert_w0(double z);

/// Bracketed scalar root finder: bisection with secant acceleration.
///
/// Requires f(lo) and f(hi) of opposite (or zero) sign. Returns the bracket
/// midpoint once the bracket width is at or below tol.abs_tol. Deterministic
/// for identical inputs. Throws std::domain_error on a bad bracket and
/// std::runtime_error if max_iter is exhausted.
double find_root(const RealFn& f, double lo, double hi, Tolerance tol = {});

}  // namespace qdephase
