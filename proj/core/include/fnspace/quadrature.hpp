#pragma once

#include <functional>

namespace fnspace {

struct Integral {
  double value = 0.0;
  double abs_error = 0.0;
  bool converged = false;
  /// Set when the window extension saw growing (or non-decaying) increments:
  /// the integral is treated as +infinity by callers.
  bool diverged = false;
};

/// Adaptive Gauss-Kronrod (G7,K15) on a finite interval.
/// rel_tol is relative to the accumulated integral; abs_floor guards the
/// all-but-zero case.
Integral integrate(const std::function<double(double)>& f, double a, double b,
                   double rel_tol = 1e-11, double abs_floor = 1e-300,
                   int max_intervals = 4000);

/// Integral of g over [u0, +inf) where g is expected to decay at least like a
/// negative power of u (integrands here are log-space images of slowly varying
/// weights). Windows are extended geometrically until the increment falls
/// below rel_tol of the accumulated value; growing increments across
/// max_windows declare divergence.
Integral integrate_tail(const std::function<double(double)>& g, double u0,
                        double rel_tol = 1e-12, int max_windows = 60);

/// Integral of g over (-inf, u1]; mirror of integrate_tail.
Integral integrate_head(const std::function<double(double)>& g, double u1,
                        double rel_tol = 1e-12, int max_windows = 60);

}  // namespace fnspace
