#pragma once

// Shared test fixtures: the standard broken-log weight used throughout, its
// closed forms, and an adaptive-Simpson reference integrator kept independent
// of the library's Gauss-Kronrod path so oracle values do not share code with
// the implementation they check.

#include <cmath>
#include <functional>

#include "fnspace/sv_expr.hpp"

namespace testsupport {

/// b = l^-1 on (0,1], l^-2 on [1,inf): the weight satisfying the Besov
/// hypothesis with closed-form calculus.
inline fnspace::svfunc::SVExpr standard_b() {
  return fnspace::svfunc::SVExpr::broken(-1.0, -2.0);
}

/// Closed form of the r = 1 tail integral of standard_b:
///   b_1(t) = 1 + log(1 + log(1/t)) for t <= 1,  1/(1+log t) for t >= 1.
inline double standard_b1(double t) {
  if (t <= 1.0) return 1.0 + std::log(1.0 + std::log(1.0 / t));
  return 1.0 / (1.0 + std::log(t));
}

inline double standard_b_eval(double t) {
  if (t <= 1.0) return 1.0 / (1.0 + std::log(1.0 / t));
  const double l = 1.0 + std::log(t);
  return 1.0 / (l * l);
}

/// Plain adaptive Simpson; deliberately independent of fnspace::integrate.
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      double eps = 1e-11, int depth = 30) {
  auto s = [&f](double x0, double x1) {
    return (x1 - x0) / 6.0 * (f(x0) + 4.0 * f(0.5 * (x0 + x1)) + f(x1));
  };
  std::function<double(double, double, double, double, int)> rec =
      [&](double x0, double x1, double whole, double tol, int d) -> double {
    const double m = 0.5 * (x0 + x1);
    const double left = s(x0, m), right = s(m, x1);
    if (d <= 0 || std::fabs(left + right - whole) < 15.0 * tol * (1.0 + std::fabs(left + right)))
      return left + right + (left + right - whole) / 15.0;
    return rec(x0, m, left, tol * 0.5, d - 1) + rec(m, x1, right, tol * 0.5, d - 1);
  };
  return rec(a, b, s(a, b), eps, depth);
}

/// Reference integrals in log coordinates: the argument is the already
/// substituted integrand g(u) = f(e^u) e^u, so no test ever forms e^u for
/// |u| beyond double range (slowly varying tails need u ~ 1e7).
inline double simpson_head_log(const std::function<double(double)>& g,
                               double u_top, double eps = 1e-11) {
  double total = 0.0;
  double hi = u_top;
  double width = 4.0;
  for (int k = 0; k < 200; ++k) {
    const double lo = hi - width;
    const double inc = simpson(g, lo, hi, eps);
    total += inc;
    hi = lo;
    width = std::max(4.0, 0.25 * std::fabs(hi));
    if (std::fabs(inc) < 1e-14 * (std::fabs(total) + 1e-300)) break;
  }
  return total;
}

inline double simpson_tail_log(const std::function<double(double)>& g,
                               double u_bot, double eps = 1e-11) {
  double total = 0.0;
  double lo = u_bot;
  for (int k = 0; k < 200; ++k) {
    const double width = std::max(4.0, 0.5 * std::fabs(lo));
    const double hi = lo + width;
    const double inc = simpson(g, lo, hi, eps);
    total += inc;
    lo = hi;
    if (std::fabs(inc) < 1e-14 * (std::fabs(total) + 1e-300)) break;
  }
  return total;
}

/// Convenience t-space wrappers for integrands supported well inside double
/// range.
inline double simpson_head(const std::function<double(double)>& f, double T,
                           double eps = 1e-11) {
  return simpson_head_log(
      [&f](double u) { return f(std::exp(u)) * std::exp(u); }, std::log(T), eps);
}

inline double simpson_tail(const std::function<double(double)>& f, double T,
                           double eps = 1e-11) {
  return simpson_tail_log(
      [&f](double u) { return f(std::exp(u)) * std::exp(u); }, std::log(T), eps);
}

}  // namespace testsupport
