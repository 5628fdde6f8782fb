#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "fnspace/derived_sv.hpp"
#include "fnspace/ext_real.hpp"
#include "fnspace/sv_expr.hpp"

namespace fnspace::svfunc {

enum class IntegralClass { convergent, divergent, unknown_numeric };

/// Verdict on the two halves of int t^{-1} b^r(t) dt: (0,1) and (1,inf).
/// Pure log-power pieces are decided symbolically by the iterated-log
/// integral test; exp-log factors fall back to windowed quadrature.
struct IntegrabilityVerdict {
  IntegralClass at_zero = IntegralClass::unknown_numeric;
  IntegralClass at_infinity = IntegralClass::unknown_numeric;
  /// Exponent vectors (r*alpha_level) by level, when the piece is symbolic.
  std::vector<double> zero_exponents;
  std::vector<double> infinity_exponents;

  /// Hypothesis of the Besov definition: divergent head, convergent tail.
  bool besov_hypothesis() const {
    return at_zero == IntegralClass::divergent &&
           at_infinity == IntegralClass::convergent;
  }
};

IntegrabilityVerdict classify_integrability(const SVExpr& b, double r);

/// Log-spaced probe grid; the slowly-varying checks default to 200 points
/// over (1e-12, 1e12).
std::vector<double> log_grid(double t_min, double t_max, int points);

struct SvCheckEntry {
  double epsilon = 0.0;
  // Worst multiplicative drawdown (log scale) of t^eps b(t) against its
  // running max, over the full grid and over the middle half.
  double drop_full = 0.0;
  double drop_half = 0.0;
  // Same for the non-increasing direction of t^{-eps} b(t).
  double rise_full = 0.0;
  double rise_half = 0.0;
  bool pass = false;
};

struct SvCheckReport {
  bool slowly_varying = false;
  std::vector<SvCheckEntry> entries;
};

/// Numeric slow-variation check. For each epsilon the monotonicity violation
/// of t^{+-eps} b(t) is measured on the grid and on its middle half; a
/// violation that saturates (does not grow when the span doubles) is the
/// compact dip every slowly varying function is allowed, while a violation
/// that scales with the span flags a genuine power factor. `tolerance` is the
/// multiplicative noise floor.
SvCheckReport check_slowly_varying(const DerivedSV& b,
                                   const std::vector<double>& epsilons = {0.25, 0.5, 1.0},
                                   const std::vector<double>& grid = log_grid(1e-12, 1e12, 200),
                                   double tolerance = 1.05);

/// b_r(t) = || tau^{-1/r} b(tau) ||_{r;(t,inf)} as a function; empty when the
/// tail integral is infinite for every t.
std::optional<DerivedSV> tail_integral_br(const DerivedSV& b, double r);

/// B_q as a function: || tau^{-1/q} b(tau) ||_{q;(0,t)}.
std::optional<DerivedSV> make_head_Bq(const DerivedSV& b, double q);

/// Pointwise B_q(t); infinite when the head integral diverges.
ExtReal head_integral_Bq(const DerivedSV& b, double q, double t);

/// b_{r,n} built from its own definition || s^{-1/r} b(s^{1/n}) ||_{r;(t,inf)}
/// (not via the substitution identity, which stays available as a test).
std::optional<DerivedSV> make_brn(const DerivedSV& b, double r, double n);

/// Pointwise b_{r,n}(t); infinite on divergent tails.
ExtReal tail_integral_brn(const DerivedSV& b, double r, double n, double t);

/// bbar_{(r,q)} = b_r^{1-r/q} b^{r/q}; equals b itself when q = r.
std::optional<DerivedSV> make_bbar(const DerivedSV& b, double r, double q);

/// btilde_{(r,q,n,p)} = [b_r(t^{1/n})]^{1-r/q+r/max(p,q)} [b(t^{1/n})]^{r/q-r/max(p,q)}.
std::optional<DerivedSV> make_btilde(const DerivedSV& b, double r, double q,
                                     double p, double n);

/// d(x) = b(x) * ( int_x^inf y^{-1}(b/a)^r dy / (b/a)^r(x) )^{1/max(q,r)}.
std::optional<DerivedSV> make_d_max(const DerivedSV& b, const DerivedSV& a,
                                    double r, double q);
/// Same with exponent 1/min(q,r).
std::optional<DerivedSV> make_d_min(const DerivedSV& b, const DerivedSV& a,
                                    double r, double q);

enum class ProbeEnd { zero, infinity };

struct LimsupTrace {
  std::vector<std::pair<double, double>> points;  // (x, ratio)
  bool integral_diverges = false;                 // the one-sided integral itself
  bool exceeds(double threshold) const;
};

/// Trace of || tau^{-1/q} b ||_{q;(x,inf)} / b(x) (end = zero) or of the
/// (0,x) variant (end = infinity) along the grid. Both ratios have limsup
/// +infinity for every slowly varying b; the trace makes that observable.
LimsupTrace limsup_probe(const DerivedSV& b, double q, ProbeEnd end,
                         const std::vector<double>& grid = log_grid(1e-12, 1e12, 200));

}  // namespace fnspace::svfunc
