#include "fnspace/sv_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>

#include "fnspace/cumulative.hpp"
#include "fnspace/quadrature.hpp"

namespace fnspace::svfunc {

namespace {

// ---------------------------------------------------------------------------
// Symbolic integral test on the iterated-log scale.
//
// After u = |log t| the integrand of int t^{-1} b^r dt becomes
// prod_i L_i(u)^{beta_i} with L_1 = 1+u, L_{i+1} = 1+log L_i and
// beta_i = r*alpha_i. The integral over (0,1) or (1,inf) diverges iff the
// exponent vector is lexicographically >= (-1,-1,...,-1).
// ---------------------------------------------------------------------------

std::vector<double> exponent_vector(const SvPiece& piece, double r) {
  int max_level = 0;
  for (const auto& f : piece.logpow) max_level = std::max(max_level, f.level);
  std::vector<double> beta(static_cast<size_t>(max_level), 0.0);
  for (const auto& f : piece.logpow) beta[static_cast<size_t>(f.level - 1)] += r * f.alpha;
  return beta;
}

IntegralClass classify_logpower(const std::vector<double>& beta) {
  for (double be : beta) {
    if (be > -1.0) return IntegralClass::divergent;
    if (be < -1.0) return IntegralClass::convergent;
  }
  return IntegralClass::divergent;  // all exponents exactly -1 (or empty)
}

// Numeric fallback for pieces with an exp-log factor. Integrates
// g(u) = b(e^{su})^r over doubling windows (s = -1 for the zero end) and
// classifies by the increment trend, Richardson-style: geometric decay with a
// stable ratio is convergent, sustained growth or stagnation is divergent,
// anything else stays unknown.
IntegralClass classify_numeric(const DerivedSV& b, double r, int sign) {
  double width = 4.0;
  double lo = 0.0;
  double total = 0.0;
  double prev = -1.0;
  int decaying = 0, flat_or_growing = 0;
  for (int w = 0; w < 60; ++w) {
    const double hi = lo + width;
    auto g = [&](double u) { return std::pow(b.eval_log(sign * u), r); };
    const Integral piece = integrate(g, lo, hi, 1e-10);
    total += piece.value;
    if (prev >= 0.0) {
      const double ratio = piece.value / std::max(prev, 1e-300);
      if (ratio < 0.75)
        ++decaying, flat_or_growing = 0;
      else
        ++flat_or_growing, decaying = 0;
    }
    if (decaying >= 4 && piece.value < 1e-12 * std::max(total, 1e-300))
      return IntegralClass::convergent;
    if (flat_or_growing >= 8) return IntegralClass::divergent;
    prev = piece.value;
    lo = hi;
    width *= 2.0;
  }
  return IntegralClass::unknown_numeric;
}

}  // namespace

IntegrabilityVerdict classify_integrability(const SVExpr& b, double r) {
  IntegrabilityVerdict v;
  v.zero_exponents = exponent_vector(b.left(), r);
  v.infinity_exponents = exponent_vector(b.right(), r);

  if (b.left().pure_logpower()) {
    v.at_zero = classify_logpower(v.zero_exponents);
  } else {
    const double c = b.left().explog->c * r;
    // Sign shortcut only for a clear-cut exponential factor; otherwise probe.
    v.at_zero = classify_numeric(DerivedSV(b), r, -1);
    if (v.at_zero == IntegralClass::unknown_numeric && c != 0.0)
      v.at_zero = c > 0.0 ? IntegralClass::divergent : IntegralClass::convergent;
  }
  if (b.right().pure_logpower()) {
    v.at_infinity = classify_logpower(v.infinity_exponents);
  } else {
    const double c = b.right().explog->c * r;
    v.at_infinity = classify_numeric(DerivedSV(b), r, +1);
    if (v.at_infinity == IntegralClass::unknown_numeric && c != 0.0)
      v.at_infinity = c > 0.0 ? IntegralClass::divergent : IntegralClass::convergent;
  }
  return v;
}

std::vector<double> log_grid(double t_min, double t_max, int points) {
  std::vector<double> g;
  g.reserve(static_cast<size_t>(points));
  const double u0 = std::log(t_min), u1 = std::log(t_max);
  for (int i = 0; i < points; ++i) {
    const double u = points == 1 ? u0 : u0 + (u1 - u0) * i / (points - 1);
    g.push_back(std::exp(u));
  }
  return g;
}

// ---------------------------------------------------------------------------
// check_slowly_varying
// ---------------------------------------------------------------------------

namespace {

// Worst drop (log scale) of the sequence phi against its running max.
double worst_drop(const std::vector<double>& phi, size_t lo, size_t hi) {
  double run_max = -1e308, worst = 0.0;
  for (size_t i = lo; i < hi; ++i) {
    run_max = std::max(run_max, phi[i]);
    worst = std::max(worst, run_max - phi[i]);
  }
  return worst;
}

}  // namespace

SvCheckReport check_slowly_varying(const DerivedSV& b,
                                   const std::vector<double>& epsilons,
                                   const std::vector<double>& grid,
                                   double tolerance) {
  SvCheckReport report;
  report.slowly_varying = true;
  const double allow = std::log(tolerance);

  const size_t n = grid.size();
  std::vector<double> u(n), logb(n);
  for (size_t i = 0; i < n; ++i) {
    u[i] = std::log(grid[i]);
    logb[i] = std::log(b.eval_log(u[i]));
  }
  const size_t q1 = n / 4, q3 = n - n / 4;

  for (double eps : epsilons) {
    SvCheckEntry e;
    e.epsilon = eps;
    std::vector<double> inc(n), dec(n);
    for (size_t i = 0; i < n; ++i) {
      inc[i] = eps * u[i] + logb[i];   // t^{+eps} b : should not drop
      dec[i] = eps * u[i] - logb[i];   // t^{-eps} b : should not rise,
    }                                  //   i.e. its negation should not drop
    e.drop_full = worst_drop(inc, 0, n);
    e.drop_half = worst_drop(inc, q1, q3);
    e.rise_full = worst_drop(dec, 0, n);
    e.rise_half = worst_drop(dec, q1, q3);
    const bool inc_ok = e.drop_full <= allow || e.drop_full <= e.drop_half + allow;
    const bool dec_ok = e.rise_full <= allow || e.rise_full <= e.rise_half + allow;
    e.pass = inc_ok && dec_ok;
    report.slowly_varying = report.slowly_varying && e.pass;
    report.entries.push_back(e);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Table-backed transforms
// ---------------------------------------------------------------------------

namespace {

bool symbolic_tail_divergent(const DerivedSV& b, double r) {
  if (!b.symbolic()) return false;
  const auto& expr = *b.symbolic();
  if (!expr.right().pure_logpower()) return false;
  return classify_logpower(exponent_vector(expr.right(), r)) == IntegralClass::divergent;
}

bool symbolic_head_divergent(const DerivedSV& b, double q) {
  if (!b.symbolic()) return false;
  const auto& expr = *b.symbolic();
  if (!expr.left().pure_logpower()) return false;
  return classify_logpower(exponent_vector(expr.left(), q)) == IntegralClass::divergent;
}

}  // namespace

std::optional<DerivedSV> tail_integral_br(const DerivedSV& b, double r) {
  if (symbolic_tail_divergent(b, r)) return std::nullopt;
  auto table = CumulativeTail::build([b, r](double u) { return std::pow(b.eval_log(u), r); });
  if (!table) return std::nullopt;
  return DerivedSV(
      [table, r](double u) { return std::pow(table->value(u), 1.0 / r); },
      "b_r(r=" + std::to_string(r) + ")");
}

std::optional<DerivedSV> make_head_Bq(const DerivedSV& b, double q) {
  if (symbolic_head_divergent(b, q)) return std::nullopt;
  auto table = CumulativeHead::build([b, q](double u) { return std::pow(b.eval_log(u), q); });
  if (!table) return std::nullopt;
  return DerivedSV(
      [table, q](double u) { return std::pow(table->value(u), 1.0 / q); },
      "B_q(q=" + std::to_string(q) + ")");
}

ExtReal head_integral_Bq(const DerivedSV& b, double q, double t) {
  if (!(t > 0.0)) throw std::domain_error("head_integral_Bq: t must be positive");
  auto bq = make_head_Bq(b, q);
  if (!bq) return ExtReal::infinity();
  return ExtReal::finite(bq->eval(t));
}

std::optional<DerivedSV> make_brn(const DerivedSV& b, double r, double n) {
  if (symbolic_tail_divergent(b, r)) return std::nullopt;
  auto table =
      CumulativeTail::build([b, r, n](double u) { return std::pow(b.eval_log(u / n), r); });
  if (!table) return std::nullopt;
  return DerivedSV(
      [table, r](double u) { return std::pow(table->value(u), 1.0 / r); },
      "b_{r,n}(r=" + std::to_string(r) + ",n=" + std::to_string(n) + ")");
}

ExtReal tail_integral_brn(const DerivedSV& b, double r, double n, double t) {
  if (!(t > 0.0)) throw std::domain_error("tail_integral_brn: t must be positive");
  auto brn = make_brn(b, r, n);
  if (!brn) return ExtReal::infinity();
  return ExtReal::finite(brn->eval(t));
}

std::optional<DerivedSV> make_bbar(const DerivedSV& b, double r, double q) {
  if (q == r) {
    return DerivedSV([b](double u) { return b.eval_log(u); },
                     "bbar(q=r) = b", "bbar_{(r,r)} = b");
  }
  auto br = tail_integral_br(b, r);
  if (!br) return std::nullopt;
  const double e_br = 1.0 - r / q, e_b = r / q;
  DerivedSV brv = *br;
  return DerivedSV(
      [brv, b, e_br, e_b](double u) {
        return std::pow(brv.eval_log(u), e_br) * std::pow(b.eval_log(u), e_b);
      },
      "bbar(r=" + std::to_string(r) + ",q=" + std::to_string(q) + ")");
}

std::optional<DerivedSV> make_btilde(const DerivedSV& b, double r, double q,
                                     double p, double n) {
  auto br = tail_integral_br(b, r);
  if (!br) return std::nullopt;
  const double m = std::max(p, q);
  const double e_br = 1.0 - r / q + r / m, e_b = r / q - r / m;
  DerivedSV brv = *br;
  return DerivedSV(
      [brv, b, e_br, e_b, n](double u) {
        return std::pow(brv.eval_log(u / n), e_br) * std::pow(b.eval_log(u / n), e_b);
      },
      "btilde(r=" + std::to_string(r) + ",q=" + std::to_string(q) +
          ",p=" + std::to_string(p) + ",n=" + std::to_string(n) + ")");
}

namespace {

std::optional<DerivedSV> make_d_impl(const DerivedSV& b, const DerivedSV& a,
                                     double r, double q, double expnt,
                                     const char* tag) {
  DerivedSV c = DerivedSV::ratio(b, a, "b/a");
  auto table = CumulativeTail::build([c, r](double u) { return std::pow(c.eval_log(u), r); });
  if (!table) return std::nullopt;
  return DerivedSV(
      [table, b, c, r, expnt](double u) {
        const double num = table->value(u);
        const double den = std::pow(c.eval_log(u), r);
        return b.eval_log(u) * std::pow(num / den, expnt);
      },
      std::string(tag) + "(r=" + std::to_string(r) + ",q=" + std::to_string(q) + ")");
}

}  // namespace

std::optional<DerivedSV> make_d_max(const DerivedSV& b, const DerivedSV& a,
                                    double r, double q) {
  return make_d_impl(b, a, r, q, 1.0 / std::max(q, r), "d_max");
}

std::optional<DerivedSV> make_d_min(const DerivedSV& b, const DerivedSV& a,
                                    double r, double q) {
  return make_d_impl(b, a, r, q, 1.0 / std::min(q, r), "d_min");
}

bool LimsupTrace::exceeds(double threshold) const {
  for (const auto& [x, v] : points)
    if (v > threshold) return true;
  return false;
}

LimsupTrace limsup_probe(const DerivedSV& b, double q, ProbeEnd end,
                         const std::vector<double>& grid) {
  LimsupTrace trace;
  if (end == ProbeEnd::zero) {
    auto bq = tail_integral_br(b, q);
    if (!bq) {
      trace.integral_diverges = true;
      return trace;
    }
    for (double x : grid) {
      const double u = std::log(x);
      trace.points.emplace_back(x, bq->eval_log(u) / b.eval_log(u));
    }
  } else {
    auto hq = make_head_Bq(b, q);
    if (!hq) {
      trace.integral_diverges = true;
      return trace;
    }
    for (double x : grid) {
      const double u = std::log(x);
      trace.points.emplace_back(x, hq->eval_log(u) / b.eval_log(u));
    }
  }
  return trace;
}

}  // namespace fnspace::svfunc
