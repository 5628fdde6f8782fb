#include "fnspace/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <chrono>
#include <cstdio>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "fnspace/cumulative.hpp"
#include "fnspace/quadrature.hpp"

namespace fnspace::hardy {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Weight
// ---------------------------------------------------------------------------

Weight Weight::power(double gamma, double scale) {
  return Weight(gamma, nullptr, scale, "t^" + std::to_string(gamma));
}

Weight Weight::power_sv(double gamma, svfunc::DerivedSV sv, double scale) {
  return Weight(
      gamma, [sv](double u) { return sv.eval_log(u); }, scale,
      "t^" + std::to_string(gamma) + " * " + sv.provenance());
}

Weight Weight::power_fn(double gamma, std::function<double(double)> sv_log,
                        std::string label, double scale) {
  return Weight(gamma, std::move(sv_log), scale, std::move(label));
}

double Weight::eval(double t) const {
  if (!(t > 0.0)) throw std::domain_error("Weight: eval requires t > 0");
  return eval_log(std::log(t));
}

std::function<double(double)> Weight::pow_mass(double e, double extra) const {
  const double expo = e * gamma_ + extra + 1.0;
  const double sc = std::pow(scale_, e);
  auto svf = sv_;
  if (!svf) return [expo, sc](double u) { return sc * std::exp(expo * u); };
  return [expo, sc, svf, e](double u) {
    return sc * std::exp(expo * u) * std::pow(svf(u), e);
  };
}

std::vector<double> GridSpec::ts() const {
  std::vector<double> out;
  out.reserve(static_cast<size_t>(points));
  const double u0 = std::log(t_min), u1 = std::log(t_max);
  for (int i = 0; i < points; ++i)
    out.push_back(std::exp(u0 + (u1 - u0) * i / (points - 1)));
  return out;
}

std::string ConditionReport::to_json() const {
  json j;
  j["criterion"] = criterion;
  if (A) j["A"] = *A;
  if (B) j["B"] = *B;
  j["sup"] = std::isinf(sup_value) ? json("inf") : json(sup_value);
  j["argmax_z"] = argmax_z;
  json tr = json::array();
  for (const auto& [z, v] : trace)
    tr.push_back({z, std::isinf(v) ? json("inf") : json(v)});
  j["trace"] = tr;
  j["verdict"] = verdict == Verdict::finite
                     ? "finite"
                     : (verdict == Verdict::unbounded ? "unbounded" : "inconclusive");
  if (floored_head) j["floored_head"] = true;
  return j.dump();
}

// ---------------------------------------------------------------------------
// Criterion scaffolding
// ---------------------------------------------------------------------------

namespace {

struct HeadInfo {
  std::shared_ptr<const CumulativeHead> table;
  bool diverged = false;
  bool inconclusive = false;
};

HeadInfo make_head(std::function<double(double)> g, double u_floor,
                   bool allow_floor) {
  HeadInfo info;
  info.table = CumulativeHead::build(g);
  if (!info.table) {
    const Integral probe = integrate_head(g, u_floor);
    info.diverged = probe.diverged;
    info.inconclusive = !probe.diverged;
    if (allow_floor) info.table = CumulativeHead::build_floored(std::move(g), u_floor);
  }
  return info;
}

struct TailInfo {
  std::shared_ptr<const CumulativeTail> table;
  bool diverged = false;
  bool inconclusive = false;
};

TailInfo make_tail(std::function<double(double)> g, double u_top) {
  TailInfo info;
  info.table = CumulativeTail::build(g);
  if (!info.table) {
    const Integral probe = integrate_tail(g, u_top);
    info.diverged = probe.diverged;
    info.inconclusive = !probe.diverged;
  }
  return info;
}

// Trace + sup + golden-section refinement around the grid argmax.
ConditionReport finalize(std::string name,
                         const std::function<double(double)>& value_at_u,
                         const GridSpec& grid) {
  ConditionReport rep;
  rep.criterion = std::move(name);
  const std::vector<double> zs = grid.ts();
  double best = -1.0, best_u = std::log(grid.t_min);
  size_t best_i = 0;
  bool any_inf = false;
  for (size_t i = 0; i < zs.size(); ++i) {
    const double u = std::log(zs[i]);
    const double v = value_at_u(u);
    rep.trace.emplace_back(zs[i], v);
    if (std::isinf(v)) {
      any_inf = true;
      continue;
    }
    if (v > best) best = v, best_u = u, best_i = i;
  }

  if (any_inf) {
    rep.sup_value = std::numeric_limits<double>::infinity();
    rep.argmax_z = 0.0;
    rep.verdict = Verdict::unbounded;
    return rep;
  }

  // golden refinement on the bracketing interval
  const double ulo = std::log(zs[best_i == 0 ? 0 : best_i - 1]);
  const double uhi = std::log(zs[std::min(best_i + 1, zs.size() - 1)]);
  double a = ulo, b = uhi;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = value_at_u(c), fd = value_at_u(d);
  for (int it = 0; it < 48 && (b - a) > 1e-10; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = value_at_u(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = value_at_u(d);
    }
  }
  const double refined_u = fc > fd ? c : d;
  const double refined = std::max(best, std::max(fc, fd));
  rep.sup_value = refined;
  rep.argmax_z = std::exp(refined > best ? refined_u : best_u);
  rep.verdict = assess_growth(rep.trace) == GrowthVerdict::unbounded
                    ? Verdict::unbounded
                    : Verdict::finite;
  return rep;
}

double safe_pow(double x, double e) { return std::pow(std::max(x, 0.0), e); }

}  // namespace

// ---------------------------------------------------------------------------
// Criteria
// ---------------------------------------------------------------------------

ConditionReport heinig_stepanov(const Weight& w, const Weight& v, double q,
                                double r, const GridSpec& grid) {
  const double u_top = std::log(grid.t_max);
  TailInfo W = make_tail(w.mass(), u_top);
  TailInfo V = make_tail(v.mass(), u_top);

  ConditionReport rep;
  if (V.diverged || !V.table) {
    rep.criterion = "heinig-stepanov";
    rep.verdict = Verdict::inconclusive;  // V == inf for every t
    return rep;
  }
  if (W.diverged || !W.table) {
    rep.criterion = "heinig-stepanov";
    rep.sup_value = std::numeric_limits<double>::infinity();
    rep.verdict = Verdict::unbounded;
    return rep;
  }

  auto Wt = W.table;
  auto Vt = V.table;
  auto value = [Wt, Vt, q, r](double u) {
    const double vv = Vt->value(u);
    if (vv <= 0.0) return 0.0;
    return safe_pow(Wt->value(u), 1.0 / q) * safe_pow(vv, -1.0 / r);
  };
  return finalize("heinig-stepanov", value, grid);
}

namespace {

// Denominator of the Lai conditions:
// D(z)^P = int_0^z Psi(x)^P w(x) dx + Psi(z)^P int_z^inf w, with Psi the
// cumulative integral of the kernel profile psi.
struct LaiParts {
  std::shared_ptr<const CumulativeHead> psi_head;
  std::shared_ptr<const CumulativeHead> inner_head;  // Psi(x)^P w(x)
  std::shared_ptr<const CumulativeTail> w_tail;
  std::shared_ptr<const CumulativeHead> v_head;
  bool unbounded_num = false;
  bool inconclusive = false;
};

LaiParts lai_parts(const KernelSpec& kernel, const Weight& v, const Weight& w,
                   double P, const GridSpec& grid) {
  LaiParts parts;
  const double u_floor = std::log(grid.t_min);
  parts.psi_head = CumulativeHead::build(kernel.psi.mass());
  if (!parts.psi_head) {
    parts.inconclusive = true;
    return parts;
  }
  auto psi = parts.psi_head;
  auto wm = w.mass();
  parts.inner_head = CumulativeHead::build(
      [psi, wm, P](double u) { return safe_pow(psi->value(u), P) * wm(u); });
  parts.w_tail = CumulativeTail::build(wm);
  if (!parts.inner_head || !parts.w_tail) {
    parts.inconclusive = true;
    return parts;
  }
  HeadInfo vh = make_head(v.mass(), u_floor, false);
  if (vh.diverged) {
    parts.unbounded_num = true;
    return parts;
  }
  if (!vh.table) {
    parts.inconclusive = true;
    return parts;
  }
  parts.v_head = vh.table;
  return parts;
}

}  // namespace

ConditionReport lai_forward_condition(const KernelSpec& kernel, const Weight& v,
                                      const Weight& w, double P, double Q,
                                      const GridSpec& grid) {
  if (!(1.0 <= P && P <= Q && std::isfinite(Q)))
    throw std::invalid_argument("lai_forward_condition requires 1 <= P <= Q < inf");
  LaiParts parts = lai_parts(kernel, v, w, P, grid);
  ConditionReport rep;
  if (parts.inconclusive) {
    rep.criterion = "lai-forward";
    rep.verdict = Verdict::inconclusive;
    return rep;
  }
  if (parts.unbounded_num) {
    rep.criterion = "lai-forward";
    rep.sup_value = std::numeric_limits<double>::infinity();
    rep.verdict = Verdict::unbounded;
    return rep;
  }
  auto value = [parts, P, Q](double u) {
    const double num = safe_pow(parts.v_head->value(u), 1.0 / Q);
    const double denP = parts.inner_head->value(u) +
                        safe_pow(parts.psi_head->value(u), P) * parts.w_tail->value(u);
    if (denP <= 0.0)
      return num > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    return num / safe_pow(denP, 1.0 / P);
  };
  ConditionReport out = finalize("lai-forward", value, grid);
  if (out.sup_value == 0.0) out.verdict = Verdict::inconclusive;  // zero denominator path
  return out;
}

ConditionReport lai_reverse_condition(const KernelSpec& kernel, const Weight& v,
                                      const Weight& w, double P, double Q,
                                      const GridSpec& grid) {
  if (!(0.0 < Q && Q <= P && P <= 1.0))
    throw std::invalid_argument("lai_reverse_condition requires 0 < Q <= P <= 1");
  LaiParts parts = lai_parts(kernel, v, w, P, grid);
  ConditionReport rep;
  if (parts.inconclusive) {
    rep.criterion = "lai-reverse";
    rep.verdict = Verdict::inconclusive;
    return rep;
  }
  if (parts.unbounded_num) {
    // numerator of the reversed ratio is the denominator here: a divergent
    // int_0^z v makes the condition trivially satisfiable
    rep.criterion = "lai-reverse";
    rep.sup_value = 0.0;
    rep.verdict = Verdict::finite;
    return rep;
  }
  auto value = [parts, P, Q](double u) {
    const double den = safe_pow(parts.v_head->value(u), 1.0 / Q);
    const double lhsP = parts.inner_head->value(u) +
                        safe_pow(parts.psi_head->value(u), P) * parts.w_tail->value(u);
    const double lhs = safe_pow(lhsP, 1.0 / P);
    if (den <= 0.0)
      return lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    return lhs / den;
  };
  return finalize("lai-reverse", value, grid);
}

ConditionReport ok_hardy_condition(const Weight& v, const Weight& w, double P,
                                   double Q, const GridSpec& grid) {
  if (!(1.0 <= P && P <= Q))
    throw std::invalid_argument("ok_hardy_condition requires 1 <= P <= Q <= inf");
  const double u_top = std::log(grid.t_max);
  const double u_floor = std::log(grid.t_min);

  ConditionReport rep;
  rep.criterion = "ok-hardy";

  // || w^{1/Q} ||_{Q;(x,inf)}
  std::function<double(double)> w_part;
  bool w_inconclusive = false;
  if (std::isinf(Q)) {
    w_part = [](double) { return 1.0; };  // w^{1/inf} = 1
  } else {
    TailInfo wt = make_tail(w.mass(), u_top);
    if (wt.diverged) {
      rep.sup_value = std::numeric_limits<double>::infinity();
      rep.verdict = Verdict::unbounded;
      return rep;
    }
    if (!wt.table) {
      w_inconclusive = true;
    } else {
      auto t = wt.table;
      w_part = [t, Q](double u) { return safe_pow(t->value(u), 1.0 / Q); };
    }
  }

  // || v^{-1/P} ||_{P';(0,x)}
  std::function<double(double)> v_part;
  bool v_unbounded = false, v_inconclusive = false;
  if (P == 1.0) {
    // P' = inf: essential sup of 1/v over (0,x), approximated by a running
    // grid sup refined per decade
    auto vv = v;
    v_part = [vv, u_floor](double u) {
      double m = 0.0;
      const int steps = 600;
      for (int i = 0; i <= steps; ++i) {
        const double uu = u_floor - 6.0 + (u - u_floor + 6.0) * i / steps;
        m = std::max(m, 1.0 / vv.eval_log(uu));
      }
      return m;
    };
  } else {
    const double Pp = P / (P - 1.0);
    HeadInfo vh = make_head(v.pow_mass(-Pp / P), u_floor, false);
    if (vh.diverged) {
      v_unbounded = true;
    } else if (!vh.table) {
      v_inconclusive = true;
    } else {
      auto t = vh.table;
      v_part = [t, Pp](double u) { return safe_pow(t->value(u), 1.0 / Pp); };
    }
  }

  if (v_unbounded) {
    rep.sup_value = std::numeric_limits<double>::infinity();
    rep.verdict = Verdict::unbounded;
    return rep;
  }
  if (w_inconclusive || v_inconclusive) {
    rep.verdict = Verdict::inconclusive;
    return rep;
  }

  auto value = [w_part, v_part](double u) { return w_part(u) * v_part(u); };
  return finalize("ok-hardy", value, grid);
}

ConditionReport sawyer_conditions(const Weight& v, const Weight& w, double P,
                                  double Q, const GridSpec& grid) {
  if (!(1.0 < P && P <= Q && std::isfinite(Q)))
    throw std::invalid_argument("sawyer_conditions requires 1 < P <= Q < inf");
  const double u_floor = std::log(grid.t_min);
  const double u_top = std::log(grid.t_max);
  const double Pp = P / (P - 1.0);

  ConditionReport rep;
  rep.criterion = "sawyer";

  auto T0 = std::chrono::steady_clock::now();
  auto mark = [&T0](const char* what) {
    auto T1 = std::chrono::steady_clock::now();
    if (getenv("FNSPACE_TRACE"))
      fprintf(stderr, "[sawyer] %-12s %8.0f ms\n", what,
              std::chrono::duration<double, std::milli>(T1 - T0).count());
    T0 = T1;
  };
  HeadInfo wh = make_head(w.mass(), u_floor, true);
  mark("w head");
  HeadInfo vh = make_head(v.mass(), u_floor, true);
  mark("v head");
  if (!wh.table || !vh.table) {
    rep.verdict = Verdict::inconclusive;
    return rep;
  }
  rep.floored_head = wh.diverged || vh.diverged;

  // A = sup_z ( int_0^z w )^{1/Q} ( int_0^z v )^{-1/P}
  auto wt = wh.table;
  auto vt = vh.table;
  auto a_value = [wt, vt, P, Q](double u) {
    const double vv = vt->value(u);
    if (vv <= 0.0) return 0.0;
    return safe_pow(wt->value(u), 1.0 / Q) * safe_pow(vv, -1.0 / P);
  };
  ConditionReport a_rep = finalize("sawyer-A", a_value, grid);
  mark("A finalize");

  // B = sup_z ( int_z^inf x^{-Q} w )^{1/Q} ( int_0^z (x / int_0^x v)^{P'} v dx )^{1/P'}
  TailInfo bt = make_tail(w.pow_mass(1.0, -Q), u_top);
  mark("b tail");
  if (bt.diverged) {
    rep.sup_value = std::numeric_limits<double>::infinity();
    rep.verdict = Verdict::unbounded;
    return rep;
  }
  auto rho = [v, vt, Pp](double u) {
    const double V0 = vt->value(u);
    const double log_v = std::log(v.weight_scale()) + v.power_exponent() * u +
                         std::log(v.sv(u));
    double log_x_over_v0;
    if (V0 > 0.0) {
      log_x_over_v0 = u - std::log(V0);
    } else {
      // below double range V0 ~ x v(x) / (gamma+1); keep the ratio in logs
      log_x_over_v0 = std::log(v.power_exponent() + 1.0) - log_v;
    }
    return std::exp(Pp * log_x_over_v0 + log_v + u);
  };
  HeadInfo rho_head = make_head(rho, u_floor, true);
  mark("rho head");
  if (!rho_head.table || !bt.table) {
    rep.verdict = Verdict::inconclusive;
    return rep;
  }
  rep.floored_head = rep.floored_head || rho_head.diverged;

  auto btail = bt.table;
  auto rhead = rho_head.table;
  auto b_value = [btail, rhead, Q, Pp](double u) {
    return safe_pow(btail->value(u), 1.0 / Q) * safe_pow(rhead->value(u), 1.0 / Pp);
  };
  ConditionReport b_rep = finalize("sawyer-B", b_value, grid);
  mark("B finalize");

  rep.A = a_rep.sup_value;
  rep.B = b_rep.sup_value;
  rep.sup_value = a_rep.sup_value + b_rep.sup_value;
  rep.argmax_z = b_rep.argmax_z;
  rep.trace = std::move(b_rep.trace);
  // A genuinely divergent inner integral means the true B constant is
  // infinite no matter what the floored trace shows.
  if (rho_head.diverged || wh.diverged || vh.diverged)
    rep.verdict = Verdict::unbounded;
  else
    rep.verdict = b_rep.verdict == Verdict::unbounded || a_rep.verdict == Verdict::unbounded
                      ? Verdict::unbounded
                      : Verdict::finite;
  return rep;
}

Weight eo_weight_construct(const Weight& w, const Weight& phi, double s) {
  if (!(s > 0.0 && s < 1.0))
    throw std::domain_error("eo_weight_construct: s must lie in (0,1)");
  auto tail = CumulativeTail::build(w.mass());
  if (!tail)
    throw std::domain_error("eo_weight_construct: int_y^inf w diverges");
  const double gamma = (1.0 - s) * w.power_exponent() + s * phi.power_exponent();
  const double scale =
      std::pow(w.weight_scale(), 1.0 - s) * std::pow(phi.weight_scale(), s);
  auto wf = w;
  auto pf = phi;
  return Weight::power_fn(
      gamma,
      [wf, pf, tail, s](double u) {
        return std::pow(wf.sv(u), 1.0 - s) *
               std::pow(pf.sv(u) * tail->value(u), s);
      },
      "eo(w,phi,s=" + std::to_string(s) + ")", scale);
}

// ---------------------------------------------------------------------------
// Witnesses
// ---------------------------------------------------------------------------

double StepFunction::eval(double t) const {
  for (size_t i = 0; i < values.size(); ++i)
    if (t >= edges[i] && t < edges[i + 1]) return values[i];
  return 0.0;
}

bool StepFunction::non_increasing() const {
  bool positive_seen = false;
  for (double v : values) {
    if (v < 0.0) return false;
    positive_seen = positive_seen || v > 0.0;
  }
  // a gap before the first positive piece means 0 then positive: increasing
  if (positive_seen && !edges.empty() && edges.front() > 0.0) return false;
  for (size_t i = 0; i + 1 < values.size(); ++i)
    if (values[i + 1] > values[i]) return false;
  return true;
}

bool StepFunction::non_decreasing() const {
  for (size_t i = 0; i + 1 < values.size(); ++i)
    if (values[i + 1] < values[i]) return false;
  for (double v : values)
    if (v < 0.0) return false;
  return true;
}

StepFunction StepFunction::indicator(double z, double height) {
  return {{0.0, z}, {height}};
}

namespace {

// int over piece [a,b] of f(t) dt in log coordinates; a may be 0.
double piece_integral(const std::function<double(double)>& mass_g, double a,
                      double b) {
  if (!(b > a)) return 0.0;
  if (a <= 0.0) return integrate_head(mass_g, std::log(b)).value;
  return integrate(mass_g, std::log(a), std::log(b), 1e-11).value;
}

// Cumulative integral of psi * h for a step witness h. Psi is pretabulated
// at the witness edges so each evaluation costs one table lookup.
class KernelCumulative {
 public:
  KernelCumulative(std::shared_ptr<const CumulativeHead> psi, const StepFunction& h)
      : psi_(std::move(psi)), h_(h) {
    prefix_.resize(h.values.size() + 1, 0.0);
    psi_at_edge_.resize(h.edges.size(), 0.0);
    for (size_t i = 0; i < h.edges.size(); ++i)
      psi_at_edge_[i] = h.edges[i] <= 0.0 ? 0.0 : psi_->value(std::log(h.edges[i]));
    for (size_t i = 0; i < h.values.size(); ++i)
      prefix_[i + 1] = prefix_[i] + h.values[i] * (psi_at_edge_[i + 1] - psi_at_edge_[i]);
  }

  double operator()(double x) const {
    if (x <= h_.edges.front()) return 0.0;
    size_t i = 0;
    while (i + 1 < h_.edges.size() && h_.edges[i + 1] < x) ++i;
    if (i >= h_.values.size()) return prefix_.back();
    return prefix_[i] + h_.values[i] * (psi_->value(std::log(x)) - psi_at_edge_[i]);
  }

 private:
  std::shared_ptr<const CumulativeHead> psi_;
  StepFunction h_;
  std::vector<double> prefix_;
  std::vector<double> psi_at_edge_;
};

// Running integral of the witness itself.
double step_cumulative(const StepFunction& h, double x) {
  double m = 0.0;
  for (size_t i = 0; i < h.values.size(); ++i) {
    const double lo = h.edges[i], hi = std::min(h.edges[i + 1], x);
    if (hi <= lo) break;
    m += h.values[i] * (hi - lo);
    if (hi >= x) break;
  }
  return m;
}

// int_0^inf F(x)^e w(x) dx where F is piecewise-smooth between the witness
// edges and constant past the last edge.
template <class Fn>
double outer_integral(const Fn& F, double e, const Weight& w,
                      const std::vector<double>& edges) {
  auto wm = w.mass();
  auto g = [&](double u) {
    const double x = std::exp(u);
    return std::pow(std::max(F(x), 0.0), e) * wm(u);
  };
  std::set<double> cuts;
  for (double t : edges)
    if (t > 0.0) cuts.insert(std::log(t));
  if (cuts.empty()) return 0.0;
  double total = integrate_head(g, *cuts.begin()).value;
  double lo = *cuts.begin();
  for (auto it = std::next(cuts.begin()); it != cuts.end(); ++it) {
    total += integrate(g, lo, *it, 1e-11).value;
    lo = *it;
  }
  const Integral tail = integrate_tail(g, lo);
  if (tail.diverged)
    throw std::domain_error("witness_test: outer integral diverges");
  total += tail.value;
  return total;
}

}  // namespace

double witness_test(InequalityKind kind, const std::optional<KernelSpec>& kernel,
                    const Weight& v, const Weight& w, double P, double Q,
                    const StepFunction& witness) {
  const bool needs_nonincreasing = kind == InequalityKind::lai_forward ||
                                   kind == InequalityKind::lai_reverse ||
                                   kind == InequalityKind::sawyer;
  if (needs_nonincreasing && !witness.non_increasing())
    throw std::invalid_argument("witness_test: witness must be non-increasing");
  for (double val : witness.values)
    if (val < 0.0) throw std::invalid_argument("witness_test: witness must be >= 0");

  switch (kind) {
    case InequalityKind::lai_forward:
    case InequalityKind::lai_reverse: {
      if (!kernel) throw std::invalid_argument("witness_test: kernel required");
      auto psi = CumulativeHead::build(kernel->psi.mass());
      if (!psi) throw std::domain_error("witness_test: kernel head diverges");
      double hQv = 0.0;
      for (size_t i = 0; i < witness.values.size(); ++i)
        hQv += std::pow(witness.values[i], Q) *
               piece_integral(v.mass(), witness.edges[i], witness.edges[i + 1]);
      const KernelCumulative M(psi, witness);
      const double rhsP = outer_integral(M, P, w, witness.edges);
      const double lhs = std::pow(hQv, 1.0 / Q);
      const double rhs = std::pow(rhsP, 1.0 / P);
      return kind == InequalityKind::lai_forward ? lhs / rhs : rhs / lhs;
    }
    case InequalityKind::ok_hardy:
    case InequalityKind::sawyer: {
      double gPv = 0.0;
      for (size_t i = 0; i < witness.values.size(); ++i)
        gPv += std::pow(witness.values[i], P) *
               piece_integral(v.mass(), witness.edges[i], witness.edges[i + 1]);
      auto G = [&](double x) {
        const double base = step_cumulative(witness, x);
        return kind == InequalityKind::sawyer ? base / x : base;
      };
      const double lhsQ = outer_integral(G, Q, w, witness.edges);
      return std::pow(lhsQ, 1.0 / Q) / std::pow(gPv, 1.0 / P);
    }
    case InequalityKind::eo: {
      if (!kernel) throw std::invalid_argument("witness_test: kernel required");
      const double s = P;  // the construction exponent
      double hsv = 0.0;
      for (size_t i = 0; i < witness.values.size(); ++i)
        hsv += std::pow(witness.values[i], s) *
               piece_integral(v.mass(), witness.edges[i], witness.edges[i + 1]);
      auto psi = CumulativeHead::build(kernel->psi.mass());
      if (!psi) throw std::domain_error("witness_test: kernel head diverges");
      const KernelCumulative M(psi, witness);
      const double rhs = outer_integral(M, s, w, witness.edges);
      return hsv / rhs;
    }
  }
  throw std::logic_error("witness_test: unreachable");
}

// ---------------------------------------------------------------------------
// Witness family
// ---------------------------------------------------------------------------

std::vector<StepFunction> monotone_function_family(unsigned long long seed,
                                                   int count, MonotoneClass cls) {
  std::mt19937_64 rng(seed);
  auto u01 = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // portable uniform
  };
  std::vector<StepFunction> out;
  out.reserve(static_cast<size_t>(count));
  for (int k = 0; k < count; ++k) {
    const int pieces = 3 + static_cast<int>(rng() % 6);
    std::vector<double> exps;
    for (int i = 0; i <= pieces; ++i) exps.push_back(-6.0 + 12.0 * u01());
    std::sort(exps.begin(), exps.end());
    StepFunction f;
    for (double e : exps) f.edges.push_back(std::pow(10.0, e));
    double val = std::exp(3.0 * (u01() - 0.5));
    std::vector<double> vals;
    for (int i = 0; i < pieces; ++i) {
      vals.push_back(val);
      val *= 0.15 + 0.8 * u01();  // strictly decreasing
    }
    if (cls == MonotoneClass::non_decreasing) std::reverse(vals.begin(), vals.end());
    f.values = std::move(vals);
    if (cls == MonotoneClass::non_increasing) {
      f.edges.insert(f.edges.begin(), 0.0);
      f.values.insert(f.values.begin(), f.values.front());
    }
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace fnspace::hardy
