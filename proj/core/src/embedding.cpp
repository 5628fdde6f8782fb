#include "fnspace/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "fnspace/cumulative.hpp"
#include "fnspace/quadrature.hpp"

namespace fnspace::embed {

using hardy::ConditionReport;
using hardy::Verdict;
using hardy::Weight;
using nlohmann::json;
using rearrange::RearrangementProfile;
using rearrange::SampledFunction;
using svfunc::DerivedSV;

double EmbeddingCase::rho() const {
  if (p <= q) return std::numeric_limits<double>::infinity();
  return 1.0 / (1.0 / q - 1.0 / p);
}

std::string EmbeddingCase::to_json() const {
  json j;
  j["n"] = n;
  j["p"] = p;
  j["r"] = r;
  j["q"] = q;
  j["b"] = json::parse(b.to_json());
  if (kappa) j["kappa"] = json::parse(kappa->to_json());
  return j.dump();
}

EmbeddingCase EmbeddingCase::from_json(const std::string& text) {
  json j = json::parse(text);
  EmbeddingCase c;
  c.n = j.value("n", 1.0);
  c.p = j.at("p").get<double>();
  c.r = j.at("r").get<double>();
  c.q = j.at("q").get<double>();
  c.b = svfunc::SVExpr::from_json(j.at("b").dump());
  if (j.contains("kappa"))
    c.kappa = svfunc::SVExpr::from_json(j.at("kappa").dump());
  if (!(c.p > 1.0 && std::isfinite(c.p)))
    throw std::invalid_argument("EmbeddingCase: p must lie in (1,inf)");
  if (!(c.r >= 1.0 && c.q >= 1.0))
    throw std::invalid_argument("EmbeddingCase: r, q must lie in [1,inf)");
  if (!(c.n >= 1.0)) throw std::invalid_argument("EmbeddingCase: n must be >= 1");
  return c;
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

EmbeddingReport analyze(const EmbeddingCase& c) {
  EmbeddingReport rep;
  rep.hypothesis = svfunc::classify_integrability(c.b, c.r);
  rep.hypothesis_ok = rep.hypothesis.besov_hypothesis();
  rep.q_ge_r = c.q >= c.r;
  rep.embedding_holds = rep.hypothesis_ok && rep.q_ge_r;
  if (!rep.hypothesis_ok) {
    if (rep.hypothesis.at_infinity == svfunc::IntegralClass::divergent)
      rep.note = "tail norm of b diverges: the Besov space is trivial";
    else if (rep.hypothesis.at_zero == svfunc::IntegralClass::convergent)
      rep.note = "head norm of b converges: the Besov norm is equivalent to L_p";
    return rep;
  }

  DerivedSV b(c.b);
  rep.bbar = svfunc::make_bbar(b, c.r, c.q);
  rep.btilde = svfunc::make_btilde(b, c.r, c.q, c.p, c.n);
  if (!rep.bbar || !rep.btilde) {
    rep.note = "derived weight construction failed (divergent tail)";
    rep.embedding_holds = false;
    return rep;
  }

  // || t^{-1/q} bbar ||_{q;(1,inf)} against its closed-form value
  auto br = svfunc::tail_integral_br(b, c.r);
  auto g = [&](double u) { return std::pow(rep.bbar->eval_log(u), c.q); };
  rep.tail_norm_value = std::pow(integrate_tail(g, 0.0).value, 1.0 / c.q);
  rep.tail_norm_expected = std::pow(c.r / c.q, 1.0 / c.q) * br->eval(1.0);

  // || t^{-1/q} bbar ||_{q;(t,1)} along t -> 0: must grow without bound
  double acc = 0.0;
  double hi = 0.0;
  for (int k = 1; k <= 12; ++k) {
    const double lo = -k * std::log(10.0);
    acc += integrate(g, lo, hi, 1e-11).value;
    hi = lo;
    rep.head_growth_trace.emplace_back(std::pow(10.0, -k), std::pow(acc, 1.0 / c.q));
  }
  const double first = rep.head_growth_trace.front().second;
  const double last = rep.head_growth_trace.back().second;
  bool monotone = true;
  for (size_t i = 1; i < rep.head_growth_trace.size(); ++i)
    monotone = monotone &&
               rep.head_growth_trace[i].second >= rep.head_growth_trace[i - 1].second;
  rep.head_diverges = monotone && last > 1.5 * first;
  return rep;
}

std::string EmbeddingReport::to_json() const {
  json j;
  auto cls = [](svfunc::IntegralClass c) {
    switch (c) {
      case svfunc::IntegralClass::convergent: return "convergent";
      case svfunc::IntegralClass::divergent: return "divergent";
      default: return "unknown-numeric";
    }
  };
  j["hypothesis"] = {{"at_zero", cls(hypothesis.at_zero)},
                     {"at_infinity", cls(hypothesis.at_infinity)},
                     {"ok", hypothesis_ok}};
  j["q_ge_r"] = q_ge_r;
  j["embedding_holds"] = embedding_holds;
  if (!note.empty()) j["note"] = note;
  j["bbar_tail_norm"] = {{"value", tail_norm_value},
                         {"expected", tail_norm_expected},
                         {"provenance", "quadrature"}};
  json tr = json::array();
  for (const auto& [t, v] : head_growth_trace) tr.push_back({t, v});
  j["bbar_head_growth"] = {{"trace", tr}, {"diverges", head_diverges}};
  return j.dump();
}

// ---------------------------------------------------------------------------
// empirical_embedding_constant
// ---------------------------------------------------------------------------

EmbeddingConstantReport empirical_embedding_constant(
    const EmbeddingCase& c, const std::vector<SampledFunction>& family) {
  EmbeddingConstantReport rep;
  DerivedSV b(c.b);
  auto bbar = svfunc::make_bbar(b, c.r, c.q);
  if (!bbar) throw std::domain_error("empirical_embedding_constant: bbar undefined");

  int idx = 0;
  for (const auto& f : family) {
    FamilyMember m;
    m.label = "f" + std::to_string(idx++);
    const auto bes = spaces::besov_norm(f, c.p, c.r, b, spaces::Interval::global);
    if (f.empty() || !bes.norm.is_finite() || bes.norm.as_double() == 0.0) {
      m.skipped = true;
      rep.members.push_back(m);
      continue;
    }
    const RearrangementProfile prof = rearrange::rearrange(f);
    const ExtReal z = spaces::z_norm(prof, c.p, c.q, c.n, *bbar);
    if (!z.is_finite()) {
      m.skipped = true;
      rep.members.push_back(m);
      continue;
    }
    m.besov = bes.norm.value();
    m.z = z.value();
    m.ratio = m.z / m.besov;
    rep.max_ratio = std::max(rep.max_ratio, m.ratio);
    rep.members.push_back(m);
  }
  return rep;
}

std::string EmbeddingConstantReport::to_json() const {
  json j;
  j["max_ratio"] = max_ratio;
  json arr = json::array();
  for (const auto& m : members)
    arr.push_back({{"label", m.label},
                   {"besov", m.besov},
                   {"z", m.z},
                   {"ratio", m.ratio},
                   {"skipped", m.skipped}});
  j["members"] = arr;
  j["provenance"] = "quadrature";
  return j.dump();
}

// ---------------------------------------------------------------------------
// optimality_chain
// ---------------------------------------------------------------------------

OptimalityReport optimality_chain(const EmbeddingCase& c) {
  if (c.r > c.q) throw std::invalid_argument("optimality_chain requires r <= q");
  DerivedSV b(c.b);
  auto bbar = svfunc::make_bbar(b, c.r, c.q);
  if (!bbar) throw std::domain_error("optimality_chain: bbar undefined");

  OptimalityReport rep;
  const double n = c.n;
  DerivedSV bbar_n = bbar->dilate_exponent(n);
  DerivedSV b_n = DerivedSV(c.b).dilate_exponent(n);
  const double q = c.q, r = c.r;
  Weight w = Weight::power_fn(
      -1.0, [bbar_n, q](double u) { return std::pow(bbar_n.eval_log(u), q); },
      "t^-1 bbar^q(t^{1/n})");
  Weight v = Weight::power_fn(
      -1.0, [b_n, r](double u) { return std::pow(b_n.eval_log(u), r); },
      "t^-1 b^r(t^{1/n})");
  rep.condition = hardy::heinig_stepanov(w, v, c.q, c.r);
  rep.expected_sup = std::pow(n * c.r / c.q, 1.0 / c.q) * std::pow(n, -1.0 / c.r);

  // cross-check on indicators: || ||_{Z_{p,q,n,bbar}} <= C || ||_{Z_{p,r,n,b}}
  for (int k = -8; k <= 8; k += 2) {
    const RearrangementProfile prof = RearrangementProfile::indicator(std::pow(2.0, k));
    const ExtReal num = spaces::z_norm(prof, c.p, c.q, c.n, *bbar);
    const ExtReal den = spaces::z_norm(prof, c.p, c.r, c.n, b);
    if (num.is_finite() && den.is_finite() && den.value() > 0.0)
      rep.max_norm_ratio = std::max(rep.max_norm_ratio, num.value() / den.value());
  }
  return rep;
}

std::string OptimalityReport::to_json() const {
  json j;
  j["condition"] = json::parse(condition.to_json());
  j["expected_sup"] = expected_sup;
  j["max_norm_ratio"] = max_norm_ratio;
  j["provenance"] = "quadrature";
  return j.dump();
}

// ---------------------------------------------------------------------------
// cgo2_condition
// ---------------------------------------------------------------------------

Cgo2Report cgo2_condition(const EmbeddingCase& c, const Weight& w) {
  Cgo2Report rep;
  const double q = c.q, p = c.p;
  const double rho = c.rho();

  // W_q(t)^q = int_0^t w(s)^q ds
  auto head = CumulativeHead::build(w.pow_mass(q));
  if (!head) {
    rep.wq1_infinite = true;
    rep.verdict = GrowthVerdict::unbounded;
    return rep;
  }
  auto Wq = [head, q](double u) { return std::pow(head->value(u), 1.0 / q); };
  const double Wq1 = Wq(0.0);

  DerivedSV b(c.b);
  auto brn = svfunc::make_brn(b, c.r, c.n);
  if (!brn) throw std::domain_error("cgo2_condition: b_{r,n} undefined");

  for (int k = 48; k >= 1; --k) {
    const double u_t = -0.25 * k * std::log(10.0);  // t from 1e-12 up to ~0.56
    double norm_part;
    if (std::isinf(rho)) {
      double m = 0.0;
      const int steps = 400;
      for (int i = 0; i <= steps; ++i) {
        const double u = u_t + (0.0 - u_t) * i / steps;
        m = std::max(m, std::exp(-u / p) * Wq(u));
      }
      norm_part = m;
    } else {
      auto g = [&](double u) {
        return std::exp(-(rho / p) * u) * std::pow(Wq(u), rho);
      };
      norm_part = std::pow(integrate(g, u_t, 0.0, 1e-10).value, 1.0 / rho);
    }
    const double lhs = Wq1 + norm_part;
    const double t = std::exp(u_t);
    rep.trace.emplace_back(t, lhs / brn->eval_log(u_t));
  }
  std::reverse(rep.trace.begin(), rep.trace.end());  // order by growing 1/t
  std::vector<std::pair<double, double>> by_invt;
  for (const auto& [t, v] : rep.trace) by_invt.emplace_back(1.0 / t, v);
  rep.verdict = assess_growth(by_invt);
  return rep;
}

std::string Cgo2Report::to_json() const {
  json j;
  json tr = json::array();
  for (const auto& [t, v] : trace) tr.push_back({t, v});
  j["trace"] = tr;
  j["wq1_infinite"] = wq1_infinite;
  j["verdict"] = verdict == GrowthVerdict::bounded
                     ? "bounded"
                     : (verdict == GrowthVerdict::unbounded ? "unbounded" : "inconclusive");
  j["provenance"] = "quadrature";
  return j.dump();
}

// ---------------------------------------------------------------------------
// sharpness_probe
// ---------------------------------------------------------------------------

SharpnessReport sharpness_probe(const EmbeddingCase& c) {
  if (!c.kappa) throw std::invalid_argument("sharpness_probe: case has no kappa");
  DerivedSV kappa(*c.kappa);
  {
    // kappa must be non-increasing (numeric check on the probe grid)
    double prev = std::numeric_limits<double>::infinity();
    for (double t : svfunc::log_grid(1e-12, 1e12, 100)) {
      const double v = kappa.eval(t);
      if (v > prev * (1.0 + 1e-9))
        throw std::invalid_argument("sharpness_probe: kappa is not non-increasing");
      prev = v;
    }
  }

  DerivedSV b(c.b);
  auto bbar = svfunc::make_bbar(b, c.r, c.q);
  if (!bbar) throw std::domain_error("sharpness_probe: bbar undefined");
  DerivedSV Bbar(
      [kappa, bb = *bbar](double u) { return kappa.eval_log(u) * bb.eval_log(u); },
      "kappa * bbar");

  auto Bbar_q = svfunc::tail_integral_br(Bbar, c.q);
  auto bbar_q = svfunc::tail_integral_br(*bbar, c.q);
  if (!Bbar_q || !bbar_q)
    throw std::domain_error("sharpness_probe: q-tail of the weight diverges");

  const double rho = c.rho();
  const double A = std::isinf(rho) ? 0.0 : Bbar_q->eval(1.0);

  SharpnessReport rep;
  for (int k = 0; k <= 48; ++k) {
    const double u_t = -0.25 * k * std::log(10.0);
    const double x = u_t / c.n;
    const double Bq = Bbar_q->eval_log(x);
    const double bq = bbar_q->eval_log(x);
    double val;
    if (std::isinf(rho))
      val = Bq / bq;
    else
      val = std::pow(std::max(std::pow(Bq, rho) - std::pow(A, rho), 0.0), 1.0 / rho) / bq;
    rep.trace.emplace_back(std::exp(u_t), val);
  }
  // trace is ordered by decreasing t; "grows" means sustained increase toward
  // t -> 0 that has not leveled off at the small end
  bool monotone_tail = true;
  const size_t m = rep.trace.size();
  for (size_t i = m - 24; i + 1 < m; ++i)
    monotone_tail = monotone_tail && rep.trace[i + 1].second >= rep.trace[i].second;
  const double rise = rep.trace[m - 1].second / std::max(rep.trace[m - 13].second, 1e-300);
  rep.final_value = rep.trace.back().second;
  rep.converges = !(monotone_tail && rise >= 1.10);
  return rep;
}

std::string SharpnessReport::to_json() const {
  json j;
  json tr = json::array();
  for (const auto& [t, v] : trace) tr.push_back({t, v});
  j["trace"] = tr;
  j["verdict"] = converges ? "converges" : "grows";
  j["final_value"] = final_value;
  j["provenance"] = "quadrature";
  return j.dump();
}

// ---------------------------------------------------------------------------
// strictness_demo
// ---------------------------------------------------------------------------

double strictness_witness_value(const EmbeddingCase& c, const DerivedSV& bbar,
                                const DerivedSV& btilde, double z) {
  const RearrangementProfile prof = RearrangementProfile::indicator(z);
  const ExtReal zn = spaces::z_norm(prof, c.p, c.q, c.n, bbar);
  const ExtReal lk = spaces::lk_norm(prof, c.p, c.q, btilde);
  if (!zn.is_finite() || !lk.is_finite())
    throw std::domain_error("strictness witness: non-finite norm");
  return std::pow(zn.value() / lk.value(), c.p);
}

StrictnessReport strictness_demo(const EmbeddingCase& c) {
  if (c.r > c.q) throw std::invalid_argument("strictness_demo requires r <= q");
  DerivedSV b(c.b);
  auto bbar = svfunc::make_bbar(b, c.r, c.q);
  auto btilde = svfunc::make_btilde(b, c.r, c.q, c.p, c.n);
  if (!bbar || !btilde) throw std::domain_error("strictness_demo: weights undefined");

  StrictnessReport rep;
  if (c.q == c.p) {
    rep.branch = "q=p";
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (int k = -8; k <= 8; ++k) {
      const RearrangementProfile prof = RearrangementProfile::indicator(std::pow(2.0, k));
      const ExtReal zn = spaces::z_norm(prof, c.p, c.q, c.n, *bbar);
      const ExtReal lk = spaces::lk_norm(prof, c.p, c.q, *btilde);
      const double ratio = zn.value() / lk.value();
      rep.equality_ratios.emplace_back(k, ratio);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    rep.bracket = hi / lo;
    rep.expected_verdict = rep.bracket <= 50.0;
    return rep;
  }

  if (c.q < c.p) {
    rep.branch = "q<p";
    auto br = svfunc::tail_integral_br(b, c.r);
    const double expo = c.r * (c.p - c.q) / c.q;
    bool monotone = true;
    double prev = 0.0;
    for (int k = 2; k <= 12; ++k) {
      const double z = std::pow(10.0, -k);
      const double val = strictness_witness_value(c, *bbar, *btilde, z);
      rep.witness_trace.emplace_back(z, val);
      const double u = std::log(z) / c.n;
      rep.oracle_trace.emplace_back(
          z, std::pow(br->eval_log(u) / b.eval_log(u), expo));
      if (k > 2) monotone = monotone && val > prev;
      prev = val;
    }
    const double rise =
        rep.witness_trace.back().second / rep.witness_trace.front().second;
    rep.expected_verdict = monotone && rise > 1.5;
    return rep;
  }

  rep.branch = "q>p";
  const double Q = c.q / c.p;
  DerivedSV btl = *btilde;
  DerivedSV bbn = bbar->dilate_exponent(c.n);
  Weight v = Weight::power_fn(
      Q - 1.0, [btl, q = c.q](double u) { return std::pow(btl.eval_log(u), q); },
      "x^{Q-1} btilde^q");
  Weight w = Weight::power_fn(
      Q - 1.0, [bbn, q = c.q](double u) { return std::pow(bbn.eval_log(u), q); },
      "x^{Q-1} bbar^q(x^{1/n})");
  rep.sawyer = hardy::sawyer_conditions(v, w, Q, Q);
  rep.expected_verdict = rep.sawyer->verdict == Verdict::unbounded;
  return rep;
}

std::string StrictnessReport::to_json() const {
  json j;
  j["branch"] = branch;
  if (!equality_ratios.empty()) {
    json arr = json::array();
    for (const auto& [k, v] : equality_ratios) arr.push_back({k, v});
    j["equality_ratios"] = arr;
    j["bracket"] = bracket;
  }
  if (!witness_trace.empty()) {
    json arr = json::array();
    for (const auto& [z, v] : witness_trace) arr.push_back({z, v});
    j["witness_trace"] = arr;
    json orc = json::array();
    for (const auto& [z, v] : oracle_trace) orc.push_back({z, v});
    j["oracle_trace"] = orc;
  }
  if (sawyer) j["sawyer"] = json::parse(sawyer->to_json());
  j["expected_verdict"] = expected_verdict;
  j["provenance"] = "quadrature";
  return j.dump();
}

// ---------------------------------------------------------------------------
// theorem48_410_check
// ---------------------------------------------------------------------------

Theorem48Report theorem48_410_check(double theta, double r, double q,
                                    const svfunc::SVExpr& a,
                                    const svfunc::SVExpr& b) {
  if (!(theta >= 0.0 && theta < 1.0))
    throw std::invalid_argument("theorem48_410_check: theta must lie in [0,1)");
  DerivedSV av(a), bv(b);
  auto d_max = svfunc::make_d_max(bv, av, r, q);
  auto d_min = svfunc::make_d_min(bv, av, r, q);
  if (!d_max || !d_min)
    throw std::domain_error("theorem48_410_check: int y^-1 (b/a)^r diverges");

  Theorem48Report rep;
  Weight w = Weight::power_fn(
      -1.0,
      [bv, av, r](double u) {
        return std::pow(bv.eval_log(u) / av.eval_log(u), r);
      },
      "x^-1 (b/a)^r");
  hardy::KernelSpec kernel{Weight::power_fn(
      (1.0 - theta) * q - 1.0,
      [av, q](double u) { return std::pow(av.eval_log(u), q); },
      "y^{(1-theta)q-1} a^q")};

  const double Qf = r / q;

  // Theorem on the L -> ordinary direction: Lai forward for q <= r, the
  // EO weight construction for r < q.
  if (Qf >= 1.0) {
    rep.forward_branch = "lai-forward";
    DerivedSV d = *d_max;
    Weight v = Weight::power_fn(
        (1.0 - theta) * r - 1.0,
        [d, r](double u) { return std::pow(d.eval_log(u), r); },
        "x^{(1-theta)r-1} d^r");
    rep.forward = hardy::lai_forward_condition(kernel, v, w, Qf, Qf);
  } else {
    rep.forward_branch = "eo";
    const double s = Qf;
    Weight constructed = hardy::eo_weight_construct(w, kernel.psi, s);
    DerivedSV d = *d_max;
    Weight v = Weight::power_fn(
        (1.0 - theta) * r - 1.0,
        [d, r](double u) { return std::pow(d.eval_log(u), r); },
        "x^{(1-theta)r-1} d^r");
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (double t : svfunc::log_grid(1e-10, 1e10, 120)) {
      const double u = std::log(t);
      const double ratio = v.eval_log(u) / constructed.eval_log(u);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    rep.eo_bracket = hi / lo;
    ConditionReport eo;
    eo.criterion = "eo-equivalence";
    eo.sup_value = rep.eo_bracket;
    eo.verdict = std::isfinite(rep.eo_bracket) ? Verdict::finite : Verdict::inconclusive;
    rep.forward = eo;
  }

  // Reverse direction: Lai reverse for r <= q, weighted Hardy for q < r.
  if (Qf <= 1.0) {
    rep.reverse_branch = "lai-reverse";
    DerivedSV d = *d_min;
    Weight v = Weight::power_fn(
        (1.0 - theta) * r - 1.0,
        [d, r](double u) { return std::pow(d.eval_log(u), r); },
        "x^{(1-theta)r-1} d^r");
    rep.reverse = hardy::lai_reverse_condition(kernel, v, w, Qf, Qf);
  } else {
    rep.reverse_branch = "ok-hardy";
    DerivedSV d = *d_min;
    Weight v = Weight::power_fn(
        r / q - 1.0,
        [d, av, r](double u) {
          return std::pow(d.eval_log(u) / av.eval_log(u), r);
        },
        "t^{r/q-1} (d/a)^r");
    rep.reverse = hardy::ok_hardy_condition(v, w, Qf, Qf);
  }

  rep.all_finite = rep.forward && rep.reverse &&
                   rep.forward->verdict == Verdict::finite &&
                   rep.reverse->verdict == Verdict::finite;
  return rep;
}

std::string Theorem48Report::to_json() const {
  json j;
  j["forward_branch"] = forward_branch;
  j["reverse_branch"] = reverse_branch;
  if (forward) j["forward"] = json::parse(forward->to_json());
  if (reverse) j["reverse"] = json::parse(reverse->to_json());
  if (eo_bracket > 0.0) j["eo_bracket"] = eo_bracket;
  j["all_finite"] = all_finite;
  return j.dump();
}

// ---------------------------------------------------------------------------
// builtin test family
// ---------------------------------------------------------------------------

std::vector<SampledFunction> builtin_test_family(unsigned long long seed) {
  std::vector<SampledFunction> family;
  for (int k = -8; k <= 8; ++k)
    family.push_back(SampledFunction::indicator(0.0, std::pow(2.0, k)));
  for (int j = -4; j <= 5; ++j)
    family.push_back(SampledFunction::hat(0.0, std::pow(2.0, j)));
  const auto steps =
      hardy::monotone_function_family(seed, 13, hardy::MonotoneClass::non_increasing);
  for (const auto& s : steps) {
    std::vector<double> breaks = s.edges;
    family.push_back(SampledFunction::step(breaks, s.values));
  }
  return family;
}

}  // namespace fnspace::embed
