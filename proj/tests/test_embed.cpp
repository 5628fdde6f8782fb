#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fnspace/embedding.hpp"
#include "support/test_support.hpp"

using namespace fnspace;
using namespace fnspace::embed;
using svfunc::DerivedSV;
using svfunc::SvPiece;
using svfunc::SVExpr;
using testsupport::standard_b;

namespace {

EmbeddingCase standard_case(double p, double r, double q, double n = 1.0) {
  EmbeddingCase c;
  c.p = p;
  c.r = r;
  c.q = q;
  c.n = n;
  c.b = standard_b();
  return c;
}

}  // namespace

TEST_CASE("analyze: verdicts and the bbar tail certification") {
  const auto rep = analyze(standard_case(3.0, 1.0, 2.0));
  CHECK(rep.hypothesis_ok);
  CHECK(rep.embedding_holds);
  CHECK(rep.head_diverges);
  CHECK(rep.tail_norm_value ==
        doctest::Approx(rep.tail_norm_expected).epsilon(1e-6));
  // closed form: (r/q)^{1/q} b_1(1) = (1/2)^{1/2}
  CHECK(rep.tail_norm_expected == doctest::Approx(std::sqrt(0.5)).epsilon(1e-8));

  // necessity: q < r fails the theorem condition (b = l^-1/2 keeps the
  // hypothesis alive at r = 2)
  auto necessity = standard_case(3.0, 2.0, 1.0);
  necessity.b = SVExpr::broken(-0.5, -2.0);
  const auto rep2 = analyze(necessity);
  CHECK(rep2.hypothesis_ok);
  CHECK_FALSE(rep2.embedding_holds);

  // q = r keeps bbar = b
  const auto rep3 = analyze(standard_case(3.0, 1.0, 1.0));
  REQUIRE(rep3.bbar.has_value());
  const DerivedSV b(standard_b());
  for (double t : {1e-4, 0.3, 2.0})
    CHECK(rep3.bbar->eval(t) == doctest::Approx(b.eval(t)));

  // hypothesis failure is a report, not a crash
  EmbeddingCase flat = standard_case(3.0, 1.0, 2.0);
  flat.b = SVExpr::one();
  const auto rep4 = analyze(flat);
  CHECK_FALSE(rep4.hypothesis_ok);
  CHECK_FALSE(rep4.embedding_holds);
  CHECK_FALSE(rep4.note.empty());
}

TEST_CASE("empirical_embedding_constant over the built-in family") {
  const auto family = builtin_test_family();
  REQUIRE(family.size() == 40);
  const auto rep = empirical_embedding_constant(standard_case(3.0, 1.0, 2.0), family);
  int finite = 0;
  for (const auto& m : rep.members)
    if (!m.skipped) {
      CHECK(std::isfinite(m.ratio));
      CHECK(m.ratio > 0.0);
      ++finite;
    }
  CHECK(finite == 40);
  CHECK(rep.max_ratio > 0.0);

  // empty member is skipped, not fatal
  auto with_zero = family;
  with_zero.push_back(rearrange::SampledFunction());
  const auto rep2 = empirical_embedding_constant(standard_case(3.0, 1.0, 2.0), with_zero);
  CHECK(rep2.members.back().skipped);
}

TEST_CASE("optimality_chain: bridge constant matches the substitution oracle") {
  for (double n : {1.0, 2.0, 3.0}) {
    const auto rep = optimality_chain(standard_case(3.0, 1.0, 2.0, n));
    CHECK(rep.condition.verdict == hardy::Verdict::finite);
    const double expected = std::pow(n * 1.0 / 2.0, 0.5) * std::pow(n, -1.0);
    CHECK(rep.expected_sup == doctest::Approx(expected));
    CHECK(rep.condition.sup_value == doctest::Approx(expected).epsilon(1e-4));
    CHECK(rep.max_norm_ratio > 0.0);
    CHECK(rep.max_norm_ratio <= rep.condition.sup_value * 2.0);
  }

  // q = r: sup is exactly 1
  const auto rep = optimality_chain(standard_case(3.0, 1.0, 1.0));
  CHECK(rep.condition.sup_value == doctest::Approx(1.0).epsilon(1e-6));

  CHECK_THROWS_AS(optimality_chain(standard_case(3.0, 2.0, 1.0)),
                  std::invalid_argument);
}

TEST_CASE("cgo2_condition: btilde weight is admissible, kappa-inflated is not") {
  const auto c = standard_case(3.0, 1.0, 2.0);
  const DerivedSV b(standard_b());
  auto btilde = svfunc::make_btilde(b, c.r, c.q, c.p, c.n);
  REQUIRE(btilde.has_value());

  // w(s) = s^{1/p-1/q} btilde(s): the sufficiency direction, bounded trace
  hardy::Weight w = hardy::Weight::power_fn(
      1.0 / 3.0 - 0.5, [bt = *btilde](double u) { return bt.eval_log(u); },
      "s^{1/p-1/q} btilde");
  const auto rep = cgo2_condition(c, w);
  CHECK_FALSE(rep.wq1_infinite);
  CHECK(rep.verdict == GrowthVerdict::bounded);

  // An unbounded kappa makes the criterion ratio grow without bound. For
  // the tripling heuristic to flag it within 12 decades the growth must
  // exceed 3x per decade; a strong kappa saturates W_q early and the trace
  // then grows like t^{-1/p}, so p = 1.5 (4.6x per decade) is used here.
  auto c2 = standard_case(1.5, 1.0, 2.0);
  const DerivedSV b2(standard_b());
  auto btilde2 = svfunc::make_btilde(b2, c2.r, c2.q, c2.p, c2.n);
  SvPiece left;
  left.logpow.push_back({1, 6.0});
  const SVExpr kappa(left, SvPiece{});
  const DerivedSV kap(kappa);
  hardy::Weight wk = hardy::Weight::power_fn(
      1.0 / 1.5 - 0.5,
      [bt = *btilde2, kap](double u) { return bt.eval_log(u) * kap.eval_log(u); },
      "s^{1/p-1/q} btilde kappa");
  const auto rep2 = cgo2_condition(c2, wk);
  CHECK(rep2.verdict == GrowthVerdict::unbounded);

  // w == 0 gives a zero trace
  hardy::Weight w0 = hardy::Weight::power_fn(
      0.0, [](double) { return 0.0; }, "zero");
  const auto rep3 = cgo2_condition(c, w0);
  for (const auto& [t, v] : rep3.trace) CHECK(v == 0.0);
}

TEST_CASE("sharpness_probe: bounded kappa converges, unbounded grows") {
  // kappa == 1: trace converges to 1
  auto c = standard_case(3.0, 1.0, 2.0);
  c.kappa = SVExpr::one();
  const auto rep = sharpness_probe(c);
  CHECK(rep.converges);
  CHECK(rep.final_value == doctest::Approx(1.0).epsilon(1e-3));

  // kappa = l^{1/2} on (0,1], 1 on [1,inf): unbounded at zero
  SvPiece left;
  left.logpow.push_back({1, 0.5});
  c.kappa = SVExpr(left, SvPiece{});
  const auto rep2 = sharpness_probe(c);
  CHECK_FALSE(rep2.converges);
  CHECK(rep2.trace.back().second > rep2.trace.front().second);

  // bounded non-constant kappa: 1 on (0,1], l^-1/4 on [1,inf) is
  // non-increasing with kappa(0+) = 1, so the trace converges. (A l^-1/4
  // factor on the left piece would increase toward t = 1 and be rejected
  // by the monotonicity gate below.)
  SvPiece neg;
  neg.logpow.push_back({1, -0.25});
  c.kappa = SVExpr(SvPiece{}, neg);
  const auto rep3 = sharpness_probe(c);
  CHECK(rep3.converges);
  SvPiece neg_left;
  neg_left.logpow.push_back({1, -0.25});
  c.kappa = SVExpr(neg_left, SvPiece{});
  CHECK_THROWS_AS(sharpness_probe(c), std::invalid_argument);

  // an increasing kappa is rejected
  SvPiece rise;
  rise.logpow.push_back({1, 1.0});
  c.kappa = SVExpr(SvPiece{}, rise);  // grows on [1,inf)
  CHECK_THROWS_AS(sharpness_probe(c), std::invalid_argument);

  c.kappa.reset();
  CHECK_THROWS_AS(sharpness_probe(c), std::invalid_argument);
}

TEST_CASE("strictness_demo: the three branches of the space comparison") {
  // q = p: equality of spaces, ratio bracket is tight (exactly (r/q)^{1/q}
  // on indicators for this case)
  const auto eq = strictness_demo(standard_case(2.0, 1.0, 2.0));
  CHECK(eq.branch == "q=p");
  CHECK(eq.expected_verdict);
  CHECK(eq.bracket <= 1.01);
  for (const auto& [k, ratio] : eq.equality_ratios)
    CHECK(ratio == doctest::Approx(std::sqrt(0.5)).epsilon(1e-6));

  // q < p: witness ratio grows without bound along z -> 0
  const auto lt = strictness_demo(standard_case(3.0, 1.0, 2.0));
  CHECK(lt.branch == "q<p");
  CHECK(lt.expected_verdict);
  REQUIRE(lt.witness_trace.size() == 11);
  // oracle: the trace grows like (b_1/b)^{(p-q)r/q}; compare growth factors
  const double trace_growth =
      lt.witness_trace.back().second / lt.witness_trace.front().second;
  const double oracle_growth =
      lt.oracle_trace.back().second / lt.oracle_trace.front().second;
  CHECK(trace_growth > 2.0);
  CHECK(trace_growth == doctest::Approx(oracle_growth).epsilon(0.12));

  // q > p: the Sawyer B part of the proof weights is unbounded
  const auto gt = strictness_demo(standard_case(2.0, 1.0, 3.0));
  CHECK(gt.branch == "q>p");
  REQUIRE(gt.sawyer.has_value());
  CHECK(gt.sawyer->verdict == hardy::Verdict::unbounded);
  CHECK(gt.expected_verdict);
}

TEST_CASE("theorem48_410_check: all four proof branches") {
  const SVExpr one = SVExpr::one();

  // q = r collapses max = min and both directions agree
  const auto collapse = theorem48_410_check(0.0, 1.0, 1.0, one, standard_b());
  CHECK(collapse.forward_branch == "lai-forward");
  CHECK(collapse.reverse_branch == "lai-reverse");
  CHECK(collapse.all_finite);

  // forward Lai branch (q < r) plus reverse Hardy branch (q < r)
  const auto hardy_side = theorem48_410_check(0.5, 2.0, 1.0, one, standard_b());
  CHECK(hardy_side.forward_branch == "lai-forward");
  CHECK(hardy_side.reverse_branch == "ok-hardy");
  CHECK(hardy_side.all_finite);

  // r < q: EO construction forward, Lai reverse
  SvPiece half;
  half.logpow.push_back({1, 0.5});
  const SVExpr a_half(half, half);
  const SVExpr b_type = SVExpr::broken(-1.0, -2.0);
  const auto eo_side = theorem48_410_check(0.5, 1.0, 2.0, a_half, b_type);
  CHECK(eo_side.forward_branch == "eo");
  CHECK(eo_side.reverse_branch == "lai-reverse");
  CHECK(eo_side.eo_bracket < 50.0);
  CHECK(eo_side.all_finite);

  // divergent (b/a)^r tail is rejected
  CHECK_THROWS_AS(theorem48_410_check(0.5, 1.0, 2.0, one, one), std::domain_error);
}

TEST_CASE("btilde agrees with the interpolation-route d computation") {
  // the proof reaches btilde through d(x) = bbar(x^{p/n}) and the rho(t) =
  // t^{1/p} substitution chain; pointwise the two routes agree within a
  // constant bracket
  const auto c = standard_case(3.0, 1.0, 2.0);
  const DerivedSV b(standard_b());
  auto bbar = svfunc::make_bbar(b, c.r, c.q);
  auto btilde = svfunc::make_btilde(b, c.r, c.q, c.p, c.n);
  REQUIRE(bbar.has_value());

  const DerivedSV d_rho = bbar->dilate_exponent(c.n / c.p);  // bbar(x^{p/n})
  auto dd = svfunc::make_d_max(d_rho, DerivedSV(SVExpr::one()), c.q, c.p);
  REQUIRE(dd.has_value());
  double lo = 1e300, hi = 0.0;
  for (double t : svfunc::log_grid(1e-10, 1e10, 40)) {
    const double dtilde = dd->eval(std::pow(t, 1.0 / c.p));
    const double ratio = dtilde / btilde->eval(t);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  CHECK(hi / lo <= 2.0);
}

TEST_CASE("case json round trip and validation") {
  auto c = standard_case(3.0, 1.0, 2.0);
  SvPiece left;
  left.logpow.push_back({1, 0.5});
  c.kappa = SVExpr(left, SvPiece{});
  const std::string text = c.to_json();
  const auto back = EmbeddingCase::from_json(text);
  CHECK(back.p == 3.0);
  CHECK(back.q == 2.0);
  CHECK(back.kappa.has_value());
  CHECK(back.rho() == doctest::Approx(6.0));

  const auto le = standard_case(2.0, 1.0, 3.0);
  CHECK(std::isinf(le.rho()));

  CHECK_THROWS(EmbeddingCase::from_json("{\"p\":0.5,\"r\":1,\"q\":2,\"b\":" +
                                        standard_b().to_json() + "}"));
}
