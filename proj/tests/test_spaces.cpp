#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fnspace/norms.hpp"
#include "fnspace/sv_calculus.hpp"
#include "support/test_support.hpp"

using namespace fnspace;
using namespace fnspace::spaces;
using rearrange::RearrangementProfile;
using rearrange::SampledFunction;
using svfunc::DerivedSV;
using svfunc::SVExpr;

TEST_CASE("lk_norm: indicator closed form and Lebesgue collapse") {
  const DerivedSV one(SVExpr::one());
  for (double a : {0.25, 1.0, 7.0}) {
    for (auto [p, q] : {std::pair{2.0, 3.0}, {3.0, 2.0}, {2.5, 2.5}}) {
      const auto prof = RearrangementProfile::indicator(a);
      const double expected = std::pow(a, 1.0 / p) * std::pow(p / q, 1.0 / q);
      CHECK(lk_norm(prof, p, q, one).value() ==
            doctest::Approx(expected).epsilon(1e-9));
    }
  }

  // p = q, b = 1 is the Lebesgue norm, also for non-flat profiles
  auto hat = fnspace::rearrange::rearrange(SampledFunction::hat(0.0, 1.0));
  CHECK(lk_norm(hat, 2.0, 2.0, one).value() ==
        doctest::Approx(hat.lp_norm(2.0)).epsilon(1e-9));

  // local = global when the support sits inside (0,1)
  auto small = RearrangementProfile::indicator(0.5, 3.0);
  CHECK(lk_norm(small, 2.0, 3.0, one, Interval::local).value() ==
        doctest::Approx(lk_norm(small, 2.0, 3.0, one).value()).epsilon(1e-10));
}

TEST_CASE("z_norm: inner indicator norm, divergence, local ordering") {
  const DerivedSV b(testsupport::standard_b());
  auto bbar = svfunc::make_bbar(b, 1.0, 2.0);

  // finite on indicators with the bbar weight
  const auto prof = RearrangementProfile::indicator(2.0);
  const ExtReal zg = z_norm(prof, 3.0, 2.0, 1.0, *bbar);
  REQUIRE(zg.is_finite());

  // reference: int t^-1 bbar^2 min(t,a)^{2/3} dt via the independent Simpson,
  // in log coordinates (the weight tail decays too slowly for t-space)
  const double ref_head = testsupport::simpson_head_log(
      [&](double u) {
        return std::pow(bbar->eval_log(u), 2.0) *
               std::pow(std::min(std::exp(u), 2.0), 2.0 / 3.0);
      },
      std::log(2.0));
  const double ref_tail = testsupport::simpson_tail_log(
      [&](double u) {
        return std::pow(bbar->eval_log(u), 2.0) * std::pow(2.0, 2.0 / 3.0);
      },
      std::log(2.0));
  CHECK(zg.value() == doctest::Approx(std::sqrt(ref_head + ref_tail)).epsilon(1e-7));

  // constant weight makes the global outer integral diverge at infinity
  const DerivedSV one(SVExpr::one());
  CHECK(z_norm(prof, 2.0, 2.0, 1.0, one).is_infinite());

  // global >= local
  const ExtReal zl = z_norm(prof, 3.0, 2.0, 1.0, *bbar, Interval::local);
  CHECK(zg.value() >= zl.value());

  // local q=p b=1 on an indicator inside (0,1): closed form a(1+log(1/a))
  const double a = 0.3;
  const auto pr = RearrangementProfile::indicator(a);
  const double expect = std::pow(a * (1.0 + std::log(1.0 / a)), 0.5);
  CHECK(z_norm(pr, 2.0, 2.0, 1.0, one, Interval::local).value() ==
        doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("modulus: indicator slope, zero, upper bound, monotone grid") {
  const auto chi = SampledFunction::indicator(0.0, 1.0);
  for (double t : {0.1, 0.4, 0.9})
    CHECK(modulus(chi, t, 1.0) == doctest::Approx(2.0 * t).epsilon(1e-12));
  CHECK(modulus(chi, 0.0, 1.0) == 0.0);

  const auto f = SampledFunction::step({0.0, 1.0, 2.5}, {2.0, -1.0});
  const double twonorm = 2.0 * f.lp_norm(2.0);
  std::vector<double> ts;
  for (int i = 1; i <= 24; ++i) ts.push_back(std::pow(10.0, -3.0 + i * 0.2));
  const auto om = modulus_on_grid(f, ts, 2.0);
  for (size_t i = 0; i < om.size(); ++i) {
    CHECK(om[i] <= twonorm + 1e-12);
    if (i) CHECK(om[i] >= om[i - 1]);
  }
}

TEST_CASE("besov_norm: zero function, indicator oracle, local bracket") {
  const DerivedSV b(testsupport::standard_b());
  CHECK(besov_norm(SampledFunction(), 1.0, 1.0, b).norm.value() == 0.0);

  // chi_[0,1], p = r = 1: omega = 2 min(t,1), closed-form pieces
  const auto chi = SampledFunction::indicator(0.0, 1.0);
  const auto res = besov_norm(chi, 1.0, 1.0, b);
  REQUIRE(res.norm.is_finite());
  const double head = testsupport::simpson_head(
      [&](double t) { return 2.0 * testsupport::standard_b_eval(t); }, 1.0);
  // int_1^inf t^-1 (1+log t)^-2 dt = 1 by the antiderivative -(1+log t)^-1
  const double tail = 2.0 * 1.0;
  CHECK(res.seminorm.value() == doctest::Approx(head + tail).epsilon(2e-4));
  CHECK(res.lp == doctest::Approx(1.0));

  // global and local norms of one family stay in a modest bracket
  double lo = 1e300, hi = 0.0;
  for (int k = -2; k <= 2; ++k) {
    const auto f = SampledFunction::hat(0.0, std::pow(2.0, k));
    const double g = besov_norm(f, 2.0, 1.0, b).norm.value();
    const double l = besov_norm(f, 2.0, 1.0, b, Interval::local).norm.value();
    CHECK(g >= l - 1e-12);
    lo = std::min(lo, g / l);
    hi = std::max(hi, g / l);
  }
  CHECK(hi / lo < 3.0);
}

TEST_CASE("besov_norm reports hypothesis failures instead of throwing") {
  // divergent tail: trivial space, infinite seminorm for nonzero f
  const DerivedSV flat(SVExpr::one());
  const auto res = besov_norm(SampledFunction::indicator(0.0, 1.0), 2.0, 1.0, flat);
  CHECK(res.tail_divergent);
  CHECK(res.norm.is_infinite());

  // convergent head: norm is L_p-equivalent, flag reported
  const DerivedSV b3(SVExpr::broken(-3.0, -3.0));
  const auto res2 = besov_norm(SampledFunction::indicator(0.0, 1.0), 2.0, 1.0, b3);
  CHECK(res2.head_convergent);
  CHECK(res2.norm.is_finite());
}

TEST_CASE("norm homogeneity and lattice ordering") {
  const DerivedSV b(testsupport::standard_b());
  auto bbar = svfunc::make_bbar(b, 1.0, 2.0);
  const auto f = SampledFunction::hat(0.0, 2.0);
  const auto prof = fnspace::rearrange::rearrange(f);

  const double c = 3.7;
  CHECK(lk_norm(prof.scaled(c), 3.0, 2.0, b).value() ==
        doctest::Approx(c * lk_norm(prof, 3.0, 2.0, b).value()).epsilon(1e-10));
  CHECK(z_norm(prof.scaled(c), 3.0, 2.0, 1.0, *bbar).value() ==
        doctest::Approx(c * z_norm(prof, 3.0, 2.0, 1.0, *bbar).value()).epsilon(1e-10));
  const auto bes_c = besov_norm(f.scaled(c), 2.0, 1.0, b);
  const auto bes = besov_norm(f, 2.0, 1.0, b);
  CHECK(bes_c.norm.value() == doctest::Approx(c * bes.norm.value()).epsilon(1e-6));

  // f* <= g* pointwise implies every norm ordering
  const auto small = RearrangementProfile::indicator(1.0, 0.5);
  const auto big = RearrangementProfile::indicator(2.0, 1.0);
  CHECK(lk_norm(small, 3.0, 2.0, b).value() <= lk_norm(big, 3.0, 2.0, b).value());
  CHECK(z_norm(small, 3.0, 2.0, 1.0, *bbar).value() <=
        z_norm(big, 3.0, 2.0, 1.0, *bbar).value());
}

TEST_CASE("NormSpec json round trip and field pinning") {
  NormSpec spec;
  spec.kind = NormKind::Z;
  spec.p = 3.0;
  spec.q = 2.0;
  spec.n = 1.0;
  spec.b = testsupport::standard_b();
  const std::string text = spec.to_json();
  CHECK(text.find("\"kind\":\"Z\"") != std::string::npos);
  CHECK(text.find("\"interval\":\"global\"") != std::string::npos);
  const NormSpec back = NormSpec::from_json(text);
  CHECK(back.kind == NormKind::Z);
  CHECK(back.p == 3.0);
  CHECK(back.q == 2.0);

  CHECK_THROWS(NormSpec::from_json("{\"kind\":\"nope\",\"p\":2,\"q\":2}"));
  // Besov accepts r as the secondary index
  const NormSpec bes = NormSpec::from_json(
      "{\"kind\":\"Besov\",\"p\":2,\"r\":1,\"b\":" + spec.b.to_json() + "}");
  CHECK(bes.q == 1.0);
}
