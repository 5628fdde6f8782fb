#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fnspace/rearrangement.hpp"
#include "fnspace/sv_expr.hpp"
#include "support/test_support.hpp"

using namespace fnspace;
using namespace fnspace::rearrange;

namespace {

// deterministic random step functions for the equimeasurability sweeps
SampledFunction random_step(std::mt19937_64& rng) {
  auto u01 = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  const int pieces = 2 + static_cast<int>(rng() % 7);
  std::vector<double> breaks;
  double x = -4.0 + 8.0 * u01();
  breaks.push_back(x);
  std::vector<double> values;
  for (int i = 0; i < pieces; ++i) {
    x += 0.05 + 3.0 * u01();
    breaks.push_back(x);
    values.push_back(std::round((u01() * 8.0 - 2.0) * 16.0) / 16.0);  // ties likely
  }
  return SampledFunction::step(breaks, values);
}

}  // namespace

TEST_CASE("rearrange: indicator, hat, two-level step") {
  // indicator
  auto p1 = fnspace::rearrange::rearrange(SampledFunction::indicator(0.0, 2.0));
  CHECK(p1.support_measure() == doctest::Approx(2.0));
  CHECK(p1.eval(0.5) == doctest::Approx(1.0));
  CHECK(p1.eval(1.999) == doctest::Approx(1.0));
  CHECK(p1.eval(2.5) == 0.0);

  // hat: f(x) = max(0, 1-|x|) has |{f > lam}| = 2(1-lam), so f* = max(0, 1-t/2)
  auto p2 = fnspace::rearrange::rearrange(SampledFunction::hat(0.0, 1.0));
  CHECK(p2.support_measure() == doctest::Approx(2.0));
  for (double t : {0.1, 0.5, 1.0, 1.7})
    CHECK(p2.eval(t) == doctest::Approx(1.0 - t / 2.0).epsilon(1e-12));

  // 3 chi_[0,1] + 1 chi_[2,4]: plateaus 3 on (0,1), 1 on (1,3)
  auto f3 = SampledFunction::step({0.0, 1.0, 2.0, 4.0}, {3.0, 0.0, 1.0});
  auto p3 = fnspace::rearrange::rearrange(f3);
  CHECK(p3.eval(0.5) == doctest::Approx(3.0));
  CHECK(p3.eval(1.5) == doctest::Approx(1.0));
  CHECK(p3.eval(2.9) == doctest::Approx(1.0));
  CHECK(p3.eval(3.1) == 0.0);
  CHECK(p3.support_measure() == doctest::Approx(3.0));
}

TEST_CASE("rearrange handles signs and linear level sets exactly") {
  // |f| of a sign-changing ramp
  auto f = SampledFunction::from_segments({{0.0, 2.0, -1.0, 1.0}});
  auto p = fnspace::rearrange::rearrange(f);
  // |f| has distribution |{|f|>lam}| = 2(1-lam): same profile as the hat
  for (double t : {0.2, 1.0, 1.8})
    CHECK(p.eval(t) == doctest::Approx(1.0 - t / 2.0).epsilon(1e-12));
}

TEST_CASE("equimeasurability and norm preservation on random step functions") {
  std::mt19937_64 rng(20240811);
  for (int trial = 0; trial < 1000; ++trial) {
    const SampledFunction f = random_step(rng);
    const RearrangementProfile p = fnspace::rearrange::rearrange(f);
    for (int j = 0; j < 20; ++j) {
      const double lam = (static_cast<double>(rng() >> 11) * 0x1.0p-53) * 8.0;
      CHECK(distribution_measure(f, lam) ==
            doctest::Approx(p.distribution(lam)).epsilon(1e-12));
    }
  }
  rng.seed(7);
  for (int trial = 0; trial < 100; ++trial) {
    const SampledFunction f = random_step(rng);
    const RearrangementProfile p = fnspace::rearrange::rearrange(f);
    for (double pp : {1.0, 2.0, 7.0 / 3.0})
      CHECK(f.lp_norm(pp) == doctest::Approx(p.lp_norm(pp)).epsilon(1e-9));
  }
}

TEST_CASE("maximal function: plateaus and the hat closed form") {
  auto p = RearrangementProfile::indicator(2.0);
  CHECK(maximal(p, 4.0) == doctest::Approx(0.5));
  CHECK(maximal(p, 1.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(maximal(p, 0.0), std::domain_error);
  CHECK_THROWS_AS(maximal(p, -1.0), std::domain_error);

  auto hat = fnspace::rearrange::rearrange(SampledFunction::hat(0.0, 1.0));
  CHECK(maximal(hat, 2.0) == doctest::Approx(0.5).epsilon(1e-12));

  // f** >= f* and both non-increasing
  double prev_star = 1e300, prev_max = 1e300;
  for (double t : {0.25, 0.5, 1.0, 1.5, 2.0, 3.0}) {
    const double fs = hat.eval(t), fm = maximal(hat, t);
    CHECK(fm >= fs - 1e-12);
    CHECK(fs <= prev_star + 1e-12);
    CHECK(fm <= prev_max + 1e-12);
    prev_star = fs;
    prev_max = fm;
  }
}

TEST_CASE("maximal operator is subadditive on random pairs") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const SampledFunction f = random_step(rng);
    const SampledFunction g = random_step(rng);
    const auto pf = fnspace::rearrange::rearrange(f), pg = fnspace::rearrange::rearrange(g), ps = fnspace::rearrange::rearrange(f.plus(g));
    for (double t : {0.1, 0.5, 1.0, 2.0, 5.0, 11.0})
      CHECK(maximal(ps, t) <= maximal(pf, t) + maximal(pg, t) + 1e-10);
  }
}

TEST_CASE("k_functional: L1 case and the s = 2 hat value") {
  auto chi = RearrangementProfile::indicator(1.5);
  CHECK(k_functional(chi, 0.7, 1.0) == doctest::Approx(0.7));
  CHECK(k_functional(chi, 3.0, 1.0) == doctest::Approx(1.5));
  CHECK_THROWS_AS(k_functional(chi, 0.0, 1.0), std::domain_error);

  auto hat = fnspace::rearrange::rearrange(SampledFunction::hat(0.0, 1.0));
  CHECK(k_functional(hat, 1.0, 2.0) ==
        doctest::Approx(std::sqrt(7.0 / 12.0)).epsilon(1e-12));
}

TEST_CASE("verify_lemma_5_10: closed-form case, homogeneity, dilation") {
  const svfunc::DerivedSV one(svfunc::SVExpr::one());
  auto chi = RearrangementProfile::indicator(1.0);

  // s=1, theta=1/2, q=2, b=1, t=1: LHS = RHS = 1
  const double ratio = verify_lemma_5_10(chi, 0.5, 2.0, 1.0, one, 1.0);
  CHECK(ratio == doctest::Approx(1.0).epsilon(1e-8));

  // scaling the profile leaves the ratio unchanged
  const double r2 = verify_lemma_5_10(chi.scaled(17.0), 0.5, 2.0, 1.0, one, 1.0);
  CHECK(r2 == doctest::Approx(ratio).epsilon(1e-10));

  // dilations stay inside one bracket
  const svfunc::DerivedSV b(testsupport::standard_b());
  double lo = 1e300, hi = 0.0;
  for (double lam : {0.25, 1.0, 4.0, 16.0}) {
    const double r = verify_lemma_5_10(chi.dilated(lam), 0.5, 2.0, 1.0, b, 1.0);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  CHECK(hi / lo < 4.0);

  auto empty = RearrangementProfile();
  CHECK_THROWS_AS(verify_lemma_5_10(empty, 0.5, 2.0, 1.0, one, 1.0),
                  std::domain_error);
}

TEST_CASE("profile json round trip") {
  auto p = fnspace::rearrange::rearrange(SampledFunction::step({0.0, 1.0, 3.0}, {2.0, 1.0}));
  const std::string text = p.to_json();
  CHECK(text.find("\"t0\"") != std::string::npos);
  CHECK(text.find("\"v1\"") != std::string::npos);
  auto back = RearrangementProfile::from_json(text);
  for (double t : {0.1, 0.9, 1.5, 2.9, 3.5})
    CHECK(back.eval(t) == doctest::Approx(p.eval(t)));
}
