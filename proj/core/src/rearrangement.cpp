#include "fnspace/rearrangement.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "fnspace/quadrature.hpp"

namespace fnspace::rearrange {

using nlohmann::json;

RearrangementProfile RearrangementProfile::from_segments(std::vector<ProfileSeg> segs) {
  RearrangementProfile p;
  double t = 0.0, last_v = std::numeric_limits<double>::infinity();
  for (const auto& s : segs) {
    if (std::fabs(s.t0 - t) > 1e-12 * (1.0 + t))
      throw std::invalid_argument("RearrangementProfile: segments must be contiguous from 0");
    if (s.v0 < s.v1 || s.v0 > last_v + 1e-12 * (1.0 + last_v))
      throw std::invalid_argument("RearrangementProfile: values must be non-increasing");
    if (s.v1 < 0.0) throw std::invalid_argument("RearrangementProfile: negative value");
    t = s.t1;
    last_v = s.v1;
  }
  p.segs_ = std::move(segs);
  p.support_ = t;
  return p;
}

RearrangementProfile RearrangementProfile::indicator(double measure, double height) {
  if (measure <= 0.0) return {};
  return from_segments({{0.0, measure, height, height}});
}

double RearrangementProfile::eval(double t) const {
  if (t < 0.0) throw std::domain_error("RearrangementProfile: eval requires t >= 0");
  for (const auto& s : segs_) {
    if (t < s.t1) return s.v0 + (s.v1 - s.v0) * (t - s.t0) / (s.t1 - s.t0);
  }
  return 0.0;
}

double RearrangementProfile::power_integral(double T, double p) const {
  double total = 0.0;
  for (const auto& s : segs_) {
    if (T <= s.t0) break;
    const double t1 = std::min(T, s.t1);
    const double frac = (t1 - s.t0) / (s.t1 - s.t0);
    const double v1 = s.v0 + (s.v1 - s.v0) * frac;
    total += segment_abs_power_integral(s.v0, v1, t1 - s.t0, p);
  }
  return total;
}

double RearrangementProfile::lp_norm(double p) const {
  return std::pow(power_integral(support_, p), 1.0 / p);
}

double RearrangementProfile::distribution(double lambda) const {
  double m = 0.0;
  for (const auto& s : segs_) {
    const double hi = s.v0, lo = s.v1;
    if (lambda >= hi)
      continue;
    else if (lambda < lo)
      m += s.t1 - s.t0;
    else
      m += (s.t1 - s.t0) * (hi - lambda) / (hi - lo);
  }
  return m;
}

RearrangementProfile RearrangementProfile::scaled(double c) const {
  auto segs = segs_;
  for (auto& s : segs) s.v0 *= c, s.v1 *= c;
  return from_segments(std::move(segs));
}

RearrangementProfile RearrangementProfile::dilated(double lambda) const {
  auto segs = segs_;
  for (auto& s : segs) s.t0 *= lambda, s.t1 *= lambda;
  return from_segments(std::move(segs));
}

std::string RearrangementProfile::to_json() const {
  json arr = json::array();
  for (const auto& s : segs_)
    arr.push_back({{"t0", s.t0}, {"t1", s.t1}, {"v0", s.v0}, {"v1", s.v1}});
  return arr.dump();
}

RearrangementProfile RearrangementProfile::from_json(const std::string& text) {
  json arr = json::parse(text);
  std::vector<ProfileSeg> segs;
  for (const auto& item : arr)
    segs.push_back({item.at("t0").get<double>(), item.at("t1").get<double>(),
                    item.at("v0").get<double>(), item.at("v1").get<double>()});
  return from_segments(std::move(segs));
}

// ---------------------------------------------------------------------------
// rearrange
// ---------------------------------------------------------------------------

namespace {

// |f| as linear segments, split at zero crossings.
std::vector<Segment> abs_segments(const SampledFunction& f) {
  std::vector<Segment> out;
  for (const auto& s : f.segments()) {
    if ((s.v0 < 0.0 && s.v1 > 0.0) || (s.v0 > 0.0 && s.v1 < 0.0)) {
      const double root = s.x0 + s.length() * s.v0 / (s.v0 - s.v1);
      out.push_back({s.x0, root, std::fabs(s.v0), 0.0});
      out.push_back({root, s.x1, 0.0, std::fabs(s.v1)});
    } else {
      out.push_back({s.x0, s.x1, std::fabs(s.v0), std::fabs(s.v1)});
    }
  }
  return out;
}

// measure { |f| > lambda } over the given abs-value segments
double measure_above(const std::vector<Segment>& segs, double lambda) {
  double m = 0.0;
  for (const auto& s : segs) {
    const double lo = std::min(s.v0, s.v1), hi = std::max(s.v0, s.v1);
    if (lambda >= hi)
      continue;
    else if (lambda < lo)
      m += s.length();
    else
      m += s.length() * (hi - lambda) / (hi - lo);
  }
  return m;
}

// measure { |f| >= lambda }, the left limit of the distribution function
double measure_at_least(const std::vector<Segment>& segs, double lambda) {
  double m = 0.0;
  for (const auto& s : segs) {
    const double lo = std::min(s.v0, s.v1), hi = std::max(s.v0, s.v1);
    if (lambda > hi)
      continue;
    else if (lambda <= lo)
      m += s.length();
    else
      m += s.length() * (hi - lambda) / (hi - lo);
  }
  return m;
}

}  // namespace

double distribution_measure(const SampledFunction& f, double lambda) {
  return measure_above(abs_segments(f), lambda);
}

RearrangementProfile rearrange(const SampledFunction& f) {
  const std::vector<Segment> segs = abs_segments(f);
  if (segs.empty()) return {};

  // critical values, descending, with 0 as the final level
  std::set<double, std::greater<double>> levels;
  for (const auto& s : segs) {
    levels.insert(std::fabs(s.v0));
    levels.insert(std::fabs(s.v1));
  }
  levels.insert(0.0);

  std::vector<double> lam(levels.begin(), levels.end());
  std::vector<ProfileSeg> out;
  double t = 0.0;
  for (size_t j = 0; j + 1 < lam.size(); ++j) {
    if (lam[j] == 0.0) break;
    // plateau: mass sitting exactly at level lam[j]
    const double plateau = measure_at_least(segs, lam[j]) - measure_above(segs, lam[j]);
    if (plateau > 0.0) {
      out.push_back({t, t + plateau, lam[j], lam[j]});
      t += plateau;
    }
    // linear band between lam[j] and the next level down: the distribution
    // function is affine there, so its inverse is the linear segment below
    const double band = measure_above(segs, lam[j + 1]) - measure_at_least(segs, lam[j]);
    if (band > 0.0) {
      out.push_back({t, t + band, lam[j], lam[j + 1]});
      t += band;
    }
  }
  return RearrangementProfile::from_segments(std::move(out));
}

double maximal(const RearrangementProfile& fstar, double t) {
  if (!(t > 0.0)) throw std::domain_error("maximal: t must be positive");
  return fstar.power_integral(t, 1.0) / t;
}

double k_functional(const RearrangementProfile& fstar, double t, double s) {
  if (!(t > 0.0)) throw std::domain_error("k_functional: t must be positive");
  return std::pow(fstar.power_integral(std::pow(t, s), s), 1.0 / s);
}

double verify_lemma_5_10(const RearrangementProfile& fstar, double theta,
                         double q, double s, const svfunc::DerivedSV& b,
                         double t) {
  // LHS^q = int_0^t tau^{-theta q - 1} b^q(tau) K(f,tau)^q dtau, in u = log tau.
  auto lhs_integrand = [&](double u) {
    const double K = k_functional(fstar, std::exp(u), s);
    return std::exp(-theta * q * u) * std::pow(b.eval_log(u), q) * std::pow(K, q);
  };
  // Split at the points where tau^s crosses a profile breakpoint.
  std::set<double> knots;
  const double u_top = std::log(t);
  for (const auto& seg : fstar.segments()) {
    if (seg.t0 > 0.0) {
      const double u = std::log(seg.t0) / s;
      if (u < u_top) knots.insert(u);
    }
  }
  if (fstar.support_measure() > 0.0) {
    const double u = std::log(fstar.support_measure()) / s;
    if (u < u_top) knots.insert(u);
  }
  knots.insert(u_top);

  double lhs_q = 0.0;
  double lo = *knots.begin();
  lhs_q += integrate_head(lhs_integrand, lo).value;
  for (auto it = std::next(knots.begin()); it != knots.end(); ++it) {
    lhs_q += integrate(lhs_integrand, lo, *it, 1e-11).value;
    lo = *it;
  }

  // RHS^q = int_0^{min(t^s, supp)} y^{((1-theta)/s)q - 1} b^q(y^{1/s}) f*(y)^q dy
  const double y_top = std::min(std::pow(t, s), fstar.support_measure());
  if (!(y_top > 0.0)) throw std::domain_error("verify_lemma_5_10: empty right side");
  auto rhs_integrand = [&](double w) {
    const double y = std::exp(w);
    const double fs = fstar.eval(y);
    if (fs == 0.0) return 0.0;
    return std::exp(((1.0 - theta) / s) * q * w) *
           std::pow(b.eval_log(w / s), q) * std::pow(fs, q);
  };
  std::set<double> wknots;
  const double w_top = std::log(y_top);
  for (const auto& seg : fstar.segments())
    if (seg.t0 > 0.0 && std::log(seg.t0) < w_top) wknots.insert(std::log(seg.t0));
  wknots.insert(w_top);

  double rhs_q = 0.0;
  double wlo = *wknots.begin();
  rhs_q += integrate_head(rhs_integrand, wlo).value;
  for (auto it = std::next(wknots.begin()); it != wknots.end(); ++it) {
    rhs_q += integrate(rhs_integrand, wlo, *it, 1e-11).value;
    wlo = *it;
  }

  const double lhs = std::pow(lhs_q, 1.0 / q);
  const double rhs = std::pow(rhs_q, 1.0 / q);
  if (!std::isfinite(lhs) || !std::isfinite(rhs) || rhs == 0.0)
    throw std::domain_error("verify_lemma_5_10: non-finite side");
  return lhs / rhs;
}

}  // namespace fnspace::rearrange
