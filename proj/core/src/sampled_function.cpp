#include "fnspace/sampled_function.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace fnspace::rearrange {

double segment_abs_power_integral(double v0, double v1, double len, double p) {
  if (len <= 0.0) return 0.0;
  if (v0 == v1) return len * std::pow(std::fabs(v0), p);
  // split where the linear function crosses zero
  if ((v0 < 0.0 && v1 > 0.0) || (v0 > 0.0 && v1 < 0.0)) {
    const double root = len * v0 / (v0 - v1);
    return segment_abs_power_integral(v0, 0.0, root, p) +
           segment_abs_power_integral(0.0, v1, len - root, p);
  }
  const double a = std::fabs(v0), b = std::fabs(v1);
  // the ramp formula cancels catastrophically for nearly equal magnitudes
  if (std::fabs(b - a) <= 1e-9 * (a + b)) return len * std::pow(0.5 * (a + b), p);
  // int |w|^p over a linear ramp between magnitudes a and b
  return len * (std::pow(b, p + 1.0) - std::pow(a, p + 1.0)) / ((p + 1.0) * (b - a));
}

SampledFunction SampledFunction::from_segments(std::vector<Segment> segs) {
  std::sort(segs.begin(), segs.end(),
            [](const Segment& a, const Segment& b) { return a.x0 < b.x0; });
  for (auto& s : segs) {
    if (!(s.x1 > s.x0)) throw std::invalid_argument("Segment: x1 must exceed x0");
    if (!std::isfinite(s.v0) || !std::isfinite(s.v1))
      throw std::invalid_argument("Segment: values must be finite");
  }
  for (size_t i = 1; i < segs.size(); ++i)
    if (segs[i].x0 < segs[i - 1].x1 - 1e-14)
      throw std::invalid_argument("SampledFunction: overlapping segments");
  SampledFunction f;
  f.segs_ = std::move(segs);
  return f;
}

SampledFunction SampledFunction::indicator(double a, double b, double height) {
  return from_segments({{a, b, height, height}});
}

SampledFunction SampledFunction::hat(double center, double halfwidth, double height) {
  return from_segments({{center - halfwidth, center, 0.0, height},
                        {center, center + halfwidth, height, 0.0}});
}

SampledFunction SampledFunction::step(const std::vector<double>& breaks,
                                      const std::vector<double>& values) {
  if (breaks.size() != values.size() + 1)
    throw std::invalid_argument("step: need one more breakpoint than values");
  std::vector<Segment> segs;
  for (size_t i = 0; i < values.size(); ++i) {
    if (values[i] != 0.0)
      segs.push_back({breaks[i], breaks[i + 1], values[i], values[i]});
  }
  return from_segments(std::move(segs));
}

double SampledFunction::eval(double x) const {
  for (const auto& s : segs_) {
    if (x >= s.x0 && x < s.x1)
      return s.v0 + (s.v1 - s.v0) * (x - s.x0) / (s.x1 - s.x0);
  }
  return 0.0;
}

double SampledFunction::lp_norm(double p) const {
  double total = 0.0;
  for (const auto& s : segs_)
    total += segment_abs_power_integral(s.v0, s.v1, s.length(), p);
  return std::pow(total, 1.0 / p);
}

double SampledFunction::sup_norm() const {
  double m = 0.0;
  for (const auto& s : segs_)
    m = std::max({m, std::fabs(s.v0), std::fabs(s.v1)});
  return m;
}

double SampledFunction::diff_norm(double h, double p) const {
  if (segs_.empty() || h == 0.0) return 0.0;
  // breakpoints of x -> f(x+h) - f(x)
  std::set<double> cuts;
  for (const auto& s : segs_) {
    cuts.insert(s.x0);
    cuts.insert(s.x1);
    cuts.insert(s.x0 - h);
    cuts.insert(s.x1 - h);
  }
  double total = 0.0;
  double prev = *cuts.begin();
  for (auto it = std::next(cuts.begin()); it != cuts.end(); ++it) {
    const double a = prev, b = *it;
    prev = b;
    if (!(b > a)) continue;
    // g is linear on [a,b); eval is right-continuous, so the value at a and
    // the midpoint determine the piece exactly.
    const double ga = eval(a + h) - eval(a);
    const double mid = 0.5 * (a + b);
    const double gm = eval(mid + h) - eval(mid);
    const double gb = 2.0 * gm - ga;
    total += segment_abs_power_integral(ga, gb, b - a, p);
  }
  return std::pow(total, 1.0 / p);
}

double SampledFunction::support_diameter() const {
  if (segs_.empty()) return 0.0;
  return segs_.back().x1 - segs_.front().x0;
}

SampledFunction SampledFunction::scaled(double c) const {
  std::vector<Segment> out = segs_;
  for (auto& s : out) {
    s.v0 *= c;
    s.v1 *= c;
  }
  return from_segments(std::move(out));
}

SampledFunction SampledFunction::plus(const SampledFunction& other) const {
  std::set<double> cuts;
  for (const auto& s : segs_) cuts.insert(s.x0), cuts.insert(s.x1);
  for (const auto& s : other.segs_) cuts.insert(s.x0), cuts.insert(s.x1);
  std::vector<Segment> out;
  if (cuts.empty()) return {};
  double prev = *cuts.begin();
  for (auto it = std::next(cuts.begin()); it != cuts.end(); ++it) {
    const double a = prev, b = *it;
    prev = b;
    if (!(b > a)) continue;
    const double va = eval(a) + other.eval(a);
    const double mid = 0.5 * (a + b);
    const double vm = eval(mid) + other.eval(mid);
    const double vb = 2.0 * vm - va;
    if (va != 0.0 || vb != 0.0) out.push_back({a, b, va, vb});
  }
  return from_segments(std::move(out));
}

}  // namespace fnspace::rearrange
