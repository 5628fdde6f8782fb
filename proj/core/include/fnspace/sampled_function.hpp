#pragma once

#include <string>
#include <vector>

namespace fnspace::rearrange {

/// One linear piece of a sampled function: value v0 at x0, v1 at x1.
struct Segment {
  double x0 = 0.0, x1 = 0.0;
  double v0 = 0.0, v1 = 0.0;

  double length() const { return x1 - x0; }
  bool constant() const { return v0 == v1; }
};

/// Compactly supported piecewise-linear function on the line. Segments are
/// sorted and non-overlapping; the function is 0 between and outside them.
class SampledFunction {
 public:
  SampledFunction() = default;
  static SampledFunction from_segments(std::vector<Segment> segs);
  static SampledFunction indicator(double a, double b, double height = 1.0);
  /// Tent of the given half-width: height at `center`, 0 at center +- halfwidth.
  static SampledFunction hat(double center, double halfwidth, double height = 1.0);
  /// Step function: values[i] on [breaks[i], breaks[i+1]).
  static SampledFunction step(const std::vector<double>& breaks,
                              const std::vector<double>& values);

  bool empty() const { return segs_.empty(); }
  const std::vector<Segment>& segments() const { return segs_; }

  double eval(double x) const;
  double lp_norm(double p) const;  // exact piecewise power integral
  double sup_norm() const;
  /// || f(.+h) - f ||_p, exact via merged breakpoints.
  double diff_norm(double h, double p) const;
  /// Extent of the support (last breakpoint minus first).
  double support_diameter() const;

  SampledFunction scaled(double c) const;
  SampledFunction plus(const SampledFunction& other) const;

 private:
  std::vector<Segment> segs_;
};

/// Exact int_0^len |v0 + (v1-v0) s/len|^p ds.
double segment_abs_power_integral(double v0, double v1, double len, double p);

}  // namespace fnspace::rearrange
