#pragma once

#include <string>
#include <vector>

#include "fnspace/derived_sv.hpp"
#include "fnspace/sampled_function.hpp"

namespace fnspace::rearrange {

struct ProfileSeg {
  double t0 = 0.0, t1 = 0.0;
  double v0 = 0.0, v1 = 0.0;  // v0 >= v1
};

/// Non-increasing right-continuous rearrangement f* on (0,inf), stored as
/// contiguous linear segments starting at t = 0; zero past the support
/// measure.
class RearrangementProfile {
 public:
  RearrangementProfile() = default;
  static RearrangementProfile from_segments(std::vector<ProfileSeg> segs);
  static RearrangementProfile indicator(double measure, double height = 1.0);

  double eval(double t) const;
  double support_measure() const { return support_; }
  double top_value() const { return segs_.empty() ? 0.0 : segs_.front().v0; }
  const std::vector<ProfileSeg>& segments() const { return segs_; }

  /// int_0^T (f*)^p, exact per segment.
  double power_integral(double T, double p) const;
  double lp_norm(double p) const;
  /// measure { f* > lambda }
  double distribution(double lambda) const;

  RearrangementProfile scaled(double c) const;
  /// f*(./lambda): dilation of the underlying set by lambda.
  RearrangementProfile dilated(double lambda) const;

  std::string to_json() const;
  static RearrangementProfile from_json(const std::string& text);

 private:
  std::vector<ProfileSeg> segs_;
  double support_ = 0.0;
};

/// Exact non-increasing rearrangement by level-set inversion: plateaus from
/// value multiplicities, linear stretches from inverting the piecewise-affine
/// distribution function.
RearrangementProfile rearrange(const SampledFunction& f);

/// measure { |f| > lambda } of a sampled function.
double distribution_measure(const SampledFunction& f, double lambda);

/// f**(t) = t^{-1} int_0^t f*.
double maximal(const RearrangementProfile& fstar, double t);

/// Holmstedt realization ( int_0^{t^s} (f*)^s )^{1/s}; the exact K-functional
/// for (L_1, L_inf) when s = 1.
double k_functional(const RearrangementProfile& fstar, double t, double s);

/// Ratio LHS/RHS of the K-functional equivalence
///   || tau^{-theta-1/q} b(tau) K(f,tau; L_s, L_inf) ||_{q;(0,t)}
///     ~ || y^{(1-theta)/s - 1/q} b(y^{1/s}) f*(y) ||_{q;(0,t^s)}.
double verify_lemma_5_10(const RearrangementProfile& fstar, double theta,
                         double q, double s, const svfunc::DerivedSV& b,
                         double t);

}  // namespace fnspace::rearrange
