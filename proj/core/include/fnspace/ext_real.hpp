#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fnspace {

/// A non-negative extended real: either a finite value or +infinity.
/// Divergent integrals and norms are values, not exceptions, so that
/// hypothesis failures produce reports instead of aborting a run.
class ExtReal {
 public:
  ExtReal() : value_(0.0), inf_(false) {}

  static ExtReal finite(double v) {
    ExtReal r;
    r.value_ = v;
    r.inf_ = false;
    return r;
  }
  static ExtReal infinity() {
    ExtReal r;
    r.value_ = std::numeric_limits<double>::infinity();
    r.inf_ = true;
    return r;
  }

  bool is_infinite() const { return inf_; }
  bool is_finite() const { return !inf_; }

  /// Finite value; throws if infinite.
  double value() const {
    if (inf_) throw std::domain_error("ExtReal: value() on infinite result");
    return value_;
  }

  /// Finite value or +inf as a double (never throws).
  double as_double() const {
    return inf_ ? std::numeric_limits<double>::infinity() : value_;
  }

 private:
  double value_;
  bool inf_;
};

}  // namespace fnspace
