#pragma once

#include <string>
#include <vector>

#include "fnspace/derived_sv.hpp"
#include "fnspace/ext_real.hpp"
#include "fnspace/rearrangement.hpp"
#include "fnspace/sampled_function.hpp"

namespace fnspace::spaces {

enum class Interval { global, local };  // (0,inf) vs (0,1)

enum class NormKind { LK, LKLocal, Z, ZLocal, Besov, BesovLocal };

/// Parsed description of a norm; the CLI front end builds these from JSON.
struct NormSpec {
  NormKind kind = NormKind::LK;
  double p = 2.0;
  double q = 2.0;  // r for Besov kinds
  double n = 1.0;
  svfunc::SVExpr b = svfunc::SVExpr::one();

  Interval interval() const {
    return (kind == NormKind::LKLocal || kind == NormKind::ZLocal ||
            kind == NormKind::BesovLocal)
               ? Interval::local
               : Interval::global;
  }

  std::string to_json() const;
  static NormSpec from_json(const std::string& text);
};

/// Lorentz-Karamata: || t^{1/p-1/q} b(t) f*(t) ||_{q; (0,inf) or (0,1)}.
/// q = inf is the weighted sup.
ExtReal lk_norm(const rearrange::RearrangementProfile& fstar, double p, double q,
                const svfunc::DerivedSV& b, Interval interval = Interval::global);

/// Z-space: || t^{-1/q} b(t^{1/n}) ||f*||_{p;(0,t)} ||_{q; ...}. The inner
/// p-norm is closed-form per profile segment; the outer integral is
/// quadrature.
ExtReal z_norm(const rearrange::RearrangementProfile& fstar, double p, double q,
               double n, const svfunc::DerivedSV& b,
               Interval interval = Interval::global);

/// omega_1(f,t)_p = sup_{|h|<=t} || f(.+h) - f ||_p over a refining h-grid.
double modulus(const rearrange::SampledFunction& f, double t, double p);

/// Modulus along an increasing t-grid with a running max, which is how the
/// Besov integrand consumes it.
std::vector<double> modulus_on_grid(const rearrange::SampledFunction& f,
                                    const std::vector<double>& ts, double p);

struct BesovResult {
  ExtReal norm;                 // ||f||_p + seminorm
  ExtReal seminorm;
  double lp = 0.0;
  bool tail_divergent = false;  // hypothesis failure: space is trivial
  bool head_convergent = false; // hypothesis failure: norm equivalent to L_p
};

/// || f ||_p + || t^{-1/r} b(t) omega_1(f,t)_p ||_{r; ...}. Hypothesis
/// failures are reported in the flags, not thrown.
BesovResult besov_norm(const rearrange::SampledFunction& f, double p, double r,
                       const svfunc::DerivedSV& b,
                       Interval variant = Interval::global);

}  // namespace fnspace::spaces
