#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fnspace/derived_sv.hpp"
#include "fnspace/growth.hpp"

namespace fnspace::hardy {

/// Positive weight on (0,inf) of the form scale * t^gamma * s(t) with s
/// slowly varying. The power exponent stays symbolic so that integrand
/// exponents combine before exponentiation: forming t^gamma and the
/// integration jacobian separately would overflow into 0 * inf for |log t|
/// beyond ~709, and criterion tails routinely reach log t ~ 1e7.
class Weight {
 public:
  Weight() : Weight(0.0, nullptr, 1.0, "1") {}
  static Weight power(double gamma, double scale = 1.0);
  static Weight power_sv(double gamma, svfunc::DerivedSV sv, double scale = 1.0);
  /// gamma plus an arbitrary slowly varying factor given in log coordinates.
  static Weight power_fn(double gamma, std::function<double(double)> sv_log,
                         std::string label, double scale = 1.0);

  double eval(double t) const;
  double eval_log(double u) const { return scale_ * std::exp(gamma_ * u) * sv(u); }
  /// w(e^u)^e * e^{(extra+1) u}: the log-space integrand of int w^e t^extra dt.
  std::function<double(double)> pow_mass(double e, double extra = 0.0) const;
  /// w(e^u) e^u, the plain integration mass.
  std::function<double(double)> mass() const { return pow_mass(1.0); }

  double power_exponent() const { return gamma_; }
  double sv(double u) const { return sv_ ? sv_(u) : 1.0; }
  double weight_scale() const { return scale_; }
  const std::string& label() const { return label_; }

 private:
  Weight(double gamma, std::function<double(double)> sv_log, double scale,
         std::string label)
      : gamma_(gamma), sv_(std::move(sv_log)), scale_(scale), label_(std::move(label)) {}
  double gamma_;
  std::function<double(double)> sv_;
  double scale_;
  std::string label_;
};

/// Kernel phi(x,y) = chi_{(0,x)}(y) * psi(y). Every kernel used by the
/// criteria has this product-indicator form; it makes the inner integral a
/// cumulative integral of psi.
struct KernelSpec {
  Weight psi;
};

/// The z-grid criteria are evaluated on.
struct GridSpec {
  double t_min = 1e-12;
  double t_max = 1e12;
  int points = 240;
  std::vector<double> ts() const;
};

enum class Verdict { finite, unbounded, inconclusive };

struct ConditionReport {
  std::string criterion;
  double sup_value = 0.0;
  double argmax_z = 0.0;
  std::vector<std::pair<double, double>> trace;  // (z, criterion value)
  Verdict verdict = Verdict::inconclusive;
  // Sawyer reports two constants; trace then carries the B integrand.
  std::optional<double> A;
  std::optional<double> B;
  /// Set when a head integral diverges at 0 and the trace had to be cut at
  /// the grid minimum to stay finite.
  bool floored_head = false;

  std::string to_json() const;
};

/// sup_t ( int_t^inf w )^{1/q} ( int_t^inf v )^{-1/r}; finite licenses the
/// weighted inequality for non-decreasing functions.
ConditionReport heinig_stepanov(const Weight& w, const Weight& v, double q,
                                double r, const GridSpec& grid = {});

/// sup_z ( int_0^z v )^{1/Q} / ( int_0^inf ( int_0^z phi(x,y) dy )^P w dx )^{1/P},
/// 1 <= P <= Q < inf.
ConditionReport lai_forward_condition(const KernelSpec& kernel, const Weight& v,
                                      const Weight& w, double P, double Q,
                                      const GridSpec& grid = {});

/// Reversed ratio, 0 < Q <= P <= 1.
ConditionReport lai_reverse_condition(const KernelSpec& kernel, const Weight& v,
                                      const Weight& w, double P, double Q,
                                      const GridSpec& grid = {});

/// sup_x || w^{1/Q} ||_{Q;(x,inf)} || v^{-1/P} ||_{P';(0,x)}, 1 <= P <= Q <= inf.
ConditionReport ok_hardy_condition(const Weight& v, const Weight& w, double P,
                                   double Q, const GridSpec& grid = {});

/// Sawyer's two constants for the averaged Hardy operator on non-increasing
/// functions, 1 < P <= Q < inf. The trace carries the B integrand.
ConditionReport sawyer_conditions(const Weight& v, const Weight& w, double P,
                                  double Q, const GridSpec& grid = {});

/// v(y) = w^{1-s}(y) ( phi(y) int_y^inf w )^s; the constructed weight makes
/// int h^s v <= s^s int ( int_0^x phi h )^s w for every h >= 0.
Weight eo_weight_construct(const Weight& w, const Weight& phi, double s);

/// Monotone step function with finitely many pieces, 0 past the last edge.
struct StepFunction {
  std::vector<double> edges;   // increasing, size = values.size() + 1
  std::vector<double> values;  // piece i lives on [edges[i], edges[i+1])

  double eval(double t) const;
  bool non_increasing() const;
  bool non_decreasing() const;
  static StepFunction indicator(double z, double height = 1.0);
};

enum class InequalityKind { lai_forward, lai_reverse, ok_hardy, sawyer, eo };

/// Observed LHS/RHS ratio of the chosen inequality at the given witness.
/// Witness class violations (wrong monotonicity) raise std::invalid_argument.
/// For kind eo the ratio is int h^s v / int ( int_0^x phi h )^s w, to be
/// compared against s^s.
double witness_test(InequalityKind kind, const std::optional<KernelSpec>& kernel,
                    const Weight& v, const Weight& w, double P, double Q,
                    const StepFunction& witness);

enum class MonotoneClass { non_increasing, non_decreasing };

/// Reproducible pseudo-random monotone step functions with log-spaced
/// breakpoints; identical for a fixed seed on every platform.
std::vector<StepFunction> monotone_function_family(unsigned long long seed,
                                                   int count, MonotoneClass cls);

}  // namespace fnspace::hardy
