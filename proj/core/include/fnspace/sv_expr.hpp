#pragma once

#include <optional>
#include <string>
#include <vector>

namespace fnspace::svfunc {

/// One factor l_i(t)^alpha of an iterated-log power product, where
/// l_1(t) = 1 + |log t| and l_i = l_1 of l_{i-1} for i > 1.
struct LogPowerFactor {
  int level = 1;  // i >= 1
  double alpha = 0.0;
};

/// Factor exp(c * |log t|^a), a in (0,1). Tends to infinity (c > 0) faster
/// than any power of the logarithm while staying slowly varying.
struct ExpLogFactor {
  double c = 0.0;
  double a = 0.5;
};

/// Product of iterated-log powers and an optional exp-log factor, valid on
/// one side of t = 1.
struct SvPiece {
  std::vector<LogPowerFactor> logpow;
  std::optional<ExpLogFactor> explog;

  bool pure_logpower() const { return !explog.has_value(); }
};

/// Symbolic slowly varying function: a piece for (0,1], a piece for [1,inf)
/// and a global positive scale. Both pieces equal 1 at t = 1, so the broken
/// representation is automatically continuous.
class SVExpr {
 public:
  SVExpr() = default;
  SVExpr(SvPiece left, SvPiece right, double scale = 1.0);

  /// b(t) for t > 0; throws std::domain_error on t <= 0.
  double eval(double t) const;

  /// b(e^u). All internal quadrature works in u = log t; evaluating through
  /// u avoids overflow for |u| beyond ~709.
  double eval_log(double u) const;

  const SvPiece& left() const { return left_; }
  const SvPiece& right() const { return right_; }
  double scale() const { return scale_; }

  /// Convenience: pure log-power with the same exponents on both sides.
  static SVExpr log_power(std::vector<LogPowerFactor> factors, double scale = 1.0);
  /// Broken log-power: separate exponent lists left/right, single level-1
  /// factor per side.
  static SVExpr broken(double alpha_left, double alpha_right, double scale = 1.0);
  static SVExpr one();

  std::string to_json() const;
  static SVExpr from_json(const std::string& text);

 private:
  SvPiece left_, right_;
  double scale_ = 1.0;
};

/// l_level evaluated at |u| = |log t|; u_abs >= 0.
double iterated_log(int level, double u_abs);

}  // namespace fnspace::svfunc
