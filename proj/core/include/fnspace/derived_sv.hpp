#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "fnspace/sv_expr.hpp"

namespace fnspace::svfunc {

/// A positive function on (0,inf) given by an evaluator in log coordinates
/// plus provenance metadata. Every transform in this module (b_r, B_q, bbar,
/// btilde, d) produces one of these; SVExpr converts implicitly so the
/// transforms compose.
class DerivedSV {
 public:
  using LogEvaluator = std::function<double(double)>;

  DerivedSV() = default;
  DerivedSV(LogEvaluator eval_log, std::string provenance,
            std::string closed_form_note = {});
  DerivedSV(const SVExpr& expr);  // NOLINT(google-explicit-constructor)

  double eval(double t) const {
    if (!(t > 0.0)) throw std::domain_error("DerivedSV: eval requires t > 0");
    return eval_log(std::log(t));
  }
  double eval_log(double u) const { return state_->eval(u); }

  const std::string& provenance() const { return state_->provenance; }
  const std::string& note() const { return state_->note; }

  /// Present when this function is (or wraps) a symbolic expression; enables
  /// symbolic integrability classification downstream.
  const std::optional<SVExpr>& symbolic() const { return state_->symbolic; }

  /// Composition t -> f(t^{1/n}); in log coordinates u -> u/n.
  DerivedSV dilate_exponent(double n) const;

  /// Pointwise ratio f/g.
  static DerivedSV ratio(const DerivedSV& num, const DerivedSV& den,
                         std::string provenance);

 private:
  struct State {
    LogEvaluator eval;
    std::string provenance;
    std::string note;
    std::optional<SVExpr> symbolic;
  };
  std::shared_ptr<const State> state_;
};

}  // namespace fnspace::svfunc
