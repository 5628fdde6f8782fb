#include "fnspace/derived_sv.hpp"

namespace fnspace::svfunc {

DerivedSV::DerivedSV(LogEvaluator eval_log, std::string provenance,
                     std::string closed_form_note) {
  auto st = std::make_shared<State>();
  st->eval = std::move(eval_log);
  st->provenance = std::move(provenance);
  st->note = std::move(closed_form_note);
  state_ = std::move(st);
}

DerivedSV::DerivedSV(const SVExpr& expr) {
  auto st = std::make_shared<State>();
  st->eval = [expr](double u) { return expr.eval_log(u); };
  st->provenance = "svexpr";
  st->symbolic = expr;
  state_ = std::move(st);
}

DerivedSV DerivedSV::dilate_exponent(double n) const {
  auto base = state_;
  return DerivedSV([base, n](double u) { return base->eval(u / n); },
                   provenance() + " o t^{1/" + std::to_string(n) + "}");
}

DerivedSV DerivedSV::ratio(const DerivedSV& num, const DerivedSV& den,
                           std::string provenance) {
  auto ns = num.state_;
  auto ds = den.state_;
  return DerivedSV([ns, ds](double u) { return ns->eval(u) / ds->eval(u); },
                   std::move(provenance));
}

}  // namespace fnspace::svfunc
