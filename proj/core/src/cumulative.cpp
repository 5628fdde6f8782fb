#include "fnspace/cumulative.hpp"

#include <algorithm>
#include <cmath>

#include "fnspace/quadrature.hpp"

namespace fnspace {

namespace {

// Cubic Hermite with exact endpoint derivatives; node spacing keeps the
// interpolation error below ~1e-8 relative for poly-log integrands.
double hermite(double v0, double v1, double d0, double d1, double s) {
  const double s2 = s * s, s3 = s2 * s;
  return v0 * (2 * s3 - 3 * s2 + 1) + d0 * (s3 - 2 * s2 + s) +
         v1 * (-2 * s3 + 3 * s2) + d1 * (s3 - s2);
}

double wing_lookup(const std::vector<double>& values, const std::vector<double>& deriv,
                   double w0, double hw, double w) {
  const int n = static_cast<int>(values.size());
  const int i = std::min(std::max(static_cast<int>((w - w0) / hw), 0), n - 2);
  const double wa = w0 + hw * i;
  return hermite(values[static_cast<size_t>(i)], values[static_cast<size_t>(i) + 1],
                 deriv[static_cast<size_t>(i)] * hw,
                 deriv[static_cast<size_t>(i) + 1] * hw, (w - wa) / hw);
}

}  // namespace

// Criterion tails routinely probe |log t| up to ~1e13; the wings tabulate the
// running integral there on a log-|u| grid so that nested tables never
// re-integrate per evaluation.
static constexpr double kWingStep = 0.125;
static constexpr double kWingWMax = 30.0;  // |u| up to ~40 * e^30

void CumulativeWings::build_tail_wings(const std::function<double(double)>& g,
                                       double u_lo, double v_at_lo, double u_hi,
                                       double v_at_hi) {
  // right wing: V(u) for u in [u_hi, u_hi e^{30}], nodes at log(u) steps
  right_w0 = std::log(u_hi > 0.0 ? u_hi : 1.0);
  const int nr = static_cast<int>(std::ceil((kWingWMax - 0.0) / kWingStep));
  right_values.assign(static_cast<size_t>(nr) + 1, 0.0);
  right_deriv.assign(static_cast<size_t>(nr) + 1, 0.0);
  {
    std::vector<double> us(static_cast<size_t>(nr) + 1);
    for (int j = 0; j <= nr; ++j) {
      const double w = right_w0 + kWingStep * j;
      us[static_cast<size_t>(j)] = std::exp(w);
      right_deriv[static_cast<size_t>(j)] = -g(us[static_cast<size_t>(j)]) * us[static_cast<size_t>(j)];
    }
    right_values[static_cast<size_t>(nr)] = integrate_tail(g, us.back(), 1e-7).value;
    for (int j = nr - 1; j >= 0; --j)
      right_values[static_cast<size_t>(j)] =
          right_values[static_cast<size_t>(j) + 1] +
          integrate(g, us[static_cast<size_t>(j)], us[static_cast<size_t>(j) + 1], 1e-7).value;
  }
  // left wing: V(u) = V(u_lo) + int_u^{u_lo} g for u in [-|u_lo| e^{30}, u_lo],
  // nodes at log(-u) steps
  left_w0 = std::log(u_lo < 0.0 ? -u_lo : 1.0);
  const int nl = nr;
  left_values.assign(static_cast<size_t>(nl) + 1, 0.0);
  left_deriv.assign(static_cast<size_t>(nl) + 1, 0.0);
  {
    std::vector<double> us(static_cast<size_t>(nl) + 1);
    for (int j = 0; j <= nl; ++j) {
      const double w = left_w0 + kWingStep * j;
      us[static_cast<size_t>(j)] = -std::exp(w);
      left_deriv[static_cast<size_t>(j)] = g(us[static_cast<size_t>(j)]) * std::exp(w);
    }
    left_values[0] = v_at_lo;
    for (int j = 1; j <= nl; ++j)
      left_values[static_cast<size_t>(j)] =
          left_values[static_cast<size_t>(j) - 1] +
          integrate(g, us[static_cast<size_t>(j)], us[static_cast<size_t>(j) - 1], 1e-7).value;
  }
  (void)v_at_hi;
}

std::shared_ptr<const CumulativeTail> CumulativeTail::build(
    std::function<double(double)> g) {
  auto table = std::make_shared<CumulativeTail>();
  table->g_ = std::move(g);
  const Integral far = integrate_tail(table->g_, kU1);
  if (far.diverged || !far.converged) return nullptr;
  table->values_.resize(kNodes);
  table->deriv_.resize(kNodes);
  table->values_[kNodes - 1] = far.value;
  const double h = (kU1 - kU0) / (kNodes - 1);
  for (int i = 0; i < kNodes; ++i)
    table->deriv_[static_cast<size_t>(i)] = table->g_(kU0 + h * i);
  for (int i = kNodes - 2; i >= 0; --i) {
    const double a = kU0 + h * i;
    table->values_[static_cast<size_t>(i)] =
        table->values_[static_cast<size_t>(i) + 1] +
        integrate(table->g_, a, a + h, 5e-10).value;
  }
  table->wings_.build_tail_wings(table->g_, kU0, table->values_.front(), kU1,
                                 table->values_.back());
  return table;
}

double CumulativeTail::value(double u) const {
  if (u > kU1) {
    const double w = std::log(u);
    if (w <= wings_.right_w0 + kWingWMax - kWingStep)
      return wing_lookup(wings_.right_values, wings_.right_deriv, wings_.right_w0,
                         kWingStep, w);
    return integrate_tail(g_, u).value;
  }
  if (u < kU0) {
    const double w = std::log(-u);
    if (w <= wings_.left_w0 + kWingWMax - kWingStep)
      return wing_lookup(wings_.left_values, wings_.left_deriv, wings_.left_w0,
                         kWingStep, w);
    return wings_.left_values.back() +
           integrate(g_, u, -std::exp(wings_.left_w0 + kWingWMax - kWingStep), 1e-9).value;
  }
  const double h = (kU1 - kU0) / (kNodes - 1);
  const int i = std::min(static_cast<int>((u - kU0) / h), kNodes - 2);
  const double ua = kU0 + h * i;
  return hermite(values_[static_cast<size_t>(i)], values_[static_cast<size_t>(i) + 1],
                 -deriv_[static_cast<size_t>(i)] * h,
                 -deriv_[static_cast<size_t>(i) + 1] * h, (u - ua) / h);
}

void CumulativeWings::build_head_wings(const std::function<double(double)>& g,
                                       double u_lo, double h_at_lo, double u_hi,
                                       double h_at_hi, bool floored) {
  const int n = static_cast<int>(std::ceil(kWingWMax / kWingStep));
  // left wing: H(u) for u <= u_lo, cumulative toward -inf (skipped when the
  // head is cut at a floor: H == 0 there)
  left_w0 = std::log(u_lo < 0.0 ? -u_lo : 1.0);
  left_values.assign(static_cast<size_t>(n) + 1, 0.0);
  left_deriv.assign(static_cast<size_t>(n) + 1, 0.0);
  if (!floored) {
    std::vector<double> us(static_cast<size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) {
      const double w = left_w0 + kWingStep * j;
      us[static_cast<size_t>(j)] = -std::exp(w);
      left_deriv[static_cast<size_t>(j)] = -g(us[static_cast<size_t>(j)]) * std::exp(w);
    }
    left_values[0] = h_at_lo;
    for (int j = 1; j <= n; ++j)
      left_values[static_cast<size_t>(j)] =
          left_values[static_cast<size_t>(j) - 1] -
          integrate(g, us[static_cast<size_t>(j)], us[static_cast<size_t>(j) - 1], 1e-7).value;
  }
  // right wing: H(u) for u >= u_hi
  right_w0 = std::log(u_hi > 0.0 ? u_hi : 1.0);
  right_values.assign(static_cast<size_t>(n) + 1, 0.0);
  right_deriv.assign(static_cast<size_t>(n) + 1, 0.0);
  {
    std::vector<double> us(static_cast<size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) {
      const double w = right_w0 + kWingStep * j;
      us[static_cast<size_t>(j)] = std::exp(w);
      right_deriv[static_cast<size_t>(j)] = g(us[static_cast<size_t>(j)]) * us[static_cast<size_t>(j)];
    }
    right_values[0] = h_at_hi;
    for (int j = 1; j <= n; ++j)
      right_values[static_cast<size_t>(j)] =
          right_values[static_cast<size_t>(j) - 1] +
          integrate(g, us[static_cast<size_t>(j) - 1], us[static_cast<size_t>(j)], 1e-7).value;
  }
}

std::shared_ptr<const CumulativeHead> CumulativeHead::build(
    std::function<double(double)> g) {
  auto table = std::make_shared<CumulativeHead>();
  table->g_ = std::move(g);
  table->u_lo_ = CumulativeTail::kU0;
  table->u_hi_ = CumulativeTail::kU1;
  const Integral far = integrate_head(table->g_, table->u_lo_);
  if (far.diverged || !far.converged) return nullptr;
  table->init_from(far.value);
  return table;
}

std::shared_ptr<const CumulativeHead> CumulativeHead::build_floored(
    std::function<double(double)> g, double u_floor) {
  auto table = std::make_shared<CumulativeHead>();
  table->g_ = std::move(g);
  table->floored_ = true;
  table->u_lo_ = u_floor;
  table->u_hi_ = CumulativeTail::kU1;
  table->init_from(0.0);
  return table;
}

void CumulativeHead::init_from(double head_value) {
  values_.resize(CumulativeTail::kNodes);
  deriv_.resize(CumulativeTail::kNodes);
  values_[0] = head_value;
  const double h = (u_hi_ - u_lo_) / (CumulativeTail::kNodes - 1);
  for (int i = 0; i < CumulativeTail::kNodes; ++i)
    deriv_[static_cast<size_t>(i)] = g_(u_lo_ + h * i);
  for (int i = 1; i < CumulativeTail::kNodes; ++i) {
    const double b = u_lo_ + h * i;
    values_[static_cast<size_t>(i)] =
        values_[static_cast<size_t>(i) - 1] + integrate(g_, b - h, b, 5e-10).value;
  }
  wings_.build_head_wings(g_, u_lo_, values_.front(), u_hi_, values_.back(), floored_);
}

double CumulativeHead::value(double u) const {
  if (u < u_lo_) {
    if (floored_) return 0.0;
    const double w = std::log(-u);
    if (w <= wings_.left_w0 + kWingWMax - kWingStep)
      return wing_lookup(wings_.left_values, wings_.left_deriv, wings_.left_w0,
                         kWingStep, w);
    return integrate_head(g_, u).value;
  }
  if (u > u_hi_) {
    const double w = std::log(u);
    if (w <= wings_.right_w0 + kWingWMax - kWingStep)
      return wing_lookup(wings_.right_values, wings_.right_deriv, wings_.right_w0,
                         kWingStep, w);
    return wings_.right_values.back() +
           integrate(g_, std::exp(wings_.right_w0 + kWingWMax - kWingStep), u, 1e-9).value;
  }
  const double h = (u_hi_ - u_lo_) / (CumulativeTail::kNodes - 1);
  const int i = std::min(static_cast<int>((u - u_lo_) / h), CumulativeTail::kNodes - 2);
  const double ua = u_lo_ + h * i;
  return hermite(values_[static_cast<size_t>(i)], values_[static_cast<size_t>(i) + 1],
                 deriv_[static_cast<size_t>(i)] * h,
                 deriv_[static_cast<size_t>(i) + 1] * h, (u - ua) / h);
}

}  // namespace fnspace
