#pragma once

#include <functional>
#include <memory>
#include <vector>

namespace fnspace {

/// Cumulative integral tables in log coordinates.
///
/// Tail: V(u) = int_u^inf g(s) ds; Head: H(u) = int_-inf^u g(s) ds.
/// Values are accumulated per grid segment with Gauss-Kronrod and evaluated
/// between nodes by cubic Hermite interpolation with the exact endpoint
/// derivative +-g(u). Outside the tabulated range the integral is computed
/// directly. build() returns nullptr when the defining integral diverges.
/// Log-|u| extension grids beyond the uniform core, so lookups far out on
/// either side stay O(1) even when tables are built from other tables.
struct CumulativeWings {
  double left_w0 = 0.0, right_w0 = 0.0;
  std::vector<double> left_values, left_deriv;    // dV/d(log|u|) at nodes
  std::vector<double> right_values, right_deriv;

  void build_tail_wings(const std::function<double(double)>& g, double u_lo,
                        double v_at_lo, double u_hi, double v_at_hi);
  void build_head_wings(const std::function<double(double)>& g, double u_lo,
                        double h_at_lo, double u_hi, double h_at_hi, bool floored);
};

class CumulativeTail {
 public:
  static constexpr double kU0 = -40.0;
  static constexpr double kU1 = 40.0;
  static constexpr int kNodes = 4801;

  static std::shared_ptr<const CumulativeTail> build(std::function<double(double)> g);
  double value(double u) const;

 private:
  std::function<double(double)> g_;
  std::vector<double> values_;
  std::vector<double> deriv_;  // g at the nodes: exact Hermite slopes
  CumulativeWings wings_;
};

class CumulativeHead {
 public:
  static std::shared_ptr<const CumulativeHead> build(std::function<double(double)> g);
  /// Head table with the lower end cut at u_floor instead of -inf; used to
  /// trace criteria whose inner integral genuinely diverges at 0.
  static std::shared_ptr<const CumulativeHead> build_floored(
      std::function<double(double)> g, double u_floor);
  double value(double u) const;
  bool floored() const { return floored_; }

 private:
  void init_from(double head_value);

  std::function<double(double)> g_;
  std::vector<double> values_;
  std::vector<double> deriv_;
  CumulativeWings wings_;
  double u_lo_ = 0.0, u_hi_ = 0.0;
  bool floored_ = false;
};

}  // namespace fnspace
