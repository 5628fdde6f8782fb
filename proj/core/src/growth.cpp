#include "fnspace/growth.hpp"

#include <cmath>
#include <map>

namespace fnspace {

GrowthVerdict assess_growth(const std::vector<std::pair<double, double>>& trace) {
  if (trace.size() < 4) return GrowthVerdict::inconclusive;

  bool any_finite = false;
  for (const auto& [z, v] : trace) {
    if (std::isinf(v)) return GrowthVerdict::unbounded;
    if (std::isnan(v)) return GrowthVerdict::inconclusive;
    if (v > 0.0) any_finite = true;
  }
  if (!any_finite) return GrowthVerdict::inconclusive;

  // decade medians, keyed by floor(log10 z)
  std::map<int, std::vector<double>> bins;
  for (const auto& [z, v] : trace)
    bins[static_cast<int>(std::floor(std::log10(z)))].push_back(v);

  std::vector<std::pair<int, double>> medians;
  for (auto& [k, vals] : bins) {
    std::sort(vals.begin(), vals.end());
    medians.emplace_back(k, vals[vals.size() / 2]);
  }

  for (size_t i = 0; i + 3 < medians.size(); ++i) {
    bool ok = true;
    for (size_t j = i; j < i + 3; ++j) {
      if (medians[j + 1].first != medians[j].first + 1 ||
          !(medians[j + 1].second >= 3.0 * medians[j].second)) {
        ok = false;
        break;
      }
    }
    if (ok) return GrowthVerdict::unbounded;
  }
  return GrowthVerdict::bounded;
}

}  // namespace fnspace
