#pragma once

#include <utility>
#include <vector>

namespace fnspace {

enum class GrowthVerdict { bounded, unbounded, inconclusive };

/// Grid-based unboundedness heuristic shared by the criterion and embedding
/// reports: a trace is called unbounded when it at least triples across each
/// of 3 successive decades while staying monotone there (so a witness with
/// ratio >= 27x the decade-start value exists in the trace), or when it
/// contains genuine infinities. This is a verdict about the trace, never a
/// proof.
GrowthVerdict assess_growth(const std::vector<std::pair<double, double>>& trace);

}  // namespace fnspace
