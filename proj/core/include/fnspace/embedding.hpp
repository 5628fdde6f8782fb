#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fnspace/growth.hpp"
#include "fnspace/hardy.hpp"
#include "fnspace/norms.hpp"
#include "fnspace/sv_calculus.hpp"

namespace fnspace::embed {

/// One embedding problem: B^{0,b}_{p,r} into the Z / Lorentz-Karamata scale.
struct EmbeddingCase {
  double n = 1.0;
  double p = 3.0;   // (1, inf)
  double r = 1.0;   // [1, inf)
  double q = 2.0;   // [1, inf)
  svfunc::SVExpr b = svfunc::SVExpr::broken(-1.0, -2.0);
  std::optional<svfunc::SVExpr> kappa;

  /// rho = inf when p <= q, else 1/rho = 1/q - 1/p.
  double rho() const;

  std::string to_json() const;
  static EmbeddingCase from_json(const std::string& text);
};

struct EmbeddingReport {
  svfunc::IntegrabilityVerdict hypothesis;
  bool hypothesis_ok = false;
  bool q_ge_r = false;
  bool embedding_holds = false;  // theorem verdict: hypothesis and q >= r
  std::string note;              // triviality remarks on hypothesis failure

  // numeric certification of the bbar tail behaviour:
  //   || t^{-1/q} bbar ||_{q;(1,inf)} equals (r/q)^{1/q} b_r(1) and the
  //   (0,1) part grows without bound
  double tail_norm_value = 0.0;
  double tail_norm_expected = 0.0;
  std::vector<std::pair<double, double>> head_growth_trace;  // (t, || ||_{q;(t,1)})
  bool head_diverges = false;

  std::optional<svfunc::DerivedSV> bbar;
  std::optional<svfunc::DerivedSV> btilde;

  std::string to_json() const;
};

EmbeddingReport analyze(const EmbeddingCase& c);

struct FamilyMember {
  std::string label;
  double besov = 0.0;
  double z = 0.0;
  double ratio = 0.0;
  bool skipped = false;
};

struct EmbeddingConstantReport {
  double max_ratio = 0.0;
  std::vector<FamilyMember> members;
  std::string to_json() const;
};

/// max over the family of ||f||_{Z_{p,q,n,bbar}} / ||f||_{B^{0,b}_{p,r}}
/// (Besov side is 1-D, so n = 1 is forced on that side).
EmbeddingConstantReport empirical_embedding_constant(
    const EmbeddingCase& c, const std::vector<rearrange::SampledFunction>& family);

struct OptimalityReport {
  hardy::ConditionReport condition;  // Heinig-Stepanov on the bridge weights
  double expected_sup = 0.0;         // (n r / q)^{1/q} n^{-1/r}
  double max_norm_ratio = 0.0;       // Z_{p,q,n,bbar} vs Z_{p,r,n,b} on indicators
  std::string to_json() const;
};

/// Certifies Z_{p,r,n,b} into Z_{p,q,n,bbar} via the weighted inequality for
/// non-decreasing functions, and cross-checks the two Z-norms on indicators.
OptimalityReport optimality_chain(const EmbeddingCase& c);

struct Cgo2Report {
  std::vector<std::pair<double, double>> trace;  // (t, LHS / b_{r,n}(t))
  GrowthVerdict verdict = GrowthVerdict::inconclusive;
  bool wq1_infinite = false;
  std::string to_json() const;
};

/// Ratio trace of the local-embedding criterion
///   W_q(1) + || s^{-1/p-1/rho} W_q(s) ||_{rho;(t,1)}  against  b_{r,n}(t).
Cgo2Report cgo2_condition(const EmbeddingCase& c, const hardy::Weight& w);

struct SharpnessReport {
  std::vector<std::pair<double, double>> trace;
  bool converges = false;  // kappa bounded; otherwise the trace grows
  double final_value = 0.0;
  std::string to_json() const;
};

/// Probes whether kappa * bbar still gives an embedding: the proof quantity
///   ((Bbar_q(t^{1/n}))^rho - A^rho)^{1/rho} / bbar_q(t^{1/n})
/// converges to kappa(0+) when kappa is bounded and grows otherwise.
SharpnessReport sharpness_probe(const EmbeddingCase& c);

struct StrictnessReport {
  std::string branch;  // "q=p", "q<p", "q>p"
  // q = p: Z/LK ratios over the indicator family
  std::vector<std::pair<double, double>> equality_ratios;  // (scale k, ratio)
  double bracket = 0.0;
  // q < p: witness trace (z, LHS/RHS of the failing criterion) plus the
  // closed-form oracle values (b_r/b)^{r(p-q)/q}(z^{1/n})
  std::vector<std::pair<double, double>> witness_trace;
  std::vector<std::pair<double, double>> oracle_trace;
  // q > p: Sawyer report on the proof weights
  std::optional<hardy::ConditionReport> sawyer;
  bool expected_verdict = false;  // the theorem-predicted outcome was observed
  std::string to_json() const;
};

StrictnessReport strictness_demo(const EmbeddingCase& c);

struct Theorem48Report {
  // the two applicable proof branches for the given (q, r)
  std::string forward_branch;  // "lai-forward" | "eo"
  std::string reverse_branch;  // "lai-reverse" | "ok-hardy"
  std::optional<hardy::ConditionReport> forward;
  std::optional<hardy::ConditionReport> reverse;
  // eo branch: measured bracket of v / (w^{1-s} (phi int w)^s) over the grid
  double eo_bracket = 0.0;
  bool all_finite = false;
  std::string to_json() const;
};

/// Instantiates the weights of the interpolation-embedding proofs and checks
/// the asserted criterion finiteness on each applicable branch.
Theorem48Report theorem48_410_check(double theta, double r, double q,
                                    const svfunc::SVExpr& a,
                                    const svfunc::SVExpr& b);

/// 17 indicator scales, 10 hats, 13 seeded monotone profiles.
std::vector<rearrange::SampledFunction> builtin_test_family(unsigned long long seed = 42);

/// The witness-trace value of the q<p strictness branch at one z:
/// (||f_z||_Z / ||f_z||_{L_{p,q;btilde}})^p with f_z* the indicator of (0,z).
double strictness_witness_value(const EmbeddingCase& c,
                                const svfunc::DerivedSV& bbar,
                                const svfunc::DerivedSV& btilde, double z);

}  // namespace fnspace::embed
