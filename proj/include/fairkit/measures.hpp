#pragma once

#include <span>

#include "fairkit/core.hpp"

namespace fairkit::measures {

// Relative-tolerance bound for approximate-equality comparisons; always > 0.
class Epsilon {
 public:
  explicit Epsilon(Quantity value);
  static Epsilon default_value() { return Epsilon(Quantity(1, 100)); }
  const Quantity& value() const { return value_; }

 private:
  Quantity value_;
};

// x ~ y up to eps: equal, or |x - y| / max(|x|, |y|) < eps.
bool similar_eps(const Quantity& x, const Quantity& y, const Epsilon& eps);

struct GroupRates {
  Quantity rate_positive;  // share of the protected group receiving the target
  Quantity rate_negative;  // share of the rest receiving the target
};

// Receipt rates of `target_resource` inside and outside the protected group
// (boolean agent attribute `protected_name`). Both groups must be non-empty.
GroupRates group_rates(const FairnessScenario& s, const Outcome& o,
                       const Identifier& protected_name, const Identifier& target_resource);

// 1 iff all agents accumulate the same total utility.
MeasureResult equality(const FairnessScenario& s, const Outcome& o,
                       const Identifier& utility_name);

// 1 iff every agent accumulates at least its need.
MeasureResult equity(const FairnessScenario& s, const Outcome& o,
                     const Identifier& utility_name, const Identifier& need_name);

// 1 iff every agent accumulates exactly its need.
MeasureResult strict_equity(const FairnessScenario& s, const Outcome& o,
                            const Identifier& utility_name, const Identifier& need_name);

// 1 iff no agent strictly prefers (under its own ranking) some resource
// another agent holds to everything it holds itself.
MeasureResult weak_envy_freeness(const FairnessScenario& s, const Outcome& o,
                                 const Identifier& ranking_name);

// 1 iff the protected and unprotected receipt rates are eps-similar.
MeasureResult group_fairness(const FairnessScenario& s, const Outcome& o,
                             const Identifier& protected_name,
                             const Identifier& target_resource, const Epsilon& eps);

// 1 iff, within every class of agents that agree on the boolean essential
// attribute, either all receive the target resource or none do.
MeasureResult individual_fairness(const FairnessScenario& s, const Outcome& o,
                                  const Identifier& essential_name,
                                  const Identifier& target_resource);

// (sum x)^2 / (n * sum x^2); 1 for the all-zero allocation (with diagnostic).
MeasureResult jains_index(const FairnessScenario& s, const Outcome& o,
                          const Identifier& utility_name);

// 1 - sum_ij |x_i - x_j| / (2 n sum x); 1 for zero total (with diagnostic);
// rejects negative accumulations.
MeasureResult gini_complement(const FairnessScenario& s, const Outcome& o,
                              const Identifier& utility_name);

// Sample Pearson correlation, clamped to [-1,1]; 0 when either side has zero
// variance. Sums are computed exactly; only the final sqrt and division are
// floating point.
double pearson_corr(std::span<const Quantity> xs, std::span<const Quantity> ys);

// |corr| between "received the high resource despite a different recorded
// result" and protected-group membership, agents in lexicographic order.
MeasureResult equalized_odds(const FairnessScenario& s, const Outcome& o,
                             const Identifier& protected_name,
                             const Identifier& ground_truth_name,
                             const Identifier& high_resource);

}  // namespace fairkit::measures
