#include "fairkit/measures.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace fairkit::measures {
namespace {

std::vector<Quantity> accumulations(const FairnessScenario& s, const Outcome& o,
                                    const Identifier& utility_name) {
  std::vector<Quantity> xs;
  for (const auto& a : sorted_agents(s)) xs.push_back(accumulation(s, utility_name, o, a));
  return xs;
}

std::set<Identifier> held_by(const Outcome& o, const Identifier& agent) {
  std::set<Identifier> held;
  for (auto it = o.pairs.lower_bound({agent, Identifier()});
       it != o.pairs.end() && it->first == agent; ++it)
    held.insert(it->second);
  return held;
}

void require_resource(const FairnessScenario& s, const Identifier& id) {
  if (!s.has_resource(id)) throw UnknownIdentifierError("unknown resource '" + id + "'");
}

}  // namespace

Epsilon::Epsilon(Quantity value) : value_(std::move(value)) {
  if (value_ <= Quantity(0)) throw Error("epsilon must be positive");
}

bool similar_eps(const Quantity& x, const Quantity& y, const Epsilon& eps) {
  if (x == y) return true;
  Quantity scale = std::max(x.abs(), y.abs());
  return (x - y).abs() / scale < eps.value();
}

MeasureResult equality(const FairnessScenario& s, const Outcome& o,
                       const Identifier& utility_name) {
  std::vector<Quantity> xs = accumulations(s, o, utility_name);
  bool equal = std::all_of(xs.begin(), xs.end(), [&](const Quantity& x) { return x == xs[0]; });
  return MeasureResult::boolean(equal);
}

MeasureResult equity(const FairnessScenario& s, const Outcome& o,
                     const Identifier& utility_name, const Identifier& need_name) {
  const AttributeTable& need =
      require_attribute(s, SubjectKind::agent, need_name, ValueKind::quantity);
  for (const auto& a : s.agents)
    if (accumulation(s, utility_name, o, a) < quantity_at(need, a))
      return MeasureResult::boolean(false);
  return MeasureResult::boolean(true);
}

MeasureResult strict_equity(const FairnessScenario& s, const Outcome& o,
                            const Identifier& utility_name, const Identifier& need_name) {
  const AttributeTable& need =
      require_attribute(s, SubjectKind::agent, need_name, ValueKind::quantity);
  for (const auto& a : s.agents)
    if (accumulation(s, utility_name, o, a) != quantity_at(need, a))
      return MeasureResult::boolean(false);
  return MeasureResult::boolean(true);
}

MeasureResult weak_envy_freeness(const FairnessScenario& s, const Outcome& o,
                                 const Identifier& ranking_name) {
  const AttributeTable& ranking =
      require_attribute(s, SubjectKind::agent, ranking_name, ValueKind::ranking);

  for (const auto& a : s.agents) {
    const Ranking& pref = ranking_at(ranking, a);
    std::map<Identifier, size_t> rank;
    for (size_t i = 0; i < pref.size(); ++i) rank.emplace(pref[i], i);

    std::set<Identifier> mine = held_by(o, a);
    size_t best = pref.size();  // rank of the most-preferred held resource
    for (const auto& b : mine) best = std::min(best, rank.at(b));

    // a envies iff someone else holds a resource a lacks and strictly
    // prefers to everything a holds.
    for (const auto& [other, b] : o.pairs) {
      if (other == a || mine.count(b)) continue;
      if (rank.at(b) < best) return MeasureResult::boolean(false);
    }
  }
  return MeasureResult::boolean(true);
}

GroupRates group_rates(const FairnessScenario& s, const Outcome& o,
                       const Identifier& protected_name, const Identifier& target_resource) {
  const AttributeTable& prot =
      require_attribute(s, SubjectKind::agent, protected_name, ValueKind::boolean);
  require_resource(s, target_resource);

  long pos_size = 0, neg_size = 0, pos_hits = 0, neg_hits = 0;
  for (const auto& a : s.agents) {
    bool member = boolean_at(prot, a);
    bool hit = o.contains(a, target_resource);
    (member ? pos_size : neg_size) += 1;
    if (hit) (member ? pos_hits : neg_hits) += 1;
  }
  if (pos_size == 0) throw DegenerateInputError("protected group is empty");
  if (neg_size == 0) throw DegenerateInputError("unprotected group is empty");
  return {Quantity(pos_hits, pos_size), Quantity(neg_hits, neg_size)};
}

MeasureResult group_fairness(const FairnessScenario& s, const Outcome& o,
                             const Identifier& protected_name,
                             const Identifier& target_resource, const Epsilon& eps) {
  GroupRates rates = group_rates(s, o, protected_name, target_resource);
  return MeasureResult::boolean(similar_eps(rates.rate_positive, rates.rate_negative, eps));
}

MeasureResult individual_fairness(const FairnessScenario& s, const Outcome& o,
                                  const Identifier& essential_name,
                                  const Identifier& target_resource) {
  const AttributeTable& essential =
      require_attribute(s, SubjectKind::agent, essential_name, ValueKind::boolean);
  require_resource(s, target_resource);

  // Two equivalence classes (attribute true / false); receipt of the target
  // must be uniform within each.
  for (bool cls : {false, true}) {
    bool first = true, expected = false;
    for (const auto& a : s.agents) {
      if (boolean_at(essential, a) != cls) continue;
      bool hit = o.contains(a, target_resource);
      if (first) {
        expected = hit;
        first = false;
      } else if (hit != expected) {
        return MeasureResult::boolean(false);
      }
    }
  }
  return MeasureResult::boolean(true);
}

MeasureResult jains_index(const FairnessScenario& s, const Outcome& o,
                          const Identifier& utility_name) {
  std::vector<Quantity> xs = accumulations(s, o, utility_name);
  Quantity sum = 0, sum_sq = 0;
  for (const auto& x : xs) {
    sum += x;
    sum_sq += x * x;
  }
  if (sum_sq.is_zero())
    return MeasureResult::exact(Quantity(1), {"degenerate all-zero allocation"});
  return MeasureResult::exact(sum * sum / (Quantity(static_cast<long>(xs.size())) * sum_sq));
}

MeasureResult gini_complement(const FairnessScenario& s, const Outcome& o,
                              const Identifier& utility_name) {
  std::vector<Quantity> xs = accumulations(s, o, utility_name);
  const std::vector<Identifier> agents = sorted_agents(s);
  for (size_t i = 0; i < xs.size(); ++i)
    if (xs[i] < Quantity(0))
      throw DegenerateInputError("negative accumulation for agent '" + agents[i] + "'");

  Quantity total = 0;
  for (const auto& x : xs) total += x;
  if (total.is_zero()) return MeasureResult::exact(Quantity(1), {"degenerate zero-total"});

  Quantity abs_diffs = 0;
  for (size_t i = 0; i < xs.size(); ++i)
    for (size_t j = i + 1; j < xs.size(); ++j) abs_diffs += (xs[i] - xs[j]).abs();
  abs_diffs *= Quantity(2);

  long n = static_cast<long>(xs.size());
  return MeasureResult::exact(Quantity(1) - abs_diffs / (Quantity(2) * Quantity(n) * total));
}

double pearson_corr(std::span<const Quantity> xs, std::span<const Quantity> ys) {
  if (xs.size() != ys.size())
    throw LengthMismatchError("pearson_corr: sequences of different lengths");
  if (xs.empty()) throw DegenerateInputError("pearson_corr: empty input");

  long n = static_cast<long>(xs.size());
  Quantity sx = 0, sy = 0;
  for (long i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  Quantity mx = sx / Quantity(n), my = sy / Quantity(n);

  Quantity sxy = 0, sxx = 0, syy = 0;
  for (long i = 0; i < n; ++i) {
    Quantity dx = xs[i] - mx, dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx.is_zero() || syy.is_zero()) return 0.0;

  double r = sxy.as_double() / (std::sqrt(sxx.as_double()) * std::sqrt(syy.as_double()));
  return std::clamp(r, -1.0, 1.0);
}

MeasureResult equalized_odds(const FairnessScenario& s, const Outcome& o,
                             const Identifier& protected_name,
                             const Identifier& ground_truth_name,
                             const Identifier& high_resource) {
  const AttributeTable& prot =
      require_attribute(s, SubjectKind::agent, protected_name, ValueKind::boolean);
  const AttributeTable& truth =
      require_attribute(s, SubjectKind::agent, ground_truth_name, ValueKind::resource_ref);
  require_resource(s, high_resource);

  std::vector<Quantity> fp, p;
  for (const auto& a : sorted_agents(s)) {
    bool high = o.contains(a, high_resource);
    bool mismatch = resource_ref_at(truth, a) != high_resource;
    fp.push_back(Quantity(high && mismatch ? 1 : 0));
    p.push_back(Quantity(boolean_at(prot, a) ? 1 : 0));
  }
  return MeasureResult::approximate(std::abs(pearson_corr(fp, p)));
}

}  // namespace fairkit::measures
