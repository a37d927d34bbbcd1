#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "fairkit/quantity.hpp"

namespace fairkit {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An agent, resource or attribute name that is not part of the scenario.
struct UnknownIdentifierError : Error {
  using Error::Error;
};

// Missing attribute, wrong attribute kind, or an attribute name collision.
struct AttributeError : Error {
  using Error::Error;
};

// Input outside a measure's domain: empty group, negative accumulation, ...
struct DegenerateInputError : Error {
  using Error::Error;
};

// Paired sequences of different lengths.
struct LengthMismatchError : Error {
  using Error::Error;
};

// A measure produced a value outside [0,1].
struct OutOfRangeError : Error {
  using Error::Error;
};

using Identifier = std::string;

// Identifiers match [A-Za-z_][A-Za-z0-9_-]*.
bool is_valid_identifier(std::string_view token);

enum class SubjectKind { agent, resource };
enum class ValueKind { quantity, boolean, ranking, resource_ref };

std::string_view to_string(SubjectKind k);
std::string_view to_string(ValueKind k);

// A ranking lists resource identifiers from most to least preferred.
using Ranking = std::vector<Identifier>;

// One attribute value; the active alternative must match the table's kind.
using AttributeValue = std::variant<Quantity, bool, Ranking, Identifier>;

ValueKind kind_of(const AttributeValue& v);

// A total map from subjects (all agents, or all resources) to values of a
// single kind.
struct AttributeTable {
  Identifier name;
  SubjectKind subject = SubjectKind::agent;
  ValueKind kind = ValueKind::quantity;
  std::map<Identifier, AttributeValue> values;

  const AttributeValue* find(const Identifier& subject_id) const;
  bool operator==(const AttributeTable&) const = default;
};

struct FairnessScenario {
  std::vector<Identifier> agents;
  std::vector<Identifier> resources;
  std::map<Identifier, AttributeTable> agent_attributes;
  std::map<Identifier, AttributeTable> resource_attributes;

  bool has_agent(const Identifier& id) const;
  bool has_resource(const Identifier& id) const;
  const AttributeTable* find_attribute(SubjectKind subject, const Identifier& name) const;
  bool operator==(const FairnessScenario&) const = default;
};

// Agents in lexicographic order, regardless of storage order.
std::vector<Identifier> sorted_agents(const FairnessScenario& s);

// An allocation: the set of (agent, resource) pairs meaning "agent receives
// resource". Any subset of A x R is admissible.
struct Outcome {
  std::set<std::pair<Identifier, Identifier>> pairs;

  bool contains(const Identifier& agent, const Identifier& resource) const {
    return pairs.count({agent, resource}) > 0;
  }
  bool operator==(const Outcome&) const = default;
};

// Builds an outcome, rejecting unknown identifiers and duplicate pairs.
Outcome make_outcome(const FairnessScenario& s,
                     const std::vector<std::pair<Identifier, Identifier>>& pairs);

// Checks every structural invariant; returns human-readable diagnostics in a
// deterministic order, empty when the scenario is valid.
std::vector<std::string> validate_scenario(const FairnessScenario& s);

// True iff (agent, resource) is in the outcome. Throws UnknownIdentifierError
// if either identifier is not part of the scenario.
bool receives(const FairnessScenario& s, const Outcome& o,
              const Identifier& agent, const Identifier& resource);

// Looks up an attribute table, checking subject and kind.
const AttributeTable& require_attribute(const FairnessScenario& s, SubjectKind subject,
                                        const Identifier& name, ValueKind kind);

// Value of a quantity attribute for one subject.
const Quantity& quantity_at(const AttributeTable& table, const Identifier& subject_id);
bool boolean_at(const AttributeTable& table, const Identifier& subject_id);
const Ranking& ranking_at(const AttributeTable& table, const Identifier& subject_id);
const Identifier& resource_ref_at(const AttributeTable& table, const Identifier& subject_id);

// Total utility accumulated by `agent` under `o`: the sum of
// utility(resource) over the resources the agent receives; 0 when it
// receives nothing.
Quantity accumulation(const FairnessScenario& s, const Identifier& utility_name,
                      const Outcome& o, const Identifier& agent);

// Derives a scenario for need-based measures from an equality-style one: adds
// a constant agent attribute `need_name` whose value is the accumulation of
// the lexicographically least agent under `o`. Throws AttributeError if the
// name is already taken.
FairnessScenario tau_transform(const FairnessScenario& s, const Outcome& o,
                               const Identifier& utility_name, const Identifier& need_name);

enum class ResultKind { exact, approximate };

// A fairness measure's value in [0,1], exact rational or floating point,
// plus optional human-readable diagnostics (e.g. degeneracy warnings).
class MeasureResult {
 public:
  static MeasureResult exact(Quantity value, std::vector<std::string> diagnostics = {});
  static MeasureResult boolean(bool value);
  static MeasureResult approximate(double value, std::vector<std::string> diagnostics = {});

  ResultKind kind() const { return kind_; }
  // Exact value; throws Error when the result is approximate.
  const Quantity& exact_value() const;
  // Double view of either kind.
  double value() const;
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

 private:
  MeasureResult(ResultKind kind, Quantity q, double d, std::vector<std::string> diags)
      : kind_(kind), exact_(std::move(q)), approx_(d), diagnostics_(std::move(diags)) {}
  ResultKind kind_;
  Quantity exact_;
  double approx_;
  std::vector<std::string> diagnostics_;
};

}  // namespace fairkit
