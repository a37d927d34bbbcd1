#include "fairkit/core.hpp"

#include <algorithm>
#include <cctype>

namespace fairkit {
namespace {

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

std::string attr_prefix(SubjectKind subject, const Identifier& name) {
  return std::string(to_string(subject)) + " attribute '" + name + "'";
}

void check_identifier_list(const std::vector<Identifier>& ids, SubjectKind subject,
                           std::vector<std::string>& out) {
  if (ids.empty()) {
    out.push_back(std::string(to_string(subject)) + "s must be non-empty");
    return;
  }
  std::set<Identifier> seen, reported;
  for (const auto& id : ids) {
    if (!is_valid_identifier(id))
      out.push_back("invalid identifier '" + id + "'");
    else if (!seen.insert(id).second && reported.insert(id).second)
      out.push_back("duplicate identifier '" + id + "'");
  }
}

void check_table(const FairnessScenario& s, SubjectKind subject, const Identifier& key,
                 const AttributeTable& t, std::vector<std::string>& out) {
  const std::string prefix = attr_prefix(subject, key);
  if (t.name != key) {
    out.push_back(prefix + ": stored under key '" + key + "' but named '" + t.name + "'");
    return;
  }
  if (!is_valid_identifier(t.name)) {
    out.push_back(prefix + ": invalid attribute name");
    return;
  }
  if (t.subject != subject) {
    out.push_back(prefix + ": subject kind is " + std::string(to_string(t.subject)));
    return;
  }

  const auto& subjects = subject == SubjectKind::agent ? s.agents : s.resources;
  for (const auto& id : subjects)
    if (!t.values.count(id)) out.push_back(prefix + ": missing value for '" + id + "'");

  for (const auto& [id, value] : t.values) {
    if (std::find(subjects.begin(), subjects.end(), id) == subjects.end()) {
      out.push_back(prefix + ": value for unknown " + std::string(to_string(subject)) +
                    " '" + id + "'");
      continue;
    }
    if (kind_of(value) != t.kind) {
      out.push_back(prefix + ": value for '" + id + "' has kind " +
                    std::string(to_string(kind_of(value))) + ", expected " +
                    std::string(to_string(t.kind)));
      continue;
    }
    if (t.kind == ValueKind::ranking) {
      Ranking r = std::get<Ranking>(value);
      std::vector<Identifier> want = s.resources;
      std::sort(r.begin(), r.end());
      std::sort(want.begin(), want.end());
      if (r != want)
        out.push_back(prefix + ": ranking for '" + id +
                      "' is not a permutation of the resources");
    } else if (t.kind == ValueKind::resource_ref) {
      const auto& ref = std::get<Identifier>(value);
      if (!s.has_resource(ref))
        out.push_back(prefix + ": value for '" + id + "' names unknown resource '" + ref + "'");
    }
  }
}

}  // namespace

bool is_valid_identifier(std::string_view token) {
  if (token.empty() || !ident_start(token[0])) return false;
  for (char c : token.substr(1))
    if (!ident_char(c)) return false;
  return true;
}

std::string_view to_string(SubjectKind k) {
  return k == SubjectKind::agent ? "agent" : "resource";
}

std::string_view to_string(ValueKind k) {
  switch (k) {
    case ValueKind::quantity: return "quantity";
    case ValueKind::boolean: return "boolean";
    case ValueKind::ranking: return "ranking";
    case ValueKind::resource_ref: return "resource";
  }
  return "?";
}

ValueKind kind_of(const AttributeValue& v) {
  switch (v.index()) {
    case 0: return ValueKind::quantity;
    case 1: return ValueKind::boolean;
    case 2: return ValueKind::ranking;
    default: return ValueKind::resource_ref;
  }
}

const AttributeValue* AttributeTable::find(const Identifier& subject_id) const {
  auto it = values.find(subject_id);
  return it == values.end() ? nullptr : &it->second;
}

bool FairnessScenario::has_agent(const Identifier& id) const {
  return std::find(agents.begin(), agents.end(), id) != agents.end();
}

bool FairnessScenario::has_resource(const Identifier& id) const {
  return std::find(resources.begin(), resources.end(), id) != resources.end();
}

const AttributeTable* FairnessScenario::find_attribute(SubjectKind subject,
                                                       const Identifier& name) const {
  const auto& tables = subject == SubjectKind::agent ? agent_attributes : resource_attributes;
  auto it = tables.find(name);
  return it == tables.end() ? nullptr : &it->second;
}

std::vector<Identifier> sorted_agents(const FairnessScenario& s) {
  std::vector<Identifier> ids = s.agents;
  std::sort(ids.begin(), ids.end());
  return ids;
}

Outcome make_outcome(const FairnessScenario& s,
                     const std::vector<std::pair<Identifier, Identifier>>& pairs) {
  Outcome o;
  for (const auto& [a, b] : pairs) {
    if (!s.has_agent(a)) throw UnknownIdentifierError("unknown agent '" + a + "'");
    if (!s.has_resource(b)) throw UnknownIdentifierError("unknown resource '" + b + "'");
    if (!o.pairs.insert({a, b}).second)
      throw Error("duplicate pair (" + a + ", " + b + ")");
  }
  return o;
}

std::vector<std::string> validate_scenario(const FairnessScenario& s) {
  std::vector<std::string> out;
  check_identifier_list(s.agents, SubjectKind::agent, out);
  check_identifier_list(s.resources, SubjectKind::resource, out);

  std::set<Identifier> agent_set(s.agents.begin(), s.agents.end());
  for (const auto& r : s.resources)
    if (agent_set.count(r))
      out.push_back("identifier '" + r + "' used as both agent and resource");

  for (const auto& [key, table] : s.agent_attributes)
    check_table(s, SubjectKind::agent, key, table, out);
  for (const auto& [key, table] : s.resource_attributes)
    check_table(s, SubjectKind::resource, key, table, out);
  return out;
}

bool receives(const FairnessScenario& s, const Outcome& o,
              const Identifier& agent, const Identifier& resource) {
  if (!s.has_agent(agent)) throw UnknownIdentifierError("unknown agent '" + agent + "'");
  if (!s.has_resource(resource))
    throw UnknownIdentifierError("unknown resource '" + resource + "'");
  return o.contains(agent, resource);
}

const AttributeTable& require_attribute(const FairnessScenario& s, SubjectKind subject,
                                        const Identifier& name, ValueKind kind) {
  const AttributeTable* t = s.find_attribute(subject, name);
  if (!t) throw AttributeError(attr_prefix(subject, name) + " not found");
  if (t->kind != kind)
    throw AttributeError(attr_prefix(subject, name) + " has kind " +
                         std::string(to_string(t->kind)) + ", expected " +
                         std::string(to_string(kind)));
  return *t;
}

namespace {

const AttributeValue& value_at(const AttributeTable& table, const Identifier& subject_id) {
  const AttributeValue* v = table.find(subject_id);
  if (!v)
    throw AttributeError(attr_prefix(table.subject, table.name) + ": no value for '" +
                         subject_id + "'");
  return *v;
}

template <typename T>
const T& typed_value_at(const AttributeTable& table, const Identifier& subject_id,
                        ValueKind want) {
  const AttributeValue& v = value_at(table, subject_id);
  if (kind_of(v) != want)
    throw AttributeError(attr_prefix(table.subject, table.name) + ": value for '" +
                         subject_id + "' has kind " + std::string(to_string(kind_of(v))) +
                         ", expected " + std::string(to_string(want)));
  return std::get<T>(v);
}

}  // namespace

const Quantity& quantity_at(const AttributeTable& t, const Identifier& id) {
  return typed_value_at<Quantity>(t, id, ValueKind::quantity);
}
bool boolean_at(const AttributeTable& t, const Identifier& id) {
  return typed_value_at<bool>(t, id, ValueKind::boolean);
}
const Ranking& ranking_at(const AttributeTable& t, const Identifier& id) {
  return typed_value_at<Ranking>(t, id, ValueKind::ranking);
}
const Identifier& resource_ref_at(const AttributeTable& t, const Identifier& id) {
  return typed_value_at<Identifier>(t, id, ValueKind::resource_ref);
}

Quantity accumulation(const FairnessScenario& s, const Identifier& utility_name,
                      const Outcome& o, const Identifier& agent) {
  if (!s.has_agent(agent)) throw UnknownIdentifierError("unknown agent '" + agent + "'");
  const AttributeTable& u =
      require_attribute(s, SubjectKind::resource, utility_name, ValueKind::quantity);
  Quantity total = 0;
  for (auto it = o.pairs.lower_bound({agent, Identifier()});
       it != o.pairs.end() && it->first == agent; ++it)
    total += quantity_at(u, it->second);
  return total;
}

FairnessScenario tau_transform(const FairnessScenario& s, const Outcome& o,
                               const Identifier& utility_name, const Identifier& need_name) {
  if (!is_valid_identifier(need_name))
    throw AttributeError("invalid attribute name '" + need_name + "'");
  if (s.agent_attributes.count(need_name))
    throw AttributeError("agent attribute '" + need_name + "' already exists");
  if (s.agents.empty()) throw DegenerateInputError("agents must be non-empty");

  const Identifier& a0 = *std::min_element(s.agents.begin(), s.agents.end());
  Quantity constant = accumulation(s, utility_name, o, a0);

  FairnessScenario result = s;
  AttributeTable table{need_name, SubjectKind::agent, ValueKind::quantity, {}};
  for (const auto& a : s.agents) table.values.emplace(a, constant);
  result.agent_attributes.emplace(need_name, std::move(table));
  return result;
}

MeasureResult MeasureResult::exact(Quantity value, std::vector<std::string> diagnostics) {
  if (value < Quantity(0) || value > Quantity(1))
    throw OutOfRangeError("measure value out of range: " + value.to_string());
  return MeasureResult(ResultKind::exact, value, value.as_double(), std::move(diagnostics));
}

MeasureResult MeasureResult::boolean(bool value) {
  return exact(Quantity(value ? 1 : 0));
}

MeasureResult MeasureResult::approximate(double value, std::vector<std::string> diagnostics) {
  if (!(value >= 0.0 && value <= 1.0))
    throw OutOfRangeError("measure value out of range: " + std::to_string(value));
  return MeasureResult(ResultKind::approximate, Quantity(0), value, std::move(diagnostics));
}

const Quantity& MeasureResult::exact_value() const {
  if (kind_ != ResultKind::exact) throw Error("measure result is not exact");
  return exact_;
}

double MeasureResult::value() const {
  return kind_ == ResultKind::exact ? exact_.as_double() : approx_;
}

}  // namespace fairkit
