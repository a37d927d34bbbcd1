#include <algorithm>
#include <cstdint>

#include "fairkit/textio.hpp"
#include "json.hpp"

namespace fairkit::textio {
namespace {

using nlohmann::json;

std::pair<int, int> position_of(std::string_view text, size_t offset) {
  offset = std::min(offset, text.size());
  int line = 1, col = 1;
  for (size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

[[noreturn]] void schema_error(const std::string& message) {
  throw ParseError(message, 1, 1);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    auto [line, col] = position_of(text, offset);
    throw ParseError("invalid JSON syntax", line, col);
  }
}

void check_fields(const json& j, const std::vector<std::string>& allowed,
                  const std::string& where) {
  for (const auto& [key, value] : j.items())
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      schema_error(where + "unknown field '" + key + "'");
}

std::vector<Identifier> id_list(const json& doc, const std::string& field) {
  if (!doc.contains(field)) schema_error("missing field '" + field + "'");
  const json& j = doc.at(field);
  if (!j.is_array()) schema_error("'" + field + "' must be an array of strings");
  std::vector<Identifier> ids;
  for (const auto& e : j) {
    if (!e.is_string()) schema_error("'" + field + "' must be an array of strings");
    ids.push_back(e.get<std::string>());
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

Quantity decode_quantity(const json& v, const std::string& where) {
  try {
    if (v.is_number()) return Quantity::from_string(v.dump());
    if (v.is_string()) return Quantity::from_string(v.get<std::string>());
  } catch (const std::exception&) {
    schema_error(where + "invalid number " + v.dump());
  }
  schema_error(where + "must be a number or numeric string");
}

AttributeValue decode_value(const json& v, ValueKind kind, const std::string& where) {
  switch (kind) {
    case ValueKind::quantity:
      return decode_quantity(v, where);
    case ValueKind::boolean:
      if (!v.is_boolean()) schema_error(where + "must be a boolean");
      return v.get<bool>();
    case ValueKind::ranking: {
      if (!v.is_array()) schema_error(where + "must be an array of resource names");
      Ranking r;
      for (const auto& e : v) {
        if (!e.is_string()) schema_error(where + "must be an array of resource names");
        r.push_back(e.get<std::string>());
      }
      return r;
    }
    default:
      if (!v.is_string()) schema_error(where + "must be a resource name");
      return v.get<Identifier>();
  }
}

std::optional<ValueKind> kind_from_string(const std::string& s) {
  if (s == "quantity") return ValueKind::quantity;
  if (s == "boolean") return ValueKind::boolean;
  if (s == "ranking") return ValueKind::ranking;
  if (s == "resource") return ValueKind::resource_ref;
  return std::nullopt;
}

std::map<Identifier, AttributeTable> decode_attributes(const json& doc, const std::string& field,
                                                       SubjectKind subject) {
  std::map<Identifier, AttributeTable> tables;
  if (!doc.contains(field)) return tables;
  const json& j = doc.at(field);
  if (!j.is_object()) schema_error("'" + field + "' must be an object");

  for (const auto& [name, spec] : j.items()) {
    const std::string where = "attribute '" + name + "': ";
    if (!spec.is_object()) schema_error(where + "must be an object");
    check_fields(spec, {"kind", "values"}, where);
    if (!spec.contains("kind")) schema_error(where + "missing field 'kind'");
    if (!spec.at("kind").is_string()) schema_error(where + "'kind' must be a string");
    auto kind = kind_from_string(spec.at("kind").get<std::string>());
    if (!kind) schema_error(where + "unknown kind '" + spec.at("kind").get<std::string>() + "'");
    if (!spec.contains("values")) schema_error(where + "missing field 'values'");
    if (!spec.at("values").is_object()) schema_error(where + "'values' must be an object");

    AttributeTable table{name, subject, *kind, {}};
    for (const auto& [subject_id, v] : spec.at("values").items())
      table.values.emplace(
          subject_id, decode_value(v, *kind, where + "value for '" + subject_id + "' "));
    tables.emplace(name, std::move(table));
  }
  return tables;
}

FairnessScenario parse_scenario_impl(std::string_view text,
                                     std::vector<std::string>* diagnostics) {
  json doc = parse_json(text);
  if (!doc.is_object()) schema_error("top-level value must be an object");
  check_fields(doc, {"version", "agents", "resources", "agent_attributes",
                     "resource_attributes"}, "");
  if (doc.contains("version") &&
      (!doc.at("version").is_number_integer() || doc.at("version").get<int>() != 1))
    schema_error("unsupported version " + doc.at("version").dump());

  FairnessScenario s;
  s.agents = id_list(doc, "agents");
  s.resources = id_list(doc, "resources");
  s.agent_attributes = decode_attributes(doc, "agent_attributes", SubjectKind::agent);
  s.resource_attributes = decode_attributes(doc, "resource_attributes", SubjectKind::resource);

  std::vector<std::string> diags = validate_scenario(s);
  if (diagnostics) {
    *diagnostics = std::move(diags);
  } else if (!diags.empty()) {
    std::string joined;
    for (const auto& d : diags) joined += (joined.empty() ? "" : "; ") + d;
    schema_error(joined);
  }
  return s;
}

json quantity_to_json(const Quantity& q) {
  if (q.is_integer()) {
    const std::string s = q.to_string();
    try {
      return json(std::stoll(s));
    } catch (const std::out_of_range&) {
      return json(s);
    }
  }
  const std::string dec = q.to_exact_decimal();
  return json(dec.empty() ? q.to_string() : dec);
}

json value_to_json(const AttributeValue& v) {
  switch (kind_of(v)) {
    case ValueKind::quantity: return quantity_to_json(std::get<Quantity>(v));
    case ValueKind::boolean: return json(std::get<bool>(v));
    case ValueKind::ranking: return json(std::get<Ranking>(v));
    default: return json(std::get<Identifier>(v));
  }
}

json attributes_to_json(const std::map<Identifier, AttributeTable>& tables) {
  json out = json::object();
  for (const auto& [name, table] : tables) {
    json values = json::object();
    for (const auto& [id, v] : table.values) values[id] = value_to_json(v);
    out[name] = json{{"kind", std::string(to_string(table.kind))}, {"values", values}};
  }
  return out;
}

}  // namespace

ParseError::ParseError(const std::string& message, int line_, int column_)
    : Error(message + " at " + std::to_string(line_) + ":" + std::to_string(column_)),
      line(line_),
      column(column_) {}

FairnessScenario parse_scenario(std::string_view text) {
  return parse_scenario_impl(text, nullptr);
}

FairnessScenario parse_scenario(std::string_view text, std::vector<std::string>& diagnostics) {
  return parse_scenario_impl(text, &diagnostics);
}

std::string format_scenario(const FairnessScenario& s) {
  std::vector<Identifier> agents = s.agents, resources = s.resources;
  std::sort(agents.begin(), agents.end());
  std::sort(resources.begin(), resources.end());

  json doc;
  doc["version"] = 1;
  doc["agents"] = agents;
  doc["resources"] = resources;
  doc["agent_attributes"] = attributes_to_json(s.agent_attributes);
  doc["resource_attributes"] = attributes_to_json(s.resource_attributes);
  return doc.dump(2) + "\n";
}

Outcome parse_outcome(std::string_view text, const FairnessScenario& s) {
  json doc = parse_json(text);
  if (!doc.is_object()) schema_error("top-level value must be an object");
  check_fields(doc, {"version", "pairs"}, "");
  if (!doc.contains("pairs")) schema_error("missing field 'pairs'");
  const json& pairs = doc.at("pairs");
  if (!pairs.is_array()) schema_error("'pairs' must be an array");

  Outcome o;
  for (const auto& e : pairs) {
    if (!e.is_array() || e.size() != 2 || !e.at(0).is_string() || !e.at(1).is_string())
      schema_error("each pair must be [agent, resource]");
    Identifier a = e.at(0).get<std::string>(), b = e.at(1).get<std::string>();
    if (!s.has_agent(a)) schema_error("unknown agent '" + a + "'");
    if (!s.has_resource(b)) schema_error("unknown resource '" + b + "'");
    if (!o.pairs.insert({a, b}).second) schema_error("duplicate pair (" + a + ", " + b + ")");
  }
  return o;
}

std::string format_outcome(const Outcome& o) {
  json pairs = json::array();
  for (const auto& [a, b] : o.pairs) pairs.push_back(json::array({a, b}));
  json doc;
  doc["pairs"] = pairs;
  return doc.dump(2) + "\n";
}

}  // namespace fairkit::textio
