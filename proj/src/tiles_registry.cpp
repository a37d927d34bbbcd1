#include <algorithm>
#include <cctype>

#include "fairkit/tiles.hpp"

namespace fairkit::tiles {
namespace {

// Tile names must be parseable pipeline tokens.
bool is_tile_name(const std::string& name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  return std::all_of(name.begin() + 1, name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-';
  });
}

std::string truncate(std::string s, size_t limit) {
  if (s.size() > limit) s = s.substr(0, limit) + "...";
  return s;
}

SlotMismatch mismatch(int component, std::string expected, const std::optional<TileType>& in) {
  return SlotMismatch{component, std::move(expected), in ? in->to_string() : "no input"};
}

TileType seq_a() { return TileType::seq(TileType::agent()); }
TileType seq_m() { return TileType::seq(TileType::quantity()); }

Tile all_agent_tile() {
  Tile t;
  t.name = "all-agent";
  t.signature = "-> (a)";
  t.constant = true;
  t.type_rule = [](const std::optional<TileType>& in) -> std::variant<TileType, SlotMismatch> {
    if (in) return mismatch(-1, "no input", in);
    return seq_a();
  };
  t.semantics = [](const EvalContext& ctx, const Value*) {
    std::vector<Value> agents;
    for (const auto& a : sorted_agents(ctx.scenario())) agents.push_back(Value::agent(a));
    return Value::sequence(std::move(agents));
  };
  return t;
}

Tile accumulates_tile() {
  return make_tile("accumulates", seq_a(), seq_m(), [](const EvalContext& ctx, const Value& in) {
    std::vector<Value> out;
    for (const auto& e : in.elements())
      out.push_back(Value::quantity(accumulation(ctx.scenario(), ctx.bindings().utility_name,
                                                 ctx.outcome(), e.as_agent())));
    return Value::sequence(std::move(out));
  });
}

Tile needs_tile() {
  return make_tile("needs", seq_a(), seq_m(), [](const EvalContext& ctx, const Value& in) {
    const AttributeTable& need = require_attribute(
        ctx.scenario(), SubjectKind::agent, ctx.bindings().need_name, ValueKind::quantity);
    std::vector<Value> out;
    for (const auto& e : in.elements())
      out.push_back(Value::quantity(quantity_at(need, e.as_agent())));
    return Value::sequence(std::move(out));
  });
}

Tile all_equal_tile() {
  return make_tile("all-equal", seq_m(), TileType::boolean(),
                   [](const EvalContext&, const Value& in) {
                     const auto& xs = in.elements();
                     for (const auto& x : xs)
                       if (!(x.as_quantity() == xs[0].as_quantity())) return Value::boolean(false);
                     return Value::boolean(true);
                   });
}

Tile all_at_least_tile() {
  return make_tile("all-at-least", TileType::tuple({seq_m(), seq_m()}), TileType::boolean(),
                   [](const EvalContext&, const Value& in) {
                     const auto& xs = in.components()[0].elements();
                     const auto& ys = in.components()[1].elements();
                     if (xs.size() != ys.size())
                       throw LengthMismatchError(
                           "all-at-least: sequences of different lengths (" +
                           std::to_string(xs.size()) + " vs " + std::to_string(ys.size()) + ")");
                     for (size_t i = 0; i < xs.size(); ++i)
                       if (xs[i].as_quantity() < ys[i].as_quantity()) return Value::boolean(false);
                     return Value::boolean(true);
                   });
}

Tile zip_tile() {
  Tile t;
  t.name = "zip";
  t.signature = "<(_),(_)> -> (<_,_>)";
  t.type_rule = [](const std::optional<TileType>& in) -> std::variant<TileType, SlotMismatch> {
    if (!in || in->kind() != TileType::Kind::tuple || in->components().size() != 2)
      return mismatch(-1, "<(_),(_)>", in);
    for (int i = 0; i < 2; ++i)
      if (in->components()[i].kind() != TileType::Kind::seq)
        return SlotMismatch{i, "(_)", in->components()[i].to_string()};
    return TileType::seq(
        TileType::tuple({in->components()[0].element(), in->components()[1].element()}));
  };
  t.semantics = [](const EvalContext&, const Value* in) {
    const auto& xs = in->components()[0].elements();
    const auto& ys = in->components()[1].elements();
    if (xs.size() != ys.size())
      throw LengthMismatchError("zip: sequences of different lengths (" +
                                std::to_string(xs.size()) + " vs " + std::to_string(ys.size()) +
                                ")");
    std::vector<Value> out;
    for (size_t i = 0; i < xs.size(); ++i) out.push_back(Value::tuple({xs[i], ys[i]}));
    return Value::sequence(std::move(out));
  };
  return t;
}

Tile unzip_tile() {
  Tile t;
  t.name = "unzip";
  t.signature = "(<_,_>) -> <(_),(_)>";
  t.type_rule = [](const std::optional<TileType>& in) -> std::variant<TileType, SlotMismatch> {
    if (!in || in->kind() != TileType::Kind::seq ||
        in->element().kind() != TileType::Kind::tuple || in->element().components().size() != 2)
      return mismatch(-1, "(<_,_>)", in);
    return TileType::tuple(
        {TileType::seq(in->element().components()[0]), TileType::seq(in->element().components()[1])});
  };
  t.semantics = [](const EvalContext&, const Value* in) {
    std::vector<Value> firsts, seconds;
    for (const auto& e : in->elements()) {
      firsts.push_back(e.components()[0]);
      seconds.push_back(e.components()[1]);
    }
    return Value::tuple({Value::sequence(std::move(firsts)), Value::sequence(std::move(seconds))});
  };
  return t;
}

Tile pair_tile() {
  Tile t;
  t.name = "pair";
  t.signature = "<_,...> -> <_,...>";
  t.type_rule = [](const std::optional<TileType>& in) -> std::variant<TileType, SlotMismatch> {
    if (!in || in->kind() != TileType::Kind::tuple) return mismatch(-1, "<_,...>", in);
    return *in;
  };
  t.semantics = [](const EvalContext&, const Value* in) { return *in; };
  return t;
}

Tile proj_tile(int i) {
  Tile t;
  t.name = "proj-" + std::to_string(i);
  t.signature = "<_,...> -> _";
  t.type_rule = [i](const std::optional<TileType>& in) -> std::variant<TileType, SlotMismatch> {
    if (!in || in->kind() != TileType::Kind::tuple ||
        in->components().size() < static_cast<size_t>(i))
      return mismatch(-1, "tuple with at least " + std::to_string(i) + " components", in);
    return in->components()[static_cast<size_t>(i - 1)];
  };
  t.semantics = [i](const EvalContext&, const Value* in) {
    return in->components()[static_cast<size_t>(i - 1)];
  };
  return t;
}

}  // namespace

EvalContext::EvalContext(const FairnessScenario& s, const Outcome& o, Bindings b)
    : scenario_(&s), outcome_(&o), bindings_(std::move(b)) {
  auto diags = validate_scenario(s);
  if (!diags.empty()) throw Error("invalid scenario: " + diags.front());
  for (const auto& [agent, resource] : o.pairs) {
    if (!s.has_agent(agent)) throw UnknownIdentifierError("unknown agent '" + agent + "'");
    if (!s.has_resource(resource))
      throw UnknownIdentifierError("unknown resource '" + resource + "'");
  }
}

Tile make_tile(std::string name, TileType input, TileType output,
               std::function<Value(const EvalContext&, const Value&)> fn) {
  Tile t;
  t.name = std::move(name);
  t.signature = input.to_string() + " -> " + output.to_string();
  t.type_rule = [input, output](const std::optional<TileType>& in)
      -> std::variant<TileType, SlotMismatch> {
    if (in && *in == input) return output;
    // Pinpoint the offending component when both sides are same-arity tuples.
    if (in && in->kind() == TileType::Kind::tuple &&
        input.kind() == TileType::Kind::tuple &&
        in->components().size() == input.components().size()) {
      for (size_t i = 0; i < input.components().size(); ++i)
        if (!(in->components()[i] == input.components()[i]))
          return SlotMismatch{static_cast<int>(i), input.components()[i].to_string(),
                              in->components()[i].to_string()};
    }
    return mismatch(-1, input.to_string(), in);
  };
  t.semantics = [fn = std::move(fn)](const EvalContext& ctx, const Value* in) {
    if (!in) throw Error("missing input");
    return fn(ctx, *in);
  };
  return t;
}

Tile constant_tile(TileType type, Value value) {
  if (!inhabits(value, type))
    throw Error("constant value " + value.to_string() + " does not inhabit " + type.to_string());
  Tile t;
  t.name = "const[" + truncate(value.to_string(), 24) + "]";
  t.signature = "-> " + type.to_string();
  t.constant = true;
  t.type_rule = [type](const std::optional<TileType>& in) -> std::variant<TileType, SlotMismatch> {
    if (in) return mismatch(-1, "no input", in);
    return type;
  };
  t.semantics = [value = std::move(value)](const EvalContext&, const Value*) { return value; };
  return t;
}

Tile constant_tile(Value value) {
  auto t = type_of(value);
  if (!t)
    throw Error("cannot infer the type of " + value.to_string() + "; provide it explicitly");
  return constant_tile(std::move(*t), std::move(value));
}

Registry Registry::with_builtins() {
  Registry r;
  r.add(all_agent_tile());
  r.add(accumulates_tile());
  r.add(needs_tile());
  r.add(all_equal_tile());
  r.add(all_at_least_tile());
  r.add(zip_tile());
  r.add(unzip_tile());
  r.add(pair_tile());
  for (int i = 1; i <= 9; ++i) r.add(proj_tile(i));
  return r;
}

void Registry::add(Tile tile) {
  if (!is_tile_name(tile.name)) throw Error("invalid tile name '" + tile.name + "'");
  if (!tiles_.emplace(tile.name, tile).second)
    throw Error("tile '" + tile.name + "' already registered");
}

const Tile* Registry::find(const std::string& name) const {
  auto it = tiles_.find(name);
  return it == tiles_.end() ? nullptr : &it->second;
}

std::vector<std::string> Registry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, tile] : tiles_) out.push_back(name);
  return out;
}

}  // namespace fairkit::tiles
