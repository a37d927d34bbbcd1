#include <algorithm>

#include "fairkit/tiles.hpp"

namespace fairkit::tiles {
namespace {

std::string position_suffix(const SourceSpan& span) {
  if (span.line <= 0) return "";
  return " at " + std::to_string(span.line) + ":" + std::to_string(span.column);
}

TypeError structural_error(TypeErrorKind kind, std::string message, int node = -1,
                           SourceSpan span = {}) {
  TypeError e;
  e.kind = kind;
  e.message = std::move(message);
  e.node = node;
  e.span = span;
  return e;
}

}  // namespace

PipelineTypeError::PipelineTypeError(TypeError d)
    : Error(d.message.empty() ? "pipeline type error" : d.message), detail(std::move(d)) {}

EvalError::EvalError(std::string message, std::string tile, int node_index)
    : Error("evaluation failed at tile '" + tile + "': " + message),
      tile_name(std::move(tile)),
      node(node_index) {}

int Pipeline::add_node(Tile tile, std::vector<int> args, SourceSpan span) {
  nodes_.push_back(Node{std::move(tile), std::move(args), span});
  return static_cast<int>(nodes_.size()) - 1;
}

void Pipeline::set_args(int node, std::vector<int> args) {
  nodes_.at(static_cast<size_t>(node)).args = std::move(args);
}

std::variant<Typing, TypeError> typecheck_full(const Pipeline& p) {
  const int n = p.size();
  if (n == 0)
    return structural_error(TypeErrorKind::empty_pipeline, "pipeline has no nodes");

  std::vector<int> uses(static_cast<size_t>(n), 0);
  for (int i = 0; i < n; ++i)
    for (int a : p.node(i).args) {
      if (a < 0 || a >= n)
        return structural_error(TypeErrorKind::bad_node_index,
                                "tile '" + p.node(i).tile.name + "' references missing node " +
                                    std::to_string(a) + position_suffix(p.node(i).span),
                                i, p.node(i).span);
      ++uses[static_cast<size_t>(a)];
    }

  std::vector<int> sinks;
  for (int i = 0; i < n; ++i)
    if (uses[static_cast<size_t>(i)] == 0) sinks.push_back(i);
  if (sinks.empty())
    return structural_error(TypeErrorKind::no_sink,
                            "pipeline has no sink node (every node is consumed)");
  if (sinks.size() > 1) {
    std::string list;
    for (size_t i = 0; i < sinks.size(); ++i)
      list += (i ? ", " : "") + p.node(sinks[i]).tile.name;
    return structural_error(TypeErrorKind::multiple_sinks,
                            "pipeline has multiple sinks: " + list, sinks[1]);
  }
  const int root = sinks[0];

  // Iterative DFS from the root: detects cycles, yields a deterministic
  // producers-first order (arguments in slot order).
  enum { white, gray, black };
  std::vector<int> state(static_cast<size_t>(n), white);
  std::vector<int> order;
  std::vector<std::pair<int, size_t>> stack{{root, 0}};
  state[static_cast<size_t>(root)] = gray;
  while (!stack.empty()) {
    auto& [node, next_child] = stack.back();
    const auto& args = p.node(node).args;
    if (next_child < args.size()) {
      int child = args[next_child++];
      if (state[static_cast<size_t>(child)] == gray) {
        const auto& nd = p.node(child);
        return structural_error(TypeErrorKind::cycle,
                                "cycle through tile '" + nd.tile.name + "'" +
                                    position_suffix(nd.span),
                                child, nd.span);
      }
      if (state[static_cast<size_t>(child)] == white) {
        state[static_cast<size_t>(child)] = gray;
        stack.push_back({child, 0});
      }
    } else {
      state[static_cast<size_t>(node)] = black;
      order.push_back(node);
      stack.pop_back();
    }
  }
  if (static_cast<int>(order.size()) != n) {
    // Unreached nodes are all consumed by other unreached nodes, which is
    // only possible within a cycle.
    int first = 0;
    while (state[static_cast<size_t>(first)] == black) ++first;
    const auto& nd = p.node(first);
    return structural_error(TypeErrorKind::cycle,
                            "cycle through tile '" + nd.tile.name + "'" +
                                position_suffix(nd.span),
                            first, nd.span);
  }

  std::vector<std::optional<TileType>> input(static_cast<size_t>(n));
  std::vector<std::optional<TileType>> output(static_cast<size_t>(n));
  for (int i : order) {
    const auto& nd = p.node(i);
    if (nd.args.empty() && !nd.tile.constant)
      return structural_error(TypeErrorKind::nonconstant_source,
                              "tile '" + nd.tile.name + "' requires an input but has none" +
                                  position_suffix(nd.span),
                              i, nd.span);
    if (!nd.args.empty() && nd.tile.constant)
      return structural_error(TypeErrorKind::constant_with_args,
                              "constant tile '" + nd.tile.name + "' applied to arguments" +
                                  position_suffix(nd.span),
                              i, nd.span);

    if (nd.args.size() == 1) {
      input[static_cast<size_t>(i)] = output[static_cast<size_t>(nd.args[0])];
    } else if (nd.args.size() >= 2) {
      std::vector<TileType> comps;
      for (int a : nd.args) comps.push_back(*output[static_cast<size_t>(a)]);
      input[static_cast<size_t>(i)] = TileType::tuple(std::move(comps));
    }

    auto result = nd.tile.type_rule(input[static_cast<size_t>(i)]);
    if (auto* sm = std::get_if<SlotMismatch>(&result)) {
      TypeError e;
      e.kind = TypeErrorKind::mismatch;
      e.node = i;
      e.expected = sm->expected;
      e.found = sm->found;
      e.span = nd.span;
      if (sm->component >= 0)
        e.slot = nd.args.size() >= 2 ? sm->component : 0;
      e.message = "type mismatch: " + nd.tile.name + " expects " + sm->expected + ", got " +
                  sm->found;
      if (e.slot >= 0 && nd.args.size() >= 2)
        e.message += " (argument " + std::to_string(e.slot + 1) + ")";
      e.message += position_suffix(nd.span);
      return e;
    }
    output[static_cast<size_t>(i)] = std::get<TileType>(result);
  }

  return Typing{root, *output[static_cast<size_t>(root)], std::move(order), std::move(input),
                std::move(output)};
}

std::variant<TileType, TypeError> typecheck(const Pipeline& p) {
  auto result = typecheck_full(p);
  if (auto* err = std::get_if<TypeError>(&result)) return *err;
  return std::get<Typing>(result).root_type;
}

Value evaluate(const Pipeline& p, const EvalContext& ctx, const EvalOptions& opts) {
  auto checked = typecheck_full(p);
  if (auto* err = std::get_if<TypeError>(&checked)) throw PipelineTypeError(*err);
  const Typing& typing = std::get<Typing>(checked);

  std::vector<std::optional<Value>> memo(static_cast<size_t>(p.size()));
  for (int i : typing.order) {
    const auto& nd = p.node(i);
    std::optional<Value> in;
    if (nd.args.size() == 1) {
      in = *memo[static_cast<size_t>(nd.args[0])];
    } else if (nd.args.size() >= 2) {
      std::vector<Value> comps;
      for (int a : nd.args) comps.push_back(*memo[static_cast<size_t>(a)]);
      in = Value::tuple(std::move(comps));
    }
    try {
      Value out = nd.tile.semantics(ctx, in ? &*in : nullptr);
      if (opts.guard_values && !inhabits(out, *typing.output[static_cast<size_t>(i)]))
        throw Error("output " + out.to_string() + " does not inhabit " +
                    typing.output[static_cast<size_t>(i)]->to_string());
      memo[static_cast<size_t>(i)] = std::move(out);
    } catch (const EvalError&) {
      throw;
    } catch (const std::exception& e) {
      throw EvalError(e.what(), nd.tile.name, i);
    }
  }
  return *memo[static_cast<size_t>(typing.root)];
}

MeasureFn pipeline_as_measure(const Pipeline& p) {
  auto checked = typecheck_full(p);
  if (auto* err = std::get_if<TypeError>(&checked)) throw PipelineTypeError(*err);
  const TileType root_type = std::get<Typing>(checked).root_type;

  const bool is_boolean = root_type == TileType::boolean();
  if (!is_boolean && !(root_type == TileType::quantity()))
    throw Error("pipeline root type must be b or m, got " + root_type.to_string());

  return [p, is_boolean](const FairnessScenario& s, const Outcome& o,
                         const Bindings& b) -> MeasureResult {
    EvalContext ctx(s, o, b);
    Value v = evaluate(p, ctx);
    if (is_boolean) return MeasureResult::boolean(v.as_boolean());
    const Quantity& q = v.as_quantity();
    if (q < Quantity(0) || q > Quantity(1))
      throw OutOfRangeError("pipeline value out of range: " + q.to_string());
    return MeasureResult::exact(q);
  };
}

std::optional<int> find_sink(const Pipeline& p) {
  if (p.size() == 0) return std::nullopt;
  std::vector<int> uses(static_cast<size_t>(p.size()), 0);
  for (int i = 0; i < p.size(); ++i)
    for (int a : p.node(i).args) {
      if (a < 0 || a >= p.size()) return std::nullopt;
      ++uses[static_cast<size_t>(a)];
    }
  std::optional<int> sink;
  for (int i = 0; i < p.size(); ++i)
    if (uses[static_cast<size_t>(i)] == 0) {
      if (sink) return std::nullopt;
      sink = i;
    }
  return sink;
}

namespace {

bool nodes_equal(const Pipeline& a, const Pipeline& b, int i, int j,
                 std::map<std::pair<int, int>, int>& memo) {
  auto key = std::make_pair(i, j);
  if (auto it = memo.find(key); it != memo.end()) return it->second > 0;
  memo[key] = -1;  // in progress: hitting it again means a cycle
  const auto& na = a.node(i);
  const auto& nb = b.node(j);
  bool equal = na.tile.name == nb.tile.name && na.args.size() == nb.args.size();
  for (size_t k = 0; equal && k < na.args.size(); ++k)
    equal = nodes_equal(a, b, na.args[k], nb.args[k], memo);
  memo[key] = equal ? 1 : 0;
  return equal;
}

}  // namespace

bool structurally_equal(const Pipeline& a, const Pipeline& b) {
  auto ra = find_sink(a), rb = find_sink(b);
  if (!ra || !rb) return false;
  std::map<std::pair<int, int>, int> memo;
  return nodes_equal(a, b, *ra, *rb, memo);
}

}  // namespace fairkit::tiles
