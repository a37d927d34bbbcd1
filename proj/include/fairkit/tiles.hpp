#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <variant>

#include "fairkit/core.hpp"

namespace fairkit::tiles {

// A tile type: atomic (a = agent, r = resource, m = quantity, b = boolean),
// a tuple of at least two types, or a sequence. Immutable and cheap to copy.
class TileType {
 public:
  enum class Kind { atom, tuple, seq };
  enum class Atom { agent, resource, quantity, boolean };

  static TileType agent() { return make_atom(Atom::agent); }
  static TileType resource() { return make_atom(Atom::resource); }
  static TileType quantity() { return make_atom(Atom::quantity); }
  static TileType boolean() { return make_atom(Atom::boolean); }
  static TileType tuple(std::vector<TileType> components);  // arity >= 2
  static TileType seq(TileType element);

  Kind kind() const;
  Atom atom() const;                               // pre: kind() == atom
  const std::vector<TileType>& components() const; // pre: kind() == tuple
  const TileType& element() const;                 // pre: kind() == seq

  // Concrete syntax: "a", "m", "<t1,t2>", "(t)".
  std::string to_string() const;

  friend bool operator==(const TileType& a, const TileType& b);

 private:
  struct Repr;
  static TileType make_atom(Atom a);
  explicit TileType(std::shared_ptr<const Repr> repr) : repr_(std::move(repr)) {}
  std::shared_ptr<const Repr> repr_;
};

struct AgentRef {
  Identifier id;
  bool operator==(const AgentRef&) const = default;
};
struct ResourceRef {
  Identifier id;
  bool operator==(const ResourceRef&) const = default;
};

// A runtime value flowing along pipeline edges.
class Value {
 public:
  static Value agent(Identifier id) { return Value(AgentRef{std::move(id)}); }
  static Value resource(Identifier id) { return Value(ResourceRef{std::move(id)}); }
  static Value quantity(Quantity q) { return Value(std::move(q)); }
  static Value boolean(bool b) { return Value(b); }
  static Value tuple(std::vector<Value> components);  // arity >= 2
  static Value sequence(std::vector<Value> elements);

  bool is_agent() const { return std::holds_alternative<AgentRef>(v_); }
  bool is_resource() const { return std::holds_alternative<ResourceRef>(v_); }
  bool is_quantity() const { return std::holds_alternative<Quantity>(v_); }
  bool is_boolean() const { return std::holds_alternative<bool>(v_); }
  bool is_tuple() const { return std::holds_alternative<Tuple>(v_); }
  bool is_sequence() const { return std::holds_alternative<Seq>(v_); }

  const Identifier& as_agent() const;
  const Identifier& as_resource() const;
  const Quantity& as_quantity() const;
  bool as_boolean() const;
  const std::vector<Value>& components() const;  // pre: is_tuple()
  const std::vector<Value>& elements() const;    // pre: is_sequence()

  std::string to_string() const;
  bool operator==(const Value& rhs) const;

 private:
  struct Tuple {
    std::vector<Value> items;
    bool operator==(const Tuple& rhs) const { return items == rhs.items; }
  };
  struct Seq {
    std::vector<Value> items;
    bool operator==(const Seq& rhs) const { return items == rhs.items; }
  };
  using Storage = std::variant<AgentRef, ResourceRef, Quantity, bool, Tuple, Seq>;
  explicit Value(Storage v) : v_(std::move(v)) {}
  Storage v_;
};

// True iff the value belongs to the type. The empty sequence inhabits every
// sequence type.
bool inhabits(const Value& v, const TileType& t);

// The unique type of the value, or nullopt if it contains an empty sequence
// (whose element type is ambiguous).
std::optional<TileType> type_of(const Value& v);

// Names an attribute binding for the builtin tiles and maps constants for
// custom ones.
struct Bindings {
  std::string utility_name = "u";
  std::string need_name = "q";
  std::string ranking_name = "v";
  std::string protected_name = "p";
  std::string essential_name = "q";
  std::string ground_truth_name = "res";
  Quantity epsilon = Quantity(1, 100);
  std::optional<Identifier> target_resource;
  std::optional<Identifier> high_resource;
  std::map<std::string, Value> constants;
};

// Evaluation context: everything a tile may read. The scenario and outcome
// must outlive the context; the scenario must be valid and the outcome's
// identifiers must belong to it (checked on construction).
class EvalContext {
 public:
  EvalContext(const FairnessScenario& s, const Outcome& o, Bindings b = {});
  const FairnessScenario& scenario() const { return *scenario_; }
  const Outcome& outcome() const { return *outcome_; }
  const Bindings& bindings() const { return bindings_; }

 private:
  const FairnessScenario* scenario_;
  const Outcome* outcome_;
  Bindings bindings_;
};

// Reported by a type rule when the (effective) input type does not fit.
// component: input slot index, or -1 for the whole input. `expected` uses
// "_" as a wildcard for polymorphic positions.
struct SlotMismatch {
  int component = -1;
  std::string expected;
  std::string found;
};

// Computes the output type from the effective input type: nullopt for a
// constant tile, the single argument's type, or the tuple of argument types.
using TypeRule =
    std::function<std::variant<TileType, SlotMismatch>(const std::optional<TileType>&)>;

// Computes the output value; `input` is null for constant tiles.
using Semantics = std::function<Value(const EvalContext&, const Value* input)>;

struct Tile {
  std::string name;
  std::string signature;  // display only, e.g. "(a) -> (m)"
  bool constant = false;
  TypeRule type_rule;
  Semantics semantics;
};

// A tile computing a fixed monomorphic function.
Tile make_tile(std::string name, TileType input, TileType output,
               std::function<Value(const EvalContext&, const Value&)> fn);

// A constant tile with an explicit type (value must inhabit it).
Tile constant_tile(TileType type, Value value);
// Type inferred from the value; throws Error if ambiguous (empty sequences).
Tile constant_tile(Value value);

// The tile namespace a pipeline parser resolves names in.
class Registry {
 public:
  // all-agent, accumulates, needs, all-equal, all-at-least, zip, unzip,
  // pair, proj-1 .. proj-9.
  static Registry with_builtins();

  // Throws Error on an unparseable name or a duplicate.
  void add(Tile tile);
  const Tile* find(const std::string& name) const;
  std::vector<std::string> names() const;

 private:
  std::map<std::string, Tile> tiles_;
};

// 1-based position in pipeline source text; {0,0} when not built from text.
struct SourceSpan {
  int line = 0;
  int column = 0;
};

// A dataflow graph of tile applications. Nodes may form arbitrary graphs so
// that typecheck can reject malformed ones; `args` are indices of the nodes
// feeding this node, in slot order.
class Pipeline {
 public:
  struct Node {
    Tile tile;
    std::vector<int> args;
    SourceSpan span;
  };

  int add_node(Tile tile, std::vector<int> args = {}, SourceSpan span = {});
  void set_args(int node, std::vector<int> args);
  int size() const { return static_cast<int>(nodes_.size()); }
  const Node& node(int i) const { return nodes_.at(static_cast<size_t>(i)); }

 private:
  std::vector<Node> nodes_;
};

enum class TypeErrorKind {
  empty_pipeline,
  bad_node_index,
  multiple_sinks,
  no_sink,
  cycle,
  nonconstant_source,
  constant_with_args,
  mismatch,
};

struct TypeError {
  TypeErrorKind kind = TypeErrorKind::mismatch;
  std::string message;   // full human-readable description
  int node = -1;         // offending node, -1 when structural
  int slot = -1;         // offending input slot, -1 when not edge-level
  std::string expected;  // rendered types for mismatches
  std::string found;
  SourceSpan span;
};

// Thrown by operations that need a well-typed pipeline.
struct PipelineTypeError : Error {
  explicit PipelineTypeError(TypeError detail);
  TypeError detail;
};

// A tile's semantics failed during evaluation.
struct EvalError : Error {
  EvalError(std::string message, std::string tile_name, int node);
  std::string tile_name;
  int node;
};

// Full typing of a well-typed pipeline.
struct Typing {
  int root = -1;
  TileType root_type;
  std::vector<int> order;  // producers before consumers, deterministic
  std::vector<std::optional<TileType>> input;   // effective input per node
  std::vector<std::optional<TileType>> output;  // per node; set for reachable nodes
};

std::variant<Typing, TypeError> typecheck_full(const Pipeline& p);
std::variant<TileType, TypeError> typecheck(const Pipeline& p);

struct EvalOptions {
  bool guard_values = false;  // re-check every node output against its type
};

// Evaluates a well-typed pipeline: each node runs once, in dependency order,
// shared nodes memoized. Throws PipelineTypeError if the pipeline is
// ill-typed, EvalError if a tile fails.
Value evaluate(const Pipeline& p, const EvalContext& ctx, const EvalOptions& opts = {});

using MeasureFn =
    std::function<MeasureResult(const FairnessScenario&, const Outcome&, const Bindings&)>;

// Adapts a pipeline whose root type is b or m into a fairness measure.
// Boolean roots map to 0/1; quantity roots must lie in [0,1] or evaluation
// throws OutOfRangeError.
MeasureFn pipeline_as_measure(const Pipeline& p);

// Index of the unique sink node; nullopt when the pipeline is empty, has
// several sinks, or references missing nodes.
std::optional<int> find_sink(const Pipeline& p);

// True iff both pipelines are well-formed trees/DAGs computing the same
// application structure (same tile names, same argument shape).
bool structurally_equal(const Pipeline& a, const Pipeline& b);

}  // namespace fairkit::tiles
