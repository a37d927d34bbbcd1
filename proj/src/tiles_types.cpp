#include "fairkit/tiles.hpp"

#include <algorithm>

namespace fairkit::tiles {

struct TileType::Repr {
  Kind kind;
  Atom atom = Atom::agent;
  std::vector<TileType> children;  // tuple components, or the seq element
};

TileType TileType::make_atom(Atom a) {
  auto make = [](Atom atom) {
    return TileType(std::make_shared<const Repr>(Repr{Kind::atom, atom, {}}));
  };
  static const TileType agent_t = make(Atom::agent);
  static const TileType resource_t = make(Atom::resource);
  static const TileType quantity_t = make(Atom::quantity);
  static const TileType boolean_t = make(Atom::boolean);
  switch (a) {
    case Atom::agent: return agent_t;
    case Atom::resource: return resource_t;
    case Atom::quantity: return quantity_t;
    default: return boolean_t;
  }
}

TileType TileType::tuple(std::vector<TileType> components) {
  if (components.size() < 2) throw Error("tuple types need at least two components");
  return TileType(
      std::make_shared<const Repr>(Repr{Kind::tuple, Atom::agent, std::move(components)}));
}

TileType TileType::seq(TileType element) {
  return TileType(
      std::make_shared<const Repr>(Repr{Kind::seq, Atom::agent, {std::move(element)}}));
}

TileType::Kind TileType::kind() const { return repr_->kind; }

TileType::Atom TileType::atom() const {
  if (repr_->kind != Kind::atom) throw Error("type is not atomic");
  return repr_->atom;
}

const std::vector<TileType>& TileType::components() const {
  if (repr_->kind != Kind::tuple) throw Error("type is not a tuple");
  return repr_->children;
}

const TileType& TileType::element() const {
  if (repr_->kind != Kind::seq) throw Error("type is not a sequence");
  return repr_->children[0];
}

std::string TileType::to_string() const {
  switch (repr_->kind) {
    case Kind::atom:
      switch (repr_->atom) {
        case Atom::agent: return "a";
        case Atom::resource: return "r";
        case Atom::quantity: return "m";
        default: return "b";
      }
    case Kind::tuple: {
      std::string out = "<";
      for (size_t i = 0; i < repr_->children.size(); ++i) {
        if (i) out += ",";
        out += repr_->children[i].to_string();
      }
      return out + ">";
    }
    default:
      return "(" + repr_->children[0].to_string() + ")";
  }
}

bool operator==(const TileType& a, const TileType& b) {
  if (a.repr_ == b.repr_) return true;
  if (a.repr_->kind != b.repr_->kind) return false;
  if (a.repr_->kind == TileType::Kind::atom) return a.repr_->atom == b.repr_->atom;
  return a.repr_->children == b.repr_->children;
}

Value Value::tuple(std::vector<Value> components) {
  if (components.size() < 2) throw Error("tuple values need at least two components");
  return Value(Tuple{std::move(components)});
}

Value Value::sequence(std::vector<Value> elements) {
  for (size_t i = 1; i < elements.size(); ++i)
    if (elements[i].v_.index() != elements[0].v_.index())
      throw Error("sequence elements must have the same shape");
  return Value(Seq{std::move(elements)});
}

const Identifier& Value::as_agent() const {
  if (!is_agent()) throw Error("value is not an agent");
  return std::get<AgentRef>(v_).id;
}

const Identifier& Value::as_resource() const {
  if (!is_resource()) throw Error("value is not a resource");
  return std::get<ResourceRef>(v_).id;
}

const Quantity& Value::as_quantity() const {
  if (!is_quantity()) throw Error("value is not a quantity");
  return std::get<Quantity>(v_);
}

bool Value::as_boolean() const {
  if (!is_boolean()) throw Error("value is not a boolean");
  return std::get<bool>(v_);
}

const std::vector<Value>& Value::components() const {
  if (!is_tuple()) throw Error("value is not a tuple");
  return std::get<Tuple>(v_).items;
}

const std::vector<Value>& Value::elements() const {
  if (!is_sequence()) throw Error("value is not a sequence");
  return std::get<Seq>(v_).items;
}

std::string Value::to_string() const {
  if (is_agent()) return as_agent();
  if (is_resource()) return as_resource();
  if (is_quantity()) return as_quantity().to_string();
  if (is_boolean()) return as_boolean() ? "true" : "false";
  const bool tup = is_tuple();
  const auto& items = tup ? components() : elements();
  std::string out = tup ? "<" : "(";
  for (size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += items[i].to_string();
  }
  return out + (tup ? ">" : ")");
}

bool Value::operator==(const Value& rhs) const { return v_ == rhs.v_; }

bool inhabits(const Value& v, const TileType& t) {
  switch (t.kind()) {
    case TileType::Kind::atom:
      switch (t.atom()) {
        case TileType::Atom::agent: return v.is_agent();
        case TileType::Atom::resource: return v.is_resource();
        case TileType::Atom::quantity: return v.is_quantity();
        default: return v.is_boolean();
      }
    case TileType::Kind::tuple: {
      if (!v.is_tuple()) return false;
      const auto& items = v.components();
      const auto& comps = t.components();
      if (items.size() != comps.size()) return false;
      for (size_t i = 0; i < items.size(); ++i)
        if (!inhabits(items[i], comps[i])) return false;
      return true;
    }
    default:
      if (!v.is_sequence()) return false;
      for (const auto& e : v.elements())
        if (!inhabits(e, t.element())) return false;
      return true;
  }
}

std::optional<TileType> type_of(const Value& v) {
  if (v.is_agent()) return TileType::agent();
  if (v.is_resource()) return TileType::resource();
  if (v.is_quantity()) return TileType::quantity();
  if (v.is_boolean()) return TileType::boolean();
  if (v.is_tuple()) {
    std::vector<TileType> comps;
    for (const auto& c : v.components()) {
      auto t = type_of(c);
      if (!t) return std::nullopt;
      comps.push_back(std::move(*t));
    }
    return TileType::tuple(std::move(comps));
  }
  const auto& items = v.elements();
  if (items.empty()) return std::nullopt;  // element type is ambiguous
  auto first = type_of(items[0]);
  if (!first) return std::nullopt;
  for (size_t i = 1; i < items.size(); ++i) {
    auto t = type_of(items[i]);
    if (!t || !(*t == *first)) return std::nullopt;
  }
  return TileType::seq(std::move(*first));
}

}  // namespace fairkit::tiles
