#include "fairkit/textio.hpp"

namespace fairkit::textio {
namespace {

std::string escape_label(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string export_dot(const tiles::Pipeline& p) {
  auto checked = tiles::typecheck_full(p);
  if (auto* err = std::get_if<tiles::TypeError>(&checked))
    throw tiles::PipelineTypeError(*err);
  const tiles::Typing& typing = std::get<tiles::Typing>(checked);

  std::vector<int> id(static_cast<size_t>(p.size()), -1);
  for (size_t k = 0; k < typing.order.size(); ++k)
    id[static_cast<size_t>(typing.order[k])] = static_cast<int>(k);

  std::string out = "digraph pipeline {\n";
  for (size_t k = 0; k < typing.order.size(); ++k) {
    int i = typing.order[k];
    const auto& in = typing.input[static_cast<size_t>(i)];
    std::string label = p.node(i).tile.name + " : " + (in ? in->to_string() + " " : "") +
                        "-> " + typing.output[static_cast<size_t>(i)]->to_string();
    out += "  n" + std::to_string(k) + " [label=\"" + escape_label(label) + "\"];\n";
  }
  for (int i : typing.order)
    for (int a : p.node(i).args)
      out += "  n" + std::to_string(id[static_cast<size_t>(a)]) + " -> n" +
             std::to_string(id[static_cast<size_t>(i)]) + ";\n";
  out += "}\n";
  return out;
}

}  // namespace fairkit::textio
