#include <string>

#include "doctest.h"
#include "fairkit/measures.hpp"
#include "fairkit/textio.hpp"
#include "support/fixtures.hpp"

using namespace fairkit;
using namespace fairkit::textio;

namespace {

std::string err_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("scenario documents round-trip through the canonical form") {
  for (const auto& s :
       {fixtures::subsidy_scenario(), fixtures::jackets_scenario(), fixtures::loan_scenario(),
        fixtures::bandwidth_scenario(), fixtures::wealth_scenario(), fixtures::risk_scenario(),
        fixtures::risk_adjusted_scenario()}) {
    std::string text = format_scenario(s);
    CHECK(parse_scenario(text) == fixtures::normalized(s));
    CHECK(format_scenario(parse_scenario(text)) == text);
  }
}

TEST_CASE("canonical quantity forms") {
  FairnessScenario s;
  s.agents = {"A"};
  s.resources = {"R1", "R2", "R3"};
  s.resource_attributes["u"] = fixtures::make_table(
      "u", SubjectKind::resource, ValueKind::quantity,
      {{"R1", Quantity(1, 4)}, {"R2", Quantity(1, 3)}, {"R3", Quantity(7)}});

  std::string text = format_scenario(s);
  CHECK(text.find("\"R1\": \"0.25\"") != std::string::npos);
  CHECK(text.find("\"R2\": \"1/3\"") != std::string::npos);
  CHECK(text.find("\"R3\": 7") != std::string::npos);
  CHECK(text.find("\"version\": 1") != std::string::npos);
  CHECK(parse_scenario(text) == s);
}

TEST_CASE("numeric attribute values accept numbers and numeric strings") {
  auto parse_u = [](const std::string& value) {
    std::string text = R"({"agents":["A"],"resources":["R"],
      "resource_attributes":{"u":{"kind":"quantity","values":{"R":)" +
                       value + "}}}}";
    return quantity_at(parse_scenario(text).resource_attributes.at("u"), "R");
  };

  CHECK(parse_u("10") == Quantity(10));
  CHECK(parse_u("0.1") == Quantity(1, 10));
  CHECK(parse_u("-2.5") == Quantity(-5, 2));
  CHECK(parse_u("2.5e2") == Quantity(250));
  CHECK(parse_u("\"1/3\"") == Quantity(1, 3));
  CHECK(parse_u("\"0.125\"") == Quantity(1, 8));

  CHECK(err_of([&] { parse_u("\"abc\""); }) ==
        "attribute 'u': value for 'R' invalid number \"abc\" at 1:1");
  CHECK(err_of([&] { parse_u("null"); }) ==
        "attribute 'u': value for 'R' must be a number or numeric string at 1:1");
}

TEST_CASE("scenario schema violations") {
  CHECK(err_of([] { parse_scenario("[1,2]"); }) == "top-level value must be an object at 1:1");
  CHECK(err_of([] { parse_scenario(R"({"resources":["R"]})"); }) ==
        "missing field 'agents' at 1:1");
  CHECK(err_of([] { parse_scenario(R"({"agents":"A","resources":["R"]})"); }) ==
        "'agents' must be an array of strings at 1:1");
  CHECK(err_of([] { parse_scenario(R"({"agents":[1],"resources":["R"]})"); }) ==
        "'agents' must be an array of strings at 1:1");
  CHECK(err_of([] { parse_scenario(R"({"agents":["A"],"resources":["R"],"color":1})"); }) ==
        "unknown field 'color' at 1:1");
  CHECK(err_of([] { parse_scenario(R"({"version":2,"agents":["A"],"resources":["R"]})"); }) ==
        "unsupported version 2 at 1:1");
  CHECK(err_of([] { parse_scenario(R"({"version":1.5,"agents":["A"],"resources":["R"]})"); }) ==
        "unsupported version 1.5 at 1:1");

  const std::string head = R"({"agents":["A"],"resources":["R"],"agent_attributes":)";
  CHECK(err_of([&] { parse_scenario(head + R"({"q":[]}})"); }) ==
        "attribute 'q': must be an object at 1:1");
  CHECK(err_of([&] { parse_scenario(head + R"({"q":{"values":{}}}})"); }) ==
        "attribute 'q': missing field 'kind' at 1:1");
  CHECK(err_of([&] { parse_scenario(head + R"({"q":{"kind":"weird","values":{}}}})"); }) ==
        "attribute 'q': unknown kind 'weird' at 1:1");
  CHECK(err_of([&] { parse_scenario(head + R"({"q":{"kind":"quantity"}}})"); }) ==
        "attribute 'q': missing field 'values' at 1:1");
  CHECK(err_of([&] { parse_scenario(head + R"({"q":{"kind":"quantity","values":[]}}})"); }) ==
        "attribute 'q': 'values' must be an object at 1:1");
  CHECK(err_of([&] {
          parse_scenario(head + R"({"q":{"kind":"quantity","values":{},"x":1}}})");
        }) == "attribute 'q': unknown field 'x' at 1:1");
  CHECK(err_of([&] {
          parse_scenario(head + R"({"q":{"kind":"boolean","values":{"A":1}}}})");
        }) == "attribute 'q': value for 'A' must be a boolean at 1:1");
  CHECK(err_of([&] {
          parse_scenario(head + R"({"q":{"kind":"ranking","values":{"A":"R"}}}})");
        }) == "attribute 'q': value for 'A' must be an array of resource names at 1:1");
  CHECK(err_of([&] {
          parse_scenario(head + R"({"q":{"kind":"resource","values":{"A":1}}}})");
        }) == "attribute 'q': value for 'A' must be a resource name at 1:1");
}

TEST_CASE("json syntax errors carry positions") {
  try {
    parse_scenario("{\n  \"agents\": [}");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(std::string(e.what()).find("invalid JSON syntax") == 0);
  }
}

TEST_CASE("structural invariants: strict mode throws, diagnostic mode reports") {
  const std::string text = R"({"agents":["A","A"],"resources":["R","A"]})";

  CHECK(err_of([&] { parse_scenario(text); }) ==
        "duplicate identifier 'A'; identifier 'A' used as both agent and resource at 1:1");

  std::vector<std::string> diags;
  FairnessScenario s = parse_scenario(text, diags);
  REQUIRE(diags.size() == 2);
  CHECK(diags[0] == "duplicate identifier 'A'");
  CHECK(diags[1] == "identifier 'A' used as both agent and resource");
  CHECK(s.agents.size() == 2);
}

TEST_CASE("parsed identifier lists are sorted") {
  auto s = parse_scenario(R"({"agents":["C","A","B"],"resources":["R2","R1"]})");
  CHECK(s.agents == std::vector<Identifier>{"A", "B", "C"});
  CHECK(s.resources == std::vector<Identifier>{"R1", "R2"});
}

TEST_CASE("outcome documents") {
  auto s = fixtures::subsidy_scenario();

  SUBCASE("round-trips") {
    for (const auto& o : {fixtures::subsidy_o1(), fixtures::subsidy_o2(), Outcome{}}) {
      std::string text = format_outcome(o);
      CHECK(parse_outcome(text, s) == o);
      CHECK(format_outcome(parse_outcome(text, s)) == text);
    }
  }

  SUBCASE("accepts a version field") {
    CHECK(parse_outcome(R"({"version":1,"pairs":[["A","R3"]]})", s).contains("A", "R3"));
  }

  SUBCASE("schema violations") {
    CHECK(err_of([&] { parse_outcome("[]", s); }) == "top-level value must be an object at 1:1");
    CHECK(err_of([&] { parse_outcome("{}", s); }) == "missing field 'pairs' at 1:1");
    CHECK(err_of([&] { parse_outcome(R"({"pairs":3})", s); }) ==
          "'pairs' must be an array at 1:1");
    CHECK(err_of([&] { parse_outcome(R"({"pairs":[["A"]]})", s); }) ==
          "each pair must be [agent, resource] at 1:1");
    CHECK(err_of([&] { parse_outcome(R"({"pairs":[["A","R3",1]]})", s); }) ==
          "each pair must be [agent, resource] at 1:1");
    CHECK(err_of([&] { parse_outcome(R"({"pairs":[["Z","R3"]]})", s); }) ==
          "unknown agent 'Z' at 1:1");
    CHECK(err_of([&] { parse_outcome(R"({"pairs":[["A","R9"]]})", s); }) ==
          "unknown resource 'R9' at 1:1");
    CHECK(err_of([&] { parse_outcome(R"({"pairs":[["A","R3"],["A","R3"]]})", s); }) ==
          "duplicate pair (A, R3) at 1:1");
    CHECK(err_of([&] { parse_outcome(R"({"pairs":[],"notes":""})", s); }) ==
          "unknown field 'notes' at 1:1");
  }
}

TEST_CASE("pipeline parsing") {
  auto reg = tiles::Registry::with_builtins();

  SUBCASE("unary chains") {
    auto p = parse_pipeline("all-equal(accumulates(all-agent))", reg);
    CHECK(p.size() == 3);
    CHECK(tiles::find_sink(p) == 2);
    CHECK(p.node(2).tile.name == "all-equal");
    CHECK(p.node(0).span.line == 1);
    CHECK(p.node(0).span.column == 23);  // all-agent
  }

  SUBCASE("n-ary application desugars through pair") {
    auto p = parse_pipeline("all-at-least(accumulates(all-agent), needs(all-agent))", reg);
    CHECK(p.size() == 6);
    int root = *tiles::find_sink(p);
    CHECK(p.node(root).tile.name == "all-at-least");
    REQUIRE(p.node(root).args.size() == 1);
    CHECK(p.node(p.node(root).args[0]).tile.name == "pair");
  }

  SUBCASE("explicit pair is not desugared twice") {
    auto p = parse_pipeline("pair(all-agent, needs(all-agent))", reg);
    CHECK(p.size() == 4);
    int root = *tiles::find_sink(p);
    CHECK(p.node(root).tile.name == "pair");
    CHECK(p.node(root).args.size() == 2);
  }

  SUBCASE("syntax errors") {
    CHECK(err_of([&] { parse_pipeline("", reg); }) ==
          "expected tile name, found end of input at 1:1");
    CHECK(err_of([&] { parse_pipeline("all-equal(", reg); }) ==
          "expected tile name, found end of input at 1:11");
    CHECK(err_of([&] { parse_pipeline("all-equal(accumulates(all-agent)", reg); }) ==
          "expected ')' or ',', found end of input at 1:33");
    CHECK(err_of([&] { parse_pipeline("all-agent extra", reg); }) ==
          "unexpected trailing input 'extra' at 1:11");
    CHECK(err_of([&] { parse_pipeline("all-equal(,)", reg); }) ==
          "expected tile name, found ',' at 1:11");
    CHECK(err_of([&] { parse_pipeline("all_agent", reg); }) ==
          "unexpected character '_' at 1:4");
  }

  SUBCASE("unknown tiles carry their position") {
    CHECK(err_of([&] { parse_pipeline("bogus(all-agent)", reg); }) ==
          "unknown tile 'bogus' at 1:1");
    CHECK(err_of([&] { parse_pipeline("all-equal(\n  bogus(all-agent))", reg); }) ==
          "unknown tile 'bogus' at 2:3");
  }

  SUBCASE("type errors carry the node position") {
    try {
      parse_pipeline("all-equal(\n  all-agent)", reg);
      FAIL("expected PipelineTypeError");
    } catch (const tiles::PipelineTypeError& e) {
      CHECK(e.detail.kind == tiles::TypeErrorKind::mismatch);
      CHECK(e.detail.span.line == 1);
      CHECK(e.detail.span.column == 1);
      CHECK(std::string(e.what()) == "type mismatch: all-equal expects (m), got (a) at 1:1");
    }

    CHECK(err_of([&] { parse_pipeline("zip(all-agent)", reg); }) ==
          "type mismatch: zip expects <(_),(_)>, got (a) at 1:1");
  }
}

TEST_CASE("pretty printing") {
  auto reg = tiles::Registry::with_builtins();
  auto round = [&](const std::string& text) { return pretty_print(parse_pipeline(text, reg)); };

  CHECK(round("all-equal(accumulates(all-agent))") == "all-equal(accumulates(all-agent))");
  CHECK(round("all-at-least(accumulates(all-agent), needs(all-agent))") ==
        "all-at-least(accumulates(all-agent), needs(all-agent))");
  CHECK(round("pair(all-agent, accumulates(all-agent))") ==
        "pair(all-agent, accumulates(all-agent))");
  CHECK(round("proj-1(pair(all-agent, needs(all-agent)))") ==
        "proj-1(all-agent, needs(all-agent))");
  CHECK(round("zip(all-agent,accumulates(all-agent))") ==
        "zip(all-agent, accumulates(all-agent))");
  CHECK(round("all-equal( accumulates(\n  all-agent ) )") ==
        "all-equal(accumulates(all-agent))");

  SUBCASE("reparsing a rendering preserves structure") {
    const char* exprs[] = {
        "all-equal(accumulates(all-agent))",
        "all-at-least(accumulates(all-agent), needs(all-agent))",
        "proj-2(unzip(zip(all-agent, needs(all-agent))))",
        "pair(pair(all-agent, needs(all-agent)), accumulates(all-agent))",
    };
    for (const char* e : exprs) {
      auto p = parse_pipeline(e, reg);
      auto q = parse_pipeline(pretty_print(p), reg);
      CHECK(tiles::structurally_equal(p, q));
    }
  }

  SUBCASE("pipelines without a unique sink cannot be printed") {
    tiles::Pipeline p;
    p.add_node(*reg.find("all-agent"));
    p.add_node(*reg.find("all-agent"));
    CHECK_THROWS_WITH_AS(pretty_print(p), "pipeline has no unique sink", Error);
  }
}

TEST_CASE("dot export") {
  auto reg = tiles::Registry::with_builtins();

  SUBCASE("unary chain") {
    auto p = parse_pipeline("all-equal(accumulates(all-agent))", reg);
    CHECK(export_dot(p) ==
          "digraph pipeline {\n"
          "  n0 [label=\"all-agent : -> (a)\"];\n"
          "  n1 [label=\"accumulates : (a) -> (m)\"];\n"
          "  n2 [label=\"all-equal : (m) -> b\"];\n"
          "  n0 -> n1;\n"
          "  n1 -> n2;\n"
          "}\n");
  }

  SUBCASE("n-ary application shows the synthesized pair node") {
    auto p = parse_pipeline("all-at-least(accumulates(all-agent), needs(all-agent))", reg);
    CHECK(export_dot(p) ==
          "digraph pipeline {\n"
          "  n0 [label=\"all-agent : -> (a)\"];\n"
          "  n1 [label=\"accumulates : (a) -> (m)\"];\n"
          "  n2 [label=\"all-agent : -> (a)\"];\n"
          "  n3 [label=\"needs : (a) -> (m)\"];\n"
          "  n4 [label=\"pair : <(m),(m)> -> <(m),(m)>\"];\n"
          "  n5 [label=\"all-at-least : <(m),(m)> -> b\"];\n"
          "  n0 -> n1;\n"
          "  n2 -> n3;\n"
          "  n1 -> n4;\n"
          "  n3 -> n4;\n"
          "  n4 -> n5;\n"
          "}\n");
  }

  SUBCASE("a single constant is one node and no edges") {
    tiles::Pipeline p;
    p.add_node(tiles::constant_tile(tiles::Value::quantity(Quantity(2, 3))));
    CHECK(export_dot(p) ==
          "digraph pipeline {\n"
          "  n0 [label=\"const[2/3] : -> m\"];\n"
          "}\n");
  }

  SUBCASE("export is deterministic") {
    auto p = parse_pipeline("all-at-least(accumulates(all-agent), needs(all-agent))", reg);
    CHECK(export_dot(p) == export_dot(p));
  }

  SUBCASE("ill-typed pipelines are rejected") {
    tiles::Pipeline p;
    int agents = p.add_node(*reg.find("all-agent"));
    p.add_node(*reg.find("all-equal"), {agents});
    CHECK_THROWS_AS(export_dot(p), tiles::PipelineTypeError);
  }
}
