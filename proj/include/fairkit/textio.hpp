#pragma once

#include "fairkit/core.hpp"
#include "fairkit/tiles.hpp"

namespace fairkit::textio {

// A syntax or schema violation in input text. Positions are 1-based; schema
// violations without a precise location report 1:1.
struct ParseError : Error {
  ParseError(const std::string& message, int line, int column);
  int line;
  int column;
};

// Parses a scenario document. Schema violations (shape, kinds, unknown
// fields) and structural invariant violations both throw ParseError.
FairnessScenario parse_scenario(std::string_view text);

// Like parse_scenario, but invariant violations are returned as diagnostics
// instead of thrown, so callers can report all of them.
FairnessScenario parse_scenario(std::string_view text, std::vector<std::string>& diagnostics);

// Canonical form: sorted keys, sorted identifier lists, quantities as
// integers, exact decimal strings, or "p/q" strings. parse . format = id.
std::string format_scenario(const FairnessScenario& s);

// Outcome documents reference a scenario for identifier checks; duplicate
// pairs are rejected.
Outcome parse_outcome(std::string_view text, const FairnessScenario& s);
std::string format_outcome(const Outcome& o);

// Parses a pipeline expression such as "all-equal(accumulates(all-agent))".
// N-ary application f(e1,...,en) with n >= 2 desugars to f(pair(e1,...,en))
// unless f is pair itself. The result is typechecked: syntax and unknown
// names throw ParseError, type errors throw tiles::PipelineTypeError with
// source positions.
tiles::Pipeline parse_pipeline(std::string_view text, const tiles::Registry& registry);

// Inverse of parse_pipeline for parser-shaped pipelines: singleton pair
// nodes introduced by desugaring are folded back into n-ary applications.
std::string pretty_print(const tiles::Pipeline& p);

// Graphviz rendering of a well-typed pipeline. Node ids follow a
// deterministic dependency-first order; labels carry the tile name and its
// input/output types. LF line endings, byte-for-byte reproducible.
std::string export_dot(const tiles::Pipeline& p);

}  // namespace fairkit::textio
