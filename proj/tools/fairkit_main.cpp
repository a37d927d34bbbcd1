#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "fairkit/measures.hpp"
#include "fairkit/textio.hpp"
#include "json.hpp"

namespace {

using nlohmann::json;
using namespace fairkit;

struct IoError : Error {
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read '" + path + "'");
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IoError("cannot write '" + path + "'");
}

bool use_color() {
  return isatty(fileno(stderr)) && std::getenv("NO_COLOR") == nullptr;
}

void print_error(const std::string& message) {
  if (use_color())
    std::cerr << "\033[31merror:\033[0m " << message << "\n";
  else
    std::cerr << "error: " << message << "\n";
}

void print_warnings(const std::vector<std::string>& diagnostics) {
  for (const auto& d : diagnostics) std::cerr << "warning: " << d << "\n";
}

struct Options {
  std::string format = "text";
  std::string scenario_path;
  std::string outcome_path;
  std::string measure;
  std::string expr;
  std::string dot_path;
  std::vector<std::string> outcome_paths;
  std::vector<std::string> measures;

  std::string utility = "u";
  std::string need = "q";
  std::string ranking = "v";
  std::string protected_name = "p";
  std::string essential = "q";
  std::string ground_truth = "res";
  std::string epsilon = "1/100";
  std::string target;
  std::string high;
};

void add_binding_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--utility", o.utility, "Utility attribute name (default u)");
  cmd->add_option("--need", o.need, "Need attribute name (default q)");
  cmd->add_option("--ranking", o.ranking, "Ranking attribute name (default v)");
  cmd->add_option("--protected", o.protected_name, "Protected attribute name (default p)");
  cmd->add_option("--essential", o.essential, "Essential attribute name (default q)");
  cmd->add_option("--ground-truth", o.ground_truth, "Ground-truth attribute name (default res)");
  cmd->add_option("--epsilon", o.epsilon, "Similarity tolerance (default 1/100)")
      ->envname("FAIRKIT_EPSILON");
  cmd->add_option("--target", o.target, "Target resource for group/individual fairness");
  cmd->add_option("--high", o.high, "High resource for equalized odds");
}

tiles::Bindings to_bindings(const Options& o) {
  tiles::Bindings b;
  b.utility_name = o.utility;
  b.need_name = o.need;
  b.ranking_name = o.ranking;
  b.protected_name = o.protected_name;
  b.essential_name = o.essential;
  b.ground_truth_name = o.ground_truth;
  b.epsilon = Quantity::from_string(o.epsilon);
  if (!o.target.empty()) b.target_resource = o.target;
  if (!o.high.empty()) b.high_resource = o.high;
  return b;
}

const Identifier& require_binding(const std::optional<Identifier>& v, const char* flag) {
  if (!v) throw Error(std::string("missing required binding ") + flag);
  return *v;
}

struct MeasureInfo {
  std::string name;
  std::string description;
  std::vector<std::string> bindings;
  std::function<MeasureResult(const FairnessScenario&, const Outcome&, const tiles::Bindings&)>
      run;
};

const std::vector<MeasureInfo>& measure_table() {
  static const std::vector<MeasureInfo> table = {
      {"equality", "1 iff all agents accumulate the same total utility", {"utility"},
       [](const FairnessScenario& s, const Outcome& o, const tiles::Bindings& b) {
         return measures::equality(s, o, b.utility_name);
       }},
      {"equity", "1 iff every agent accumulates at least its need", {"utility", "need"},
       [](const FairnessScenario& s, const Outcome& o, const tiles::Bindings& b) {
         return measures::equity(s, o, b.utility_name, b.need_name);
       }},
      {"strict-equity", "1 iff every agent accumulates exactly its need", {"utility", "need"},
       [](const FairnessScenario& s, const Outcome& o, const tiles::Bindings& b) {
         return measures::strict_equity(s, o, b.utility_name, b.need_name);
       }},
      {"weak-envy-freeness",
       "1 iff no agent prefers a resource held only by others to all it holds", {"ranking"},
       [](const FairnessScenario& s, const Outcome& o, const tiles::Bindings& b) {
         return measures::weak_envy_freeness(s, o, b.ranking_name);
       }},
      {"group-fairness",
       "1 iff protected and unprotected receipt rates are epsilon-similar",
       {"protected", "target", "epsilon"},
       [](const FairnessScenario& s, const Outcome& o, const tiles::Bindings& b) {
         return measures::group_fairness(s, o, b.protected_name,
                                         require_binding(b.target_resource, "--target"),
                                         measures::Epsilon(b.epsilon));
       }},
      {"individual-fairness",
       "1 iff receipt of the target is uniform within each essential-attribute class",
       {"essential", "target"},
       [](const FairnessScenario& s, const Outcome& o, const tiles::Bindings& b) {
         return measures::individual_fairness(s, o, b.essential_name,
                                              require_binding(b.target_resource, "--target"));
       }},
      {"jains-index", "evenness score (sum x)^2 / (n * sum x^2)", {"utility"},
       [](const FairnessScenario& s, const Outcome& o, const tiles::Bindings& b) {
         return measures::jains_index(s, o, b.utility_name);
       }},
      {"gini-complement", "1 minus the Gini inequality index", {"utility"},
       [](const FairnessScenario& s, const Outcome& o, const tiles::Bindings& b) {
         return measures::gini_complement(s, o, b.utility_name);
       }},
      {"equalized-odds",
       "absolute correlation between false high flags and the protected attribute",
       {"protected", "ground-truth", "high"},
       [](const FairnessScenario& s, const Outcome& o, const tiles::Bindings& b) {
         return measures::equalized_odds(s, o, b.protected_name, b.ground_truth_name,
                                         require_binding(b.high_resource, "--high"));
       }},
  };
  return table;
}

const MeasureInfo& find_measure(const std::string& name) {
  std::string canonical = name == "jain" ? "jains-index" : name;
  for (const auto& m : measure_table())
    if (m.name == canonical) return m;
  throw Error("unknown measure '" + name + "' (see list-measures)");
}

std::string render_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string render_text(const MeasureResult& r) {
  return r.kind() == ResultKind::exact ? r.exact_value().to_decimal_string(12)
                                       : render_double(r.value());
}

json render_json(const MeasureResult& r) {
  json j;
  j["value"] = r.value();
  if (r.kind() == ResultKind::exact) j["exact"] = r.exact_value().to_string();
  j["diagnostics"] = r.diagnostics();
  return j;
}

int run_check(const Options& o) {
  std::vector<std::string> diagnostics;
  textio::parse_scenario(read_file(o.scenario_path), diagnostics);
  if (o.format == "json") {
    json j;
    j["valid"] = diagnostics.empty();
    j["diagnostics"] = diagnostics;
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& d : diagnostics) std::cout << d << "\n";
  }
  return diagnostics.empty() ? 0 : 2;
}

int run_eval(const Options& o) {
  FairnessScenario s = textio::parse_scenario(read_file(o.scenario_path));
  Outcome out = textio::parse_outcome(read_file(o.outcome_path), s);
  tiles::Bindings b = to_bindings(o);
  const MeasureInfo& m = find_measure(o.measure);
  MeasureResult r = m.run(s, out, b);
  print_warnings(r.diagnostics());
  if (o.format == "json") {
    json j = render_json(r);
    j["measure"] = m.name;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << render_text(r) << "\n";
  }
  return 0;
}

int run_pipeline(const Options& o) {
  FairnessScenario s = textio::parse_scenario(read_file(o.scenario_path));
  Outcome out = textio::parse_outcome(read_file(o.outcome_path), s);
  tiles::Registry registry = tiles::Registry::with_builtins();
  tiles::Pipeline p = textio::parse_pipeline(o.expr, registry);
  if (!o.dot_path.empty()) write_file(o.dot_path, textio::export_dot(p));

  tiles::EvalContext ctx(s, out, to_bindings(o));
  tiles::Value v = tiles::evaluate(p, ctx);
  auto checked = tiles::typecheck(p);
  std::string type = std::get<tiles::TileType>(checked).to_string();

  if (o.format == "json") {
    json j;
    j["type"] = type;
    if (v.is_boolean()) {
      j["value"] = v.as_boolean();
    } else if (v.is_quantity()) {
      j["value"] = v.as_quantity().as_double();
      j["exact"] = v.as_quantity().to_string();
    } else {
      j["value"] = v.to_string();
    }
    std::cout << j.dump(2) << "\n";
  } else {
    if (v.is_boolean())
      std::cout << (v.as_boolean() ? "true" : "false") << "\n";
    else if (v.is_quantity())
      std::cout << v.as_quantity().to_decimal_string(12) << "\n";
    else
      std::cout << v.to_string() << "\n";
  }
  return 0;
}

int classify(const std::exception_ptr& ep);

int run_compare(const Options& o) {
  FairnessScenario s = textio::parse_scenario(read_file(o.scenario_path));
  tiles::Bindings b = to_bindings(o);

  std::vector<const MeasureInfo*> cols;
  for (const auto& name : o.measures) cols.push_back(&find_measure(name));

  std::vector<Outcome> outcomes;
  for (const auto& path : o.outcome_paths)
    outcomes.push_back(textio::parse_outcome(read_file(path), s));

  int exit_code = 0;
  std::vector<std::vector<std::string>> cells;  // text per row/col
  json rows = json::array();
  for (size_t i = 0; i < outcomes.size(); ++i) {
    std::vector<std::string> row;
    json jrow;
    jrow["outcome"] = o.outcome_paths[i];
    json values = json::object();
    for (const auto* m : cols) {
      try {
        MeasureResult r = m->run(s, outcomes[i], b);
        print_warnings(r.diagnostics());
        row.push_back(render_text(r));
        values[m->name] = render_json(r);
      } catch (const std::exception& e) {
        print_error(o.outcome_paths[i] + ", " + m->name + ": " + e.what());
        row.push_back("ERR");
        values[m->name] = json{{"error", e.what()}};
        if (exit_code == 0) exit_code = classify(std::current_exception());
      }
    }
    cells.push_back(std::move(row));
    jrow["values"] = std::move(values);
    rows.push_back(std::move(jrow));
  }

  if (o.format == "json") {
    json j;
    j["scenario"] = o.scenario_path;
    json names = json::array();
    for (const auto* m : cols) names.push_back(m->name);
    j["measures"] = names;
    j["rows"] = rows;
    std::cout << j.dump(2) << "\n";
    return exit_code;
  }

  std::vector<std::string> header{"outcome"};
  for (const auto* m : cols) header.push_back(m->name);
  std::vector<size_t> width(header.size());
  for (size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (size_t i = 0; i < cells.size(); ++i) {
    width[0] = std::max(width[0], o.outcome_paths[i].size());
    for (size_t c = 0; c < cells[i].size(); ++c)
      width[c + 1] = std::max(width[c + 1], cells[i][c].size());
  }
  auto print_row = [&](const std::vector<std::string>& row) {
    std::string line;
    for (size_t c = 0; c < row.size(); ++c) {
      if (c) line += "  ";
      line += row[c];
      if (c + 1 < row.size()) line.append(width[c] - row[c].size(), ' ');
    }
    std::cout << line << "\n";
  };
  print_row(header);
  for (size_t i = 0; i < cells.size(); ++i) {
    std::vector<std::string> row{o.outcome_paths[i]};
    row.insert(row.end(), cells[i].begin(), cells[i].end());
    print_row(row);
  }
  return exit_code;
}

int run_list_measures(const Options& o) {
  if (o.format == "json") {
    json j = json::array();
    for (const auto& m : measure_table())
      j.push_back({{"name", m.name}, {"description", m.description}, {"bindings", m.bindings}});
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  size_t width = 0;
  for (const auto& m : measure_table()) width = std::max(width, m.name.size());
  for (const auto& m : measure_table()) {
    std::string bindings;
    for (const auto& b : m.bindings) bindings += (bindings.empty() ? "" : ", ") + b;
    std::cout << m.name << std::string(width - m.name.size() + 2, ' ') << m.description
              << " (bindings: " << bindings << ")\n";
  }
  return 0;
}

int classify(const std::exception_ptr& ep) {
  try {
    std::rethrow_exception(ep);
  } catch (const IoError&) {
    return 1;
  } catch (const textio::ParseError&) {
    return 1;
  } catch (const tiles::PipelineTypeError&) {
    return 2;
  } catch (const DegenerateInputError&) {
    return 3;
  } catch (const OutOfRangeError&) {
    return 3;
  } catch (const std::exception&) {
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fairkit: fairness scenarios, measures, and tile pipelines"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "Output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));

  CLI::App* check = app.add_subcommand("check", "Validate a scenario file");
  check->add_option("scenario", o.scenario_path, "Scenario JSON file")->required();

  CLI::App* eval = app.add_subcommand("eval", "Evaluate a fairness measure");
  eval->add_option("--scenario", o.scenario_path, "Scenario JSON file")->required();
  eval->add_option("--outcome", o.outcome_path, "Outcome JSON file")->required();
  eval->add_option("--measure", o.measure, "Measure name (see list-measures)")->required();
  add_binding_flags(eval, o);

  CLI::App* pipeline = app.add_subcommand("pipeline", "Typecheck and evaluate a pipeline");
  pipeline->add_option("--scenario", o.scenario_path, "Scenario JSON file")->required();
  pipeline->add_option("--outcome", o.outcome_path, "Outcome JSON file")->required();
  pipeline->add_option("--expr", o.expr, "Pipeline expression")->required();
  pipeline->add_option("--dot", o.dot_path, "Write a Graphviz DOT rendering to this path");
  add_binding_flags(pipeline, o);

  CLI::App* compare = app.add_subcommand("compare", "Evaluate measures across outcomes");
  compare->add_option("--scenario", o.scenario_path, "Scenario JSON file")->required();
  compare->add_option("--outcomes", o.outcome_paths, "Outcome JSON files")->required();
  compare->add_option("--measures", o.measures, "Comma-separated measure names")
      ->required()
      ->delimiter(',');
  add_binding_flags(compare, o);

  app.add_subcommand("list-measures", "List available measures");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error(e.what());
    return 2;
  }

  try {
    if (app.got_subcommand(check)) return run_check(o);
    if (app.got_subcommand(eval)) return run_eval(o);
    if (app.got_subcommand(pipeline)) return run_pipeline(o);
    if (app.got_subcommand(compare)) return run_compare(o);
    return run_list_measures(o);
  } catch (const std::exception& e) {
    print_error(e.what());
    return classify(std::current_exception());
  }
}
