#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "fairkit/core.hpp"

// Canonical example scenarios shared by the unit, property and acceptance
// tests. Every value here is part of the regression baseline.
namespace fixtures {

using namespace fairkit;

inline AttributeTable make_table(Identifier name, SubjectKind subject, ValueKind kind,
                                 std::vector<std::pair<Identifier, AttributeValue>> vals) {
  AttributeTable t{std::move(name), subject, kind, {}};
  for (auto& [k, v] : vals) t.values.emplace(std::move(k), std::move(v));
  return t;
}

inline FairnessScenario normalized(FairnessScenario s) {
  std::sort(s.agents.begin(), s.agents.end());
  std::sort(s.resources.begin(), s.resources.end());
  return s;
}

inline Outcome all_receive(const FairnessScenario& s, const Identifier& resource) {
  std::vector<std::pair<Identifier, Identifier>> pairs;
  for (const auto& a : s.agents) pairs.emplace_back(a, resource);
  return make_outcome(s, pairs);
}

// Six agents, three subsidies worth 10/20/30, needs 10/20/30 repeated.
inline FairnessScenario subsidy_scenario() {
  FairnessScenario s;
  s.agents = {"A", "B", "C", "D", "E", "F"};
  s.resources = {"R1", "R2", "R3"};
  s.resource_attributes["u"] =
      make_table("u", SubjectKind::resource, ValueKind::quantity,
                 {{"R1", Quantity(10)}, {"R2", Quantity(20)}, {"R3", Quantity(30)}});
  s.agent_attributes["q"] =
      make_table("q", SubjectKind::agent, ValueKind::quantity,
                 {{"A", Quantity(10)},
                  {"B", Quantity(20)},
                  {"C", Quantity(30)},
                  {"D", Quantity(10)},
                  {"E", Quantity(20)},
                  {"F", Quantity(30)}});
  return s;
}

inline Outcome subsidy_o1() { return all_receive(subsidy_scenario(), "R3"); }

inline Outcome subsidy_o2() {
  return make_outcome(subsidy_scenario(), {{"A", "R3"},
                                           {"B", "R2"},
                                           {"C", "R1"},
                                           {"D", "R3"},
                                           {"E", "R2"},
                                           {"F", "R1"}});
}

// Five hikers, one large and one small jacket; A and B prefer the small one.
inline FairnessScenario jackets_scenario() {
  FairnessScenario s;
  s.agents = {"A", "B", "C", "D", "E"};
  s.resources = {"L", "S"};
  s.agent_attributes["v"] =
      make_table("v", SubjectKind::agent, ValueKind::ranking,
                 {{"A", Ranking{"S", "L"}},
                  {"B", Ranking{"S", "L"}},
                  {"C", Ranking{"L", "S"}},
                  {"D", Ranking{"L", "S"}},
                  {"E", Ranking{"L", "S"}}});
  return s;
}

inline Outcome jackets_pre() {
  return make_outcome(jackets_scenario(),
                      {{"A", "S"}, {"B", "L"}, {"C", "S"}, {"D", "L"}, {"E", "L"}});
}

inline Outcome jackets_post() {
  return make_outcome(jackets_scenario(),
                      {{"A", "S"}, {"B", "S"}, {"C", "L"}, {"D", "L"}, {"E", "L"}});
}

// Loan applications: p marks the protected group, q is the essential
// qualification attribute.
inline FairnessScenario loan_scenario() {
  FairnessScenario s;
  s.agents = {"A", "B", "C", "D", "E", "F"};
  s.resources = {"L"};
  s.agent_attributes["p"] = make_table("p", SubjectKind::agent, ValueKind::boolean,
                                       {{"A", false},
                                        {"B", false},
                                        {"C", false},
                                        {"D", true},
                                        {"E", true},
                                        {"F", true}});
  s.agent_attributes["q"] = make_table("q", SubjectKind::agent, ValueKind::boolean,
                                       {{"A", false},
                                        {"B", true},
                                        {"C", true},
                                        {"D", false},
                                        {"E", true},
                                        {"F", true}});
  return s;
}

inline Outcome loan_approved() {
  return make_outcome(loan_scenario(), {{"A", "L"}, {"B", "L"}, {"E", "L"}, {"F", "L"}});
}

inline Outcome loan_all() { return all_receive(loan_scenario(), "L"); }

inline Outcome loan_unprotected_only() {
  return make_outcome(loan_scenario(), {{"A", "L"}, {"B", "L"}, {"C", "L"}});
}

inline Outcome loan_qualified_only() {
  return make_outcome(loan_scenario(), {{"B", "L"}, {"C", "L"}, {"E", "L"}, {"F", "L"}});
}

// Four hosts sharing mbit rates 0/10/20/50.
inline FairnessScenario bandwidth_scenario() {
  FairnessScenario s;
  s.agents = {"A", "B", "C", "D"};
  s.resources = {"M0", "M10", "M20", "M50"};
  s.resource_attributes["u"] = make_table("u", SubjectKind::resource, ValueKind::quantity,
                                          {{"M0", Quantity(0)},
                                           {"M10", Quantity(10)},
                                           {"M20", Quantity(20)},
                                           {"M50", Quantity(50)}});
  return s;
}

inline Outcome bandwidth_o1() { return all_receive(bandwidth_scenario(), "M20"); }

inline Outcome bandwidth_o2() {
  return make_outcome(bandwidth_scenario(),
                      {{"A", "M20"}, {"B", "M20"}, {"C", "M20"}, {"D", "M0"}});
}

inline Outcome bandwidth_o3() {
  return make_outcome(bandwidth_scenario(),
                      {{"A", "M0"}, {"B", "M0"}, {"C", "M0"}, {"D", "M10"}});
}

// Six recipients of grants worth 5..100.
inline FairnessScenario wealth_scenario() {
  FairnessScenario s;
  s.agents = {"A", "B", "C", "D", "E", "F"};
  s.resources = {"R5", "R10", "R15", "R20", "R50", "R100"};
  s.resource_attributes["u"] = make_table("u", SubjectKind::resource, ValueKind::quantity,
                                          {{"R5", Quantity(5)},
                                           {"R10", Quantity(10)},
                                           {"R15", Quantity(15)},
                                           {"R20", Quantity(20)},
                                           {"R50", Quantity(50)},
                                           {"R100", Quantity(100)}});
  return s;
}

inline Outcome wealth_o1() { return all_receive(wealth_scenario(), "R20"); }

inline Outcome wealth_o2() {
  return make_outcome(wealth_scenario(), {{"A", "R5"},
                                          {"B", "R10"},
                                          {"C", "R15"},
                                          {"D", "R20"},
                                          {"E", "R50"},
                                          {"F", "R100"}});
}

inline Outcome wealth_o3() {
  return make_outcome(wealth_scenario(), {{"A", "R5"}, {"B", "R10"}});
}

// Risk classification: res records the ground-truth class per agent, p the
// protected group. R_high is the adverse outcome.
inline FairnessScenario risk_scenario() {
  FairnessScenario s;
  s.agents = {"A", "B", "C", "D", "E", "F"};
  s.resources = {"R_low", "R_high"};
  s.resource_attributes["u"] =
      make_table("u", SubjectKind::resource, ValueKind::quantity,
                 {{"R_low", Quantity(0)}, {"R_high", Quantity(1)}});
  s.agent_attributes["p"] = make_table("p", SubjectKind::agent, ValueKind::boolean,
                                       {{"A", false},
                                        {"B", false},
                                        {"C", false},
                                        {"D", true},
                                        {"E", true},
                                        {"F", true}});
  s.agent_attributes["res"] = make_table("res", SubjectKind::agent, ValueKind::resource_ref,
                                         {{"A", Identifier("R_low")},
                                          {"B", Identifier("R_high")},
                                          {"C", Identifier("R_high")},
                                          {"D", Identifier("R_low")},
                                          {"E", Identifier("R_low")},
                                          {"F", Identifier("R_high")}});
  return s;
}

// Same scenario but with F's recorded class flipped to R_low, so classifying
// exactly the protected group as high-risk makes the false-positive flags
// coincide with the protected flags.
inline FairnessScenario risk_adjusted_scenario() {
  FairnessScenario s = risk_scenario();
  s.agent_attributes["res"].values["F"] = Identifier("R_low");
  return s;
}

inline Outcome risk_all_high() { return all_receive(risk_scenario(), "R_high"); }

inline Outcome risk_matching() {
  return make_outcome(risk_scenario(), {{"A", "R_low"},
                                        {"B", "R_high"},
                                        {"C", "R_high"},
                                        {"D", "R_low"},
                                        {"E", "R_low"},
                                        {"F", "R_high"}});
}

inline Outcome risk_protected_high() {
  return make_outcome(risk_scenario(), {{"A", "R_low"},
                                        {"B", "R_low"},
                                        {"C", "R_low"},
                                        {"D", "R_high"},
                                        {"E", "R_high"},
                                        {"F", "R_high"}});
}

}  // namespace fixtures
