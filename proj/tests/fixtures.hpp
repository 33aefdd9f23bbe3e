#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ontohyp/generator.hpp"
#include "ontohyp/ontology.hpp"

namespace ontohyp::testing {

inline Literal lit(const std::string& name, bool negated = false) { return {name, negated}; }

inline ConceptNode node(std::string name, int parent, int depth, std::vector<Literal> properties,
                        std::vector<std::string> members) {
  ConceptNode n;
  n.concept_name = std::move(name);
  n.parent = parent;
  n.depth = depth;
  n.properties = std::move(properties);
  n.members = std::move(members);
  return n;
}

// The mammal ontology: hairy, Fae and rodent -> mammal are hidden.
inline ReasoningExample mammal_example() {
  ReasoningExample ex;
  auto& wm = ex.world;
  wm.height = 3;
  wm.nodes = {
      node("mammal", -1, 0, {lit("warm-blooded"), lit("hairy")}, {"Sam", "Tom", "John"}),
      node("feline", 0, 1, {lit("slow", true)}, {}),
      node("canidae", 0, 1, {lit("muscular")}, {}),
      node("rodent", 0, 1, {lit("gnawing")}, {}),
      node("cat", 1, 2, {lit("cute")}, {"Alice"}),
      node("tiger", 1, 2, {lit("strong")}, {"Susan", "Fae"}),
      node("dog", 2, 2, {lit("smart")}, {"Bob"}),
      node("wolf", 2, 2, {lit("gregarious")}, {"Jessica"}),
      node("rat", 3, 2, {lit("adaptable")}, {"Jack", "Noah"}),
      node("squirrel", 3, 2, {lit("bushy")}, {"Oliver"}),
  };
  for (int i = 1; i < static_cast<int>(wm.nodes.size()); ++i)
    wm.nodes[wm.nodes[i].parent].children.push_back(i);
  wm.hidden = {Axiom::property("mammal", lit("hairy")), Axiom::membership("Fae", "tiger"),
               Axiom::subtype("rodent", "mammal")};
  ex.observations = {
      Axiom::attribute("Sam", lit("hairy")),   Axiom::attribute("Alice", lit("hairy")),
      Axiom::attribute("Bob", lit("hairy")),   Axiom::attribute("Fae", lit("strong")),
      Axiom::attribute("Fae", lit("slow", true)), Axiom::attribute("Fae", lit("warm-blooded")),
      Axiom::membership("Jack", "mammal"),     Axiom::membership("Noah", "mammal"),
      Axiom::membership("Oliver", "mammal"),
  };
  ex.truth.assign(wm.hidden.begin(), wm.hidden.end());
  ex.meta.height = 3;
  ex.meta.mode = Mode::kMulti;
  for (const auto& h : ex.truth)
    ex.meta.subtasks.push_back(h.kind == AxiomKind::kProperty     ? Subtask::kProperty
                               : h.kind == AxiomKind::kMembership ? Subtask::kMembership
                                                                  : Subtask::kSubtype);
  return ex;
}

// The five-hypothesis candidate that over-explains the mammal example.
inline std::vector<Axiom> redundant_candidate() {
  return {Axiom::membership("Fae", "tiger"), Axiom::property("mammal", lit("hairy")),
          Axiom::subtype("rat", "mammal"), Axiom::subtype("squirrel", "mammal"),
          Axiom::property("cat", lit("hairy"))};
}

// Semantic closure by graph reachability: a member belongs to every concept
// reachable from one of its concepts, and every concept inherits the
// literals of everything above it.
inline std::set<Axiom> semantic_closure(const std::vector<Axiom>& axioms) {
  std::map<std::string, std::set<std::string>> up;
  std::map<std::string, std::set<Literal>> has;
  std::map<std::string, std::set<std::string>> member_of;
  std::set<std::string> concepts;
  std::set<Axiom> out(axioms.begin(), axioms.end());
  for (const auto& a : axioms) {
    switch (a.kind) {
      case AxiomKind::kSubtype:
        up[a.subject].insert(a.object);
        concepts.insert(a.subject);
        concepts.insert(a.object);
        break;
      case AxiomKind::kProperty:
        has[a.subject].insert(a.literal());
        concepts.insert(a.subject);
        break;
      case AxiomKind::kMembership:
        member_of[a.subject].insert(a.object);
        concepts.insert(a.object);
        break;
      case AxiomKind::kAttribute:
        break;
    }
  }
  auto reach = [&](const std::string& from) {
    std::set<std::string> seen{from};
    std::vector<std::string> stack{from};
    while (!stack.empty()) {
      auto c = stack.back();
      stack.pop_back();
      for (const auto& p : up[c])
        if (seen.insert(p).second) stack.push_back(p);
    }
    return seen;
  };
  for (const auto& c : concepts) {
    for (const auto& d : reach(c)) {
      if (d != c) out.insert(Axiom::subtype(c, d));
      for (const auto& l : has[d]) out.insert(Axiom::property(c, l));
    }
  }
  for (const auto& [m, cs] : member_of)
    for (const auto& c : cs)
      for (const auto& d : reach(c)) {
        out.insert(Axiom::membership(m, d));
        for (const auto& l : has[d]) out.insert(Axiom::attribute(m, l));
      }
  return out;
}

inline bool entailed_by_oracle(const std::vector<Axiom>& premises,
                               const std::vector<Axiom>& observations) {
  const auto closure = semantic_closure(premises);
  return std::all_of(observations.begin(), observations.end(),
                     [&](const Axiom& o) { return closure.contains(o); });
}

inline std::vector<Axiom> concat(std::vector<Axiom> a, const std::vector<Axiom>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

inline GenConfig config(int height, Mode mode, std::uint64_t seed,
                        Subtask subtask = Subtask::kRandom) {
  GenConfig c;
  c.height = height;
  c.mode = mode;
  c.seed = seed;
  c.subtask = subtask;
  return c;
}

}  // namespace ontohyp::testing
