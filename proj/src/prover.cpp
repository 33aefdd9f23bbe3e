#include "ontohyp/prover.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <tuple>

#include "ontohyp/error.hpp"

namespace ontohyp {

std::string_view to_string(ProofRule rule) {
  switch (rule) {
    case ProofRule::kAxiom:
      return "axiom";
    case ProofRule::kModusPonens:
      return "modus-ponens";
    case ProofRule::kChain:
      return "implication-chain";
  }
  return "?";
}

ProofTree ProofTree::leaf(Axiom fact, bool hypothesis) {
  ProofTree t;
  t.conclusion = std::move(fact);
  t.hypothesis = hypothesis;
  t.hypothesis_leaves = hypothesis ? 1 : 0;
  return t;
}

ProofTree ProofTree::step(ProofRule rule, Axiom conclusion, ProofTree first,
                          ProofTree second) {
  ProofTree t;
  t.conclusion = std::move(conclusion);
  t.rule = rule;
  t.depth = 1 + std::max(first.depth, second.depth);
  t.size = 1 + first.size + second.size;
  t.hypothesis_leaves = first.hypothesis_leaves + second.hypothesis_leaves;
  t.premises.push_back(std::move(first));
  t.premises.push_back(std::move(second));
  return t;
}

std::vector<const ProofTree*> ProofTree::leaves() const {
  std::vector<const ProofTree*> out;
  std::function<void(const ProofTree&)> walk = [&](const ProofTree& t) {
    if (t.is_leaf()) {
      out.push_back(&t);
      return;
    }
    for (const auto& p : t.premises) walk(p);
  };
  walk(*this);
  return out;
}

nlohmann::json to_json(const ProofTree& tree) {
  nlohmann::json j;
  j["conclusion"] = to_string(tree.conclusion);
  j["rule"] = std::string(to_string(tree.rule));
  if (tree.is_leaf()) {
    j["hypothesis"] = tree.hypothesis;
  } else {
    j["premises"] = nlohmann::json::array();
    for (const auto& p : tree.premises) j["premises"].push_back(to_json(p));
  }
  return j;
}

ProofTree proof_from_json(const nlohmann::json& j) {
  auto conclusion = axiom_from_string(j.at("conclusion").get<std::string>());
  const auto rule = j.at("rule").get<std::string>();
  if (rule == "axiom")
    return ProofTree::leaf(std::move(conclusion),
                           j.value("hypothesis", false));
  const auto& ps = j.at("premises");
  if (ps.size() != 2) throw FormatError("proof step needs two premises");
  const ProofRule r =
      rule == "modus-ponens" ? ProofRule::kModusPonens : ProofRule::kChain;
  if (rule != "modus-ponens" && rule != "implication-chain")
    throw FormatError("unknown proof rule " + rule);
  return ProofTree::step(r, std::move(conclusion), proof_from_json(ps[0]),
                         proof_from_json(ps[1]));
}

namespace {

// Conclusion of modus ponens on member(A, c) and a rule whose subject is c.
Axiom apply_rule(const std::string& member, const Axiom& rule) {
  if (rule.kind == AxiomKind::kSubtype)
    return Axiom::membership(member, rule.object);
  return Axiom::attribute(member, rule.literal());
}

// Conclusion of chaining subtype(c1, c2) with a rule whose subject is c2.
Axiom chain_rule(const Axiom& first, const Axiom& second) {
  if (second.kind == AxiomKind::kSubtype)
    return Axiom::subtype(first.subject, second.object);
  return Axiom::property(first.subject, second.literal());
}

}  // namespace

Prover::Prover(std::span<const Axiom> axioms,
               std::span<const Axiom> hypotheses) {
  for (const auto& a : axioms) axioms_.insert(a);
  for (const auto& h : hypotheses)
    if (!axioms_.contains(h)) hypotheses_.insert(h);
  search();
}

void Prover::search() {
  using Key = std::tuple<int, int, int, std::string>;
  using Item = std::pair<Key, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> agenda;
  std::vector<bool> final;

  const auto key_of = [](const Derivation& d) {
    return Key{d.hypothesis_leaves, d.size, d.hypothesis_depth, d.key};
  };

  const auto offer = [&](Derivation d) {
    auto [it, inserted] =
        index_.emplace(d.fact, static_cast<int>(best_.size()));
    if (inserted) {
      best_.push_back(d);
      final.push_back(false);
    } else {
      const int id = it->second;
      if (final[id] || key_of(best_[id]) <= key_of(d)) return;
      best_[id] = d;
    }
    agenda.emplace(key_of(d), it->second);
  };

  const auto leaf = [](const Axiom& a, bool hyp) {
    Derivation d;
    d.fact = a;
    d.hypothesis = hyp;
    d.hypothesis_leaves = hyp ? 1 : 0;
    d.key = to_string(a);
    if (hyp) d.key += '!';
    return d;
  };
  for (const auto& a : axioms_) offer(leaf(a, false));
  for (const auto& h : hypotheses_) offer(leaf(h, true));

  std::map<std::string, std::vector<int>> members_of;     // concept -> ids
  std::map<std::string, std::vector<int>> rules_from;     // concept -> ids
  std::map<std::string, std::vector<int>> subtypes_into;  // concept -> ids

  const auto combine = [&](ProofRule rule, Axiom conclusion, int first,
                           int second) {
    if (conclusion.kind == AxiomKind::kSubtype &&
        conclusion.subject == conclusion.object)
      return;
    const auto& a = best_[first];
    const auto& b = best_[second];
    Derivation d;
    d.fact = std::move(conclusion);
    d.rule = rule;
    d.first = first;
    d.second = second;
    d.hypothesis_leaves = a.hypothesis_leaves + b.hypothesis_leaves;
    d.size = 1 + a.size + b.size;
    d.hypothesis_depth = a.hypothesis_depth + a.hypothesis_leaves +
                         b.hypothesis_depth + b.hypothesis_leaves;
    d.key = to_string(d.fact) + '{' + a.key + ';' + b.key + '}';
    offer(std::move(d));
  };

  while (!agenda.empty()) {
    auto [key, id] = agenda.top();
    agenda.pop();
    if (final[id] || key != key_of(best_[id])) continue;
    final[id] = true;
    const Axiom fact = best_[id].fact;
    facts_.insert(fact);

    switch (fact.kind) {
      case AxiomKind::kMembership:
        members_of[fact.object].push_back(id);
        for (int r : rules_from[fact.object])
          combine(ProofRule::kModusPonens,
                  apply_rule(fact.subject, best_[r].fact), id, r);
        break;
      case AxiomKind::kSubtype:
      case AxiomKind::kProperty: {
        rules_from[fact.subject].push_back(id);
        for (int m : members_of[fact.subject])
          combine(ProofRule::kModusPonens,
                  apply_rule(best_[m].fact.subject, fact), m, id);
        if (fact.kind == AxiomKind::kSubtype) {
          subtypes_into[fact.object].push_back(id);
          for (int r : rules_from[fact.object])
            combine(ProofRule::kChain, chain_rule(fact, best_[r].fact), id, r);
        }
        for (int s : subtypes_into[fact.subject])
          combine(ProofRule::kChain, chain_rule(best_[s].fact, fact), s, id);
        break;
      }
      case AxiomKind::kAttribute:
        break;
    }
  }
}

ProofTree Prover::build(int id) const {
  const auto& d = best_[id];
  if (d.rule == ProofRule::kAxiom) return ProofTree::leaf(d.fact, d.hypothesis);
  return ProofTree::step(d.rule, d.fact, build(d.first), build(d.second));
}

std::optional<ProofTree> Prover::prove(const Axiom& goal) const {
  if (!facts_.contains(goal)) return std::nullopt;
  return build(index_.at(goal));
}

std::vector<std::set<Axiom>> Prover::supports(const Axiom& goal,
                                              std::size_t limit) const {
  std::vector<Axiom> inputs(axioms_.begin(), axioms_.end());
  inputs.insert(inputs.end(), hypotheses_.begin(), hypotheses_.end());

  std::map<std::string, std::vector<const Axiom*>> rules_by_subject;
  std::vector<const Axiom*> bases;  // memberships of the goal's subject
  for (const auto& a : inputs) {
    if (a.is_rule()) rules_by_subject[a.subject].push_back(&a);
    if (goal.is_ground() && a.kind == AxiomKind::kMembership &&
        a.subject == goal.subject)
      bases.push_back(&a);
  }

  // A derivation of X(A) or c -> X is a base fact followed by a simple path
  // of rules whose last edge ends at X.
  const bool want_literal = goal.has_literal();
  const auto reaches_goal = [&](const Axiom& rule) {
    if (rule.object != goal.object) return false;
    if (want_literal)
      return rule.kind == AxiomKind::kProperty && rule.negated == goal.negated;
    return rule.kind == AxiomKind::kSubtype;
  };

  std::vector<std::set<Axiom>> found;
  std::vector<const Axiom*> path;
  std::set<std::string> visited;
  std::function<void(const std::string&)> walk = [&](const std::string& at) {
    if (found.size() >= limit) return;
    auto it = rules_by_subject.find(at);
    if (it == rules_by_subject.end()) return;
    for (const Axiom* rule : it->second) {
      if (reaches_goal(*rule)) {
        std::set<Axiom> s;
        for (const Axiom* p : path) s.insert(*p);
        s.insert(*rule);
        found.push_back(std::move(s));
      }
      if (rule->kind == AxiomKind::kSubtype && !visited.contains(rule->object)) {
        visited.insert(rule->object);
        path.push_back(rule);
        walk(rule->object);
        path.pop_back();
        visited.erase(rule->object);
      }
    }
  };

  if (axioms_.contains(goal) || hypotheses_.contains(goal))
    found.push_back({goal});
  if (goal.is_ground()) {
    for (const Axiom* base : bases) {
      path = {base};
      visited = {base->object};
      walk(base->object);
    }
  } else {
    path.clear();
    visited = {goal.subject};
    walk(goal.subject);
  }

  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  std::vector<std::set<Axiom>> minimal;
  for (const auto& s : found) {
    const bool dominated = std::any_of(
        found.begin(), found.end(), [&](const std::set<Axiom>& other) {
          return other.size() < s.size() &&
                 std::includes(s.begin(), s.end(), other.begin(), other.end());
        });
    if (!dominated) minimal.push_back(s);
  }
  return minimal;
}

std::vector<Contradiction> Prover::contradictions() const {
  std::vector<Contradiction> out;
  for (const auto& f : facts_) {
    if (!f.has_literal() || f.negated) continue;
    Axiom flipped = f;
    flipped.negated = true;
    if (facts_.contains(flipped)) out.push_back({f.subject, f.object});
  }
  return out;
}

Closure close(std::span<const Axiom> axioms) {
  Prover prover(axioms, {});
  return {prover.facts(), prover.contradictions()};
}

std::optional<ProofTree> prove(std::span<const Axiom> axioms,
                               std::span<const Axiom> hypotheses,
                               const Axiom& goal) {
  return Prover(axioms, hypotheses).prove(goal);
}

std::optional<ProofForest> explain(std::span<const Axiom> visible,
                                   std::span<const Axiom> hypotheses,
                                   std::span<const Axiom> observations) {
  const Prover prover(visible, hypotheses);
  ProofForest forest;
  for (const auto& o : observations) {
    auto tree = prover.prove(o);
    if (!tree) return std::nullopt;
    forest.trees.push_back(std::move(*tree));
  }
  return forest;
}

int premise_uses(const ProofForest& forest, const Axiom& h) {
  const Axiom target = canonical(h);
  int n = 0;
  for (const auto& tree : forest.trees)
    for (const ProofTree* leaf : tree.leaves())
      if (leaf->hypothesis && leaf->conclusion == target) ++n;
  return n;
}

}  // namespace ontohyp
