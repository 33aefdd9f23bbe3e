#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ontohyp/ontology.hpp"

namespace ontohyp {

// Facts share the Axiom representation: memberships and attributes are ground
// facts, subtype and property rules are rule facts. Two binary inference
// rules close the fragment:
//
//   modus ponens:      member(A, c), c -> X  |-  X(A)
//   implication chain: c1 -> c2,     c2 -> X |-  c1 -> X
//
// where X is a concept or a property literal.

enum class ProofRule : std::uint8_t { kAxiom, kModusPonens, kChain };

std::string_view to_string(ProofRule rule);

struct ProofTree {
  Axiom conclusion;
  ProofRule rule = ProofRule::kAxiom;
  /// Set on leaves that come from the hypothesis set rather than the axioms.
  bool hypothesis = false;
  std::vector<ProofTree> premises;  // empty for leaves, exactly two otherwise

  int depth = 1;
  int size = 1;
  int hypothesis_leaves = 0;

  static ProofTree leaf(Axiom fact, bool hypothesis);
  static ProofTree step(ProofRule rule, Axiom conclusion, ProofTree first,
                        ProofTree second);

  bool is_leaf() const { return premises.empty(); }
  /// Leaves in left-to-right order.
  std::vector<const ProofTree*> leaves() const;
};

/// Nested record form used for CoT rendering and debugging dumps.
nlohmann::json to_json(const ProofTree& tree);
ProofTree proof_from_json(const nlohmann::json& j);

/// One minimal proof per observation, in observation order.
struct ProofForest {
  std::vector<ProofTree> trees;
};

struct Contradiction {
  std::string subject;  // member or concept
  std::string property;
};

struct Closure {
  std::set<Axiom> facts;
  /// Subjects for which both polarities of a property were derived.
  std::vector<Contradiction> contradictions;
};

/// Least fixed point of the two inference rules over `axioms`.
Closure close(std::span<const Axiom> axioms);

/// Proof search over a fixed premise set.
///
/// Every derivable fact gets its minimal proof under the order
/// (hypothesis leaves, total nodes, summed hypothesis-leaf depth, serialized
/// premise sequence), so hypotheses enter as late as possible. Premises
/// that appear in both `axioms` and `hypotheses` are treated as axioms.
class Prover {
 public:
  Prover(std::span<const Axiom> axioms, std::span<const Axiom> hypotheses);

  const std::set<Axiom>& facts() const { return facts_; }
  bool entails(const Axiom& goal) const { return facts_.contains(goal); }
  bool is_hypothesis(const Axiom& a) const { return hypotheses_.contains(a); }

  std::optional<ProofTree> prove(const Axiom& goal) const;

  /// Premise sets of every valid proof of `goal`, reduced to the
  /// subset-minimal ones. Enumerated from explicit derivation paths,
  /// independently of the minimal-proof search. At most `limit` sets are
  /// produced.
  std::vector<std::set<Axiom>> supports(const Axiom& goal,
                                        std::size_t limit = 4096) const;

  std::vector<Contradiction> contradictions() const;

 private:
  struct Derivation {
    Axiom fact;
    ProofRule rule = ProofRule::kAxiom;
    bool hypothesis = false;
    int first = -1;
    int second = -1;
    int hypothesis_leaves = 0;
    int size = 1;
    int hypothesis_depth = 0;  // summed depth of the hypothesis leaves
    std::string key;  // serialized proof, the final tie-break
  };

  void search();
  ProofTree build(int id) const;

  std::set<Axiom> axioms_;
  std::set<Axiom> hypotheses_;  // minus anything already in axioms_
  std::vector<Derivation> best_;
  std::map<Axiom, int> index_;
  std::set<Axiom> facts_;
};

std::optional<ProofTree> prove(std::span<const Axiom> axioms,
                               std::span<const Axiom> hypotheses,
                               const Axiom& goal);

/// Minimal proofs for all observations, or nullopt if any is unprovable.
std::optional<ProofForest> explain(std::span<const Axiom> visible,
                                   std::span<const Axiom> hypotheses,
                                   std::span<const Axiom> observations);

/// Number of leaves equal to canonical(h) across the forest.
int premise_uses(const ProofForest& forest, const Axiom& h);

}  // namespace ontohyp
