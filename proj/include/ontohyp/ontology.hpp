#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ontohyp {

/// A property name with a polarity. "not slow" is {name="slow", negated=true}.
struct Literal {
  std::string name;
  bool negated = false;

  auto operator<=>(const Literal&) const = default;
  bool operator==(const Literal&) const = default;
};

enum class AxiomKind : std::uint8_t {
  kProperty,    // every <concept> has <literal>
  kMembership,  // <member> is a <concept>
  kSubtype,     // every <concept> is a <concept>
  kAttribute,   // <member> has <literal>; only ever an observation or a candidate
};

/// One statement of the ontology fragment.
///
/// The layout is flat so that axioms are cheap to order, hash and serialize.
/// `subject` is a concept for property/subtype rules and a member name for
/// membership and attribute facts. `object` is a concept (membership, subtype)
/// or a property name (property, attribute). `negated` is meaningful only when
/// `object` is a property name.
///
/// The same type doubles as the prover's fact type: ground facts are
/// memberships and attributes, rule facts are subtype and property rules.
struct Axiom {
  AxiomKind kind = AxiomKind::kProperty;
  std::string subject;
  std::string object;
  bool negated = false;

  static Axiom property(std::string concept_name, Literal literal);
  static Axiom membership(std::string member, std::string concept_name);
  static Axiom subtype(std::string child, std::string parent);
  static Axiom attribute(std::string member, Literal literal);

  bool is_rule() const {
    return kind == AxiomKind::kProperty || kind == AxiomKind::kSubtype;
  }
  bool is_ground() const { return !is_rule(); }
  /// True when `object` names a property rather than a concept.
  bool has_literal() const {
    return kind == AxiomKind::kProperty || kind == AxiomKind::kAttribute;
  }
  Literal literal() const { return {object, negated}; }

  auto operator<=>(const Axiom&) const = default;
  bool operator==(const Axiom&) const = default;
};

std::string_view to_string(AxiomKind kind);

/// Compact text form, e.g. "subtype(rat, rodent)" or "attribute(Fae, ~slow)".
/// Stable; used by the on-disk formats.
std::string to_string(const Axiom& axiom);
/// Inverse of to_string(const Axiom&). Throws FormatError on malformed input.
Axiom axiom_from_string(std::string_view text);

std::string lowercase(std::string_view text);
/// "amy" -> "Amy", "AMY" -> "Amy".
std::string capitalize_name(std::string_view text);

/// Lowercases concept and property text and capitalizes member names.
/// Idempotent; polarity is preserved.
Axiom canonical(const Axiom& axiom);

/// One concept of the ontology tree together with the axioms attached to it.
struct ConceptNode {
  std::string concept_name;
  std::vector<Literal> properties;
  std::vector<std::string> members;
  int parent = -1;
  int depth = 0;  // root is depth 0
  std::vector<int> children;

  bool operator==(const ConceptNode&) const = default;
};

/// An ontology tree plus the set of axioms that are hidden from the reasoner.
///
/// Nodes are stored in level order; index 0 is the root. Hidden axioms may
/// mention names that are not attached to any node (a freshly minted
/// supertype, for example).
struct WorldModel {
  std::vector<ConceptNode> nodes;
  std::set<Axiom> hidden;
  int height = 0;

  const ConceptNode& root() const { return nodes.front(); }
  bool is_leaf(int node) const { return nodes[node].children.empty(); }
  /// Node index owning `concept_name`, or -1.
  int find_concept(std::string_view concept_name) const;

  /// Every axiom attached to the tree: subtype edges, property rules and
  /// memberships, in level order.
  std::vector<Axiom> tree_axioms() const;

  bool operator==(const WorldModel&) const = default;
};

/// Tree axioms together with every hidden axiom.
std::set<Axiom> complete_axioms(const WorldModel& wm);
/// Tree axioms that are not hidden.
std::set<Axiom> visible_axioms(const WorldModel& wm);

/// Checks the structural invariants: parent/child links agree, subtype graph
/// is acyclic, members are unique, no concept carries both polarities of one
/// property name. Throws InvalidWorldModel with a description otherwise.
void validate(const WorldModel& wm);

}  // namespace ontohyp
