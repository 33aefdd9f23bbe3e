#include "ontohyp/ontology.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "ontohyp/error.hpp"

namespace ontohyp {

Axiom Axiom::property(std::string concept_name, Literal literal) {
  return {AxiomKind::kProperty, std::move(concept_name), std::move(literal.name),
          literal.negated};
}

Axiom Axiom::membership(std::string member, std::string concept_name) {
  return {AxiomKind::kMembership, std::move(member), std::move(concept_name),
          false};
}

Axiom Axiom::subtype(std::string child, std::string parent) {
  return {AxiomKind::kSubtype, std::move(child), std::move(parent), false};
}

Axiom Axiom::attribute(std::string member, Literal literal) {
  return {AxiomKind::kAttribute, std::move(member), std::move(literal.name),
          literal.negated};
}

std::string_view to_string(AxiomKind kind) {
  switch (kind) {
    case AxiomKind::kProperty:
      return "property";
    case AxiomKind::kMembership:
      return "member";
    case AxiomKind::kSubtype:
      return "subtype";
    case AxiomKind::kAttribute:
      return "attribute";
  }
  return "?";
}

std::string to_string(const Axiom& axiom) {
  std::string out(to_string(axiom.kind));
  out += '(';
  out += axiom.subject;
  out += ", ";
  if (axiom.has_literal() && axiom.negated) out += '~';
  out += axiom.object;
  out += ')';
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

}  // namespace

Axiom axiom_from_string(std::string_view text) {
  const auto bad = [&] {
    return FormatError("malformed axiom: '" + std::string(text) + "'");
  };
  const auto open = text.find('(');
  const auto comma = text.find(',');
  const auto close = text.rfind(')');
  if (open == std::string_view::npos || comma == std::string_view::npos ||
      close == std::string_view::npos || !(open < comma && comma < close))
    throw bad();
  const auto head = trim(text.substr(0, open));
  const auto subject = std::string(trim(text.substr(open + 1, comma - open - 1)));
  auto object = trim(text.substr(comma + 1, close - comma - 1));
  bool negated = false;
  if (!object.empty() && object.front() == '~') {
    negated = true;
    object = trim(object.substr(1));
  }
  if (subject.empty() || object.empty()) throw bad();
  const std::string obj(object);
  if (head == "property") return Axiom::property(subject, {obj, negated});
  if (head == "attribute") return Axiom::attribute(subject, {obj, negated});
  if (negated) throw bad();
  if (head == "member") return Axiom::membership(subject, obj);
  if (head == "subtype") return Axiom::subtype(subject, obj);
  throw bad();
}

std::string lowercase(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

std::string capitalize_name(std::string_view text) {
  std::string out = lowercase(text);
  if (!out.empty())
    out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

Axiom canonical(const Axiom& axiom) {
  Axiom out = axiom;
  switch (axiom.kind) {
    case AxiomKind::kProperty:
    case AxiomKind::kSubtype:
      out.subject = lowercase(axiom.subject);
      break;
    case AxiomKind::kMembership:
    case AxiomKind::kAttribute:
      out.subject = capitalize_name(axiom.subject);
      break;
  }
  out.object = lowercase(axiom.object);
  if (!out.has_literal()) out.negated = false;
  return out;
}

int WorldModel::find_concept(std::string_view concept_name) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].concept_name == concept_name) return static_cast<int>(i);
  return -1;
}

std::vector<Axiom> WorldModel::tree_axioms() const {
  std::vector<Axiom> out;
  for (const auto& node : nodes) {
    if (node.parent >= 0)
      out.push_back(
          Axiom::subtype(node.concept_name, nodes[node.parent].concept_name));
    for (const auto& p : node.properties)
      out.push_back(Axiom::property(node.concept_name, p));
    for (const auto& m : node.members)
      out.push_back(Axiom::membership(m, node.concept_name));
  }
  return out;
}

std::set<Axiom> complete_axioms(const WorldModel& wm) {
  const auto tree = wm.tree_axioms();
  std::set<Axiom> out(tree.begin(), tree.end());
  out.insert(wm.hidden.begin(), wm.hidden.end());
  return out;
}

std::set<Axiom> visible_axioms(const WorldModel& wm) {
  std::set<Axiom> out;
  for (auto& a : wm.tree_axioms())
    if (!wm.hidden.contains(a)) out.insert(std::move(a));
  return out;
}

void validate(const WorldModel& wm) {
  const auto fail = [](const std::string& what) {
    throw InvalidWorldModel(what);
  };
  if (wm.nodes.empty()) fail("world model has no nodes");
  if (wm.nodes[0].parent != -1) fail("root has a parent");
  std::set<std::string> concepts;
  std::map<std::string, std::string> member_owner;
  int max_depth = 0;
  for (std::size_t i = 0; i < wm.nodes.size(); ++i) {
    const auto& node = wm.nodes[i];
    if (node.concept_name.empty()) fail("empty concept name");
    if (!concepts.insert(node.concept_name).second)
      fail("duplicate concept " + node.concept_name);
    if (i > 0) {
      // Level order means parents precede children, which rules out cycles.
      if (node.parent < 0 || node.parent >= static_cast<int>(i))
        fail("node " + node.concept_name + " has an invalid parent");
      const auto& siblings = wm.nodes[node.parent].children;
      if (std::find(siblings.begin(), siblings.end(), static_cast<int>(i)) ==
          siblings.end())
        fail("parent of " + node.concept_name + " does not list it");
      if (node.depth != wm.nodes[node.parent].depth + 1)
        fail("depth mismatch at " + node.concept_name);
    }
    max_depth = std::max(max_depth, node.depth);
    for (const auto& m : node.members) {
      auto [it, inserted] = member_owner.emplace(m, node.concept_name);
      if (!inserted) fail("member " + m + " belongs to two concepts");
    }
    for (std::size_t a = 0; a < node.properties.size(); ++a)
      for (std::size_t b = a + 1; b < node.properties.size(); ++b)
        if (node.properties[a].name == node.properties[b].name)
          fail("concept " + node.concept_name + " repeats property " +
               node.properties[a].name);
  }
  if (max_depth + 1 != wm.height) fail("height does not match tree depth");
  for (const auto& [member, owner] : member_owner)
    if (concepts.contains(lowercase(member)))
      fail("member name " + member + " collides with a concept");
}

}  // namespace ontohyp
