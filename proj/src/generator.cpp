#include "ontohyp/generator.hpp"

#include <algorithm>
#include <map>

#include "ontohyp/error.hpp"
#include "ontohyp/prover.hpp"

namespace ontohyp {

std::string_view to_string(Mode mode) {
  return mode == Mode::kSingle ? "single" : "multi";
}

std::string_view to_string(Subtask subtask) {
  switch (subtask) {
    case Subtask::kProperty:
      return "infer-property";
    case Subtask::kMembership:
      return "infer-membership";
    case Subtask::kSubtype:
      return "infer-subtype";
    case Subtask::kRandom:
      return "random";
  }
  return "?";
}

std::string_view to_string(SubtypeStyle style) {
  switch (style) {
    case SubtypeStyle::kHideEdge:
      return "hide-edge";
    case SubtypeStyle::kFreshSupertype:
      return "fresh-supertype";
    case SubtypeStyle::kMixed:
      return "mixed";
  }
  return "?";
}

Mode mode_from_string(std::string_view text) {
  const auto t = lowercase(text);
  if (t == "single") return Mode::kSingle;
  if (t == "multi" || t == "multiple") return Mode::kMulti;
  throw FormatError("unknown mode: " + std::string(text));
}

Subtask subtask_from_string(std::string_view text) {
  const auto t = lowercase(text);
  if (t == "infer-property" || t == "property") return Subtask::kProperty;
  if (t == "infer-membership" || t == "membership") return Subtask::kMembership;
  if (t == "infer-subtype" || t == "subtype") return Subtask::kSubtype;
  if (t == "random") return Subtask::kRandom;
  throw FormatError("unknown subtask: " + std::string(text));
}

SubtypeStyle subtype_style_from_string(std::string_view text) {
  const auto t = lowercase(text);
  if (t == "hide-edge" || t == "edge") return SubtypeStyle::kHideEdge;
  if (t == "fresh-supertype" || t == "fresh") return SubtypeStyle::kFreshSupertype;
  if (t == "mixed") return SubtypeStyle::kMixed;
  throw FormatError("unknown subtype style: " + std::string(text));
}

std::vector<Axiom> ReasoningExample::visible() const {
  const auto v = visible_axioms(world);
  return {v.begin(), v.end()};
}

WorldModel build_topology(int height, const std::function<double()>& uniform) {
  if (height < 1) throw Infeasible("height must be at least 1");
  WorldModel wm;
  wm.height = height;
  wm.nodes.push_back(ConceptNode{});
  std::vector<int> layer{0};
  for (int depth = 1; depth < height; ++depth) {
    std::vector<int> next;
    for (int parent : layer) {
      const int children = uniform() > 0.5 ? 2 : 3;
      for (int j = 0; j < children; ++j) {
        const int id = static_cast<int>(wm.nodes.size());
        ConceptNode node;
        node.parent = parent;
        node.depth = depth;
        wm.nodes.push_back(std::move(node));
        wm.nodes[parent].children.push_back(id);
        next.push_back(id);
      }
    }
    layer = std::move(next);
  }
  return wm;
}

WorldModel build_topology(int height, Rng& rng) {
  return build_topology(height, [&rng] { return rng.uniform(); });
}

void populate(WorldModel& wm, NameSource& names, Rng& rng,
              double negation_prob) {
  for (auto& node : wm.nodes) node.concept_name = names.next_concept();
  for (auto& node : wm.nodes) {
    for (int j = 0; j < 3; ++j) {
      node.members.push_back(names.next_member());
      Literal lit{names.next_property(), false};
      lit.negated = rng.bernoulli(negation_prob);
      node.properties.push_back(std::move(lit));
    }
  }
}

namespace {

std::vector<int> descendants(const WorldModel& wm, int node) {
  std::vector<int> out;
  std::vector<int> stack(wm.nodes[node].children.rbegin(),
                         wm.nodes[node].children.rend());
  while (!stack.empty()) {
    const int n = stack.back();
    stack.pop_back();
    out.push_back(n);
    for (auto it = wm.nodes[n].children.rbegin();
         it != wm.nodes[n].children.rend(); ++it)
      stack.push_back(*it);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> ancestors(const WorldModel& wm, int node) {
  std::vector<int> out;
  for (int p = wm.nodes[node].parent; p >= 0; p = wm.nodes[p].parent)
    out.push_back(p);
  return out;
}

std::set<std::string> hidden_members(const WorldModel& wm) {
  std::set<std::string> out;
  for (const auto& a : wm.hidden)
    if (a.kind == AxiomKind::kMembership) out.insert(a.subject);
  return out;
}

// The hidden property is an extra literal, so the node keeps three visible
// ones.
Hypothesis hide_property(WorldModel& wm, int node, NameSource& names, Rng& rng,
                         double negation_prob) {
  auto& n = wm.nodes[node];
  Literal lit{names.next_property(), rng.bernoulli(negation_prob)};
  n.properties.push_back(lit);
  return {Axiom::property(n.concept_name, std::move(lit)), Subtask::kProperty,
          node};
}

Hypothesis hide_membership(WorldModel& wm, int node, NameSource& names) {
  auto member = names.next_member();
  wm.nodes[node].members.push_back(member);
  return {Axiom::membership(std::move(member), wm.nodes[node].concept_name),
          Subtask::kMembership, node};
}

Hypothesis hide_edge(const WorldModel& wm, int node) {
  const auto& n = wm.nodes[node];
  return {Axiom::subtype(n.concept_name, wm.nodes[n.parent].concept_name),
          Subtask::kSubtype, node};
}

Hypothesis fresh_supertype(const WorldModel& wm, NameSource& names) {
  return {Axiom::subtype(wm.root().concept_name, names.next_concept()),
          Subtask::kSubtype, 0};
}

Hypothesis hide_subtype(const WorldModel& wm, SubtypeStyle style,
                        NameSource& names, Rng& rng) {
  const bool has_edge = wm.nodes.size() > 1;
  bool edge = style == SubtypeStyle::kHideEdge;
  if (style == SubtypeStyle::kMixed) edge = has_edge && rng.bernoulli(0.5);
  if (!edge) return fresh_supertype(wm, names);
  if (!has_edge) throw Infeasible("no in-tree edge at height 1");
  const int node = static_cast<int>(1 + rng.index(wm.nodes.size() - 1));
  return hide_edge(wm, node);
}

std::vector<Hypothesis> hide_single(WorldModel& wm, const GenConfig& config,
                                    NameSource& names, Rng& rng) {
  Subtask task = config.subtask;
  if (task == Subtask::kRandom) {
    std::vector<Subtask> feasible{Subtask::kProperty, Subtask::kMembership};
    if (config.subtype_style != SubtypeStyle::kHideEdge || wm.nodes.size() > 1)
      feasible.push_back(Subtask::kSubtype);
    task = rng.pick(feasible);
  }
  switch (task) {
    case Subtask::kProperty:
      return {hide_property(wm, 0, names, rng, config.negation_prob)};
    case Subtask::kMembership: {
      std::vector<int> leaves;
      for (std::size_t i = 0; i < wm.nodes.size(); ++i)
        if (wm.is_leaf(static_cast<int>(i))) leaves.push_back(static_cast<int>(i));
      return {hide_membership(wm, rng.pick(leaves), names)};
    }
    case Subtask::kSubtype:
    case Subtask::kRandom:
      break;
  }
  return {hide_subtype(wm, config.subtype_style, names, rng)};
}

// The root layer always contributes one hypothesis of each kind; every other
// node hides one of its own axioms with probability hide_prob.
std::vector<Hypothesis> hide_multi(WorldModel& wm, const GenConfig& config,
                                   NameSource& names, Rng& rng) {
  std::vector<Hypothesis> out;
  out.push_back(hide_property(wm, 0, names, rng, config.negation_prob));
  out.push_back(hide_membership(wm, 0, names));
  out.push_back(hide_subtype(wm, config.subtype_style, names, rng));

  const bool edges = config.subtype_style != SubtypeStyle::kFreshSupertype;
  for (std::size_t i = 1; i < wm.nodes.size(); ++i) {
    const int node = static_cast<int>(i);
    if (!rng.bernoulli(config.hide_prob)) continue;
    std::vector<Subtask> kinds{Subtask::kProperty, Subtask::kMembership};
    const Hypothesis edge = hide_edge(wm, node);
    const bool edge_taken =
        std::any_of(out.begin(), out.end(),
                    [&](const Hypothesis& h) { return h.axiom == edge.axiom; });
    if (edges && !edge_taken) kinds.push_back(Subtask::kSubtype);
    switch (rng.pick(kinds)) {
      case Subtask::kProperty:
        out.push_back(hide_property(wm, node, names, rng, config.negation_prob));
        break;
      case Subtask::kMembership:
        out.push_back(hide_membership(wm, node, names));
        break;
      default:
        out.push_back(edge);
        break;
    }
  }
  return out;
}

// An unused visible member of `node`, minting one if the node has none left.
std::string take_member(WorldModel& wm, int node, std::set<std::string>& used,
                        const std::set<std::string>& hidden,
                        NameSource& names, Rng& rng) {
  std::vector<std::string> free;
  for (const auto& m : wm.nodes[node].members)
    if (!used.contains(m) && !hidden.contains(m)) free.push_back(m);
  std::string member;
  if (free.empty()) {
    member = names.next_member();
    wm.nodes[node].members.push_back(member);
  } else {
    member = rng.pick(free);
  }
  used.insert(member);
  return member;
}

}  // namespace

std::vector<Hypothesis> hide_axioms(WorldModel& wm, const GenConfig& config,
                                    NameSource& names, Rng& rng) {
  if (config.mode == Mode::kMulti && config.subtype_style == SubtypeStyle::kHideEdge &&
      wm.nodes.size() < 2)
    throw Infeasible("no in-tree edge at height 1");
  auto hyps = config.mode == Mode::kSingle ? hide_single(wm, config, names, rng)
                                           : hide_multi(wm, config, names, rng);
  wm.hidden.clear();
  for (const auto& h : hyps) wm.hidden.insert(h.axiom);
  return hyps;
}

std::vector<Axiom> gen_observations(WorldModel& wm, const Hypothesis& hypothesis,
                                    std::set<std::string>& used,
                                    NameSource& names, Rng& rng) {
  const int c = hypothesis.node;
  const Axiom& h = hypothesis.axiom;
  std::vector<Axiom> out;

  if (h.kind == AxiomKind::kMembership) {
    // One property of the node, one of the root, one of a non-root ancestor.
    std::vector<int> sources{c, 0, c};
    std::vector<int> upper;
    for (int a : ancestors(wm, c))
      if (a != 0) upper.push_back(a);
    if (!upper.empty()) sources[2] = rng.pick(upper);

    std::set<std::string> chosen;
    const auto pick_from = [&](int node) -> std::optional<Literal> {
      std::vector<Literal> visible, hidden;
      for (const auto& lit : wm.nodes[node].properties) {
        if (chosen.contains(lit.name)) continue;
        const bool is_hidden =
            wm.hidden.contains(Axiom::property(wm.nodes[node].concept_name, lit));
        (is_hidden ? hidden : visible).push_back(lit);
      }
      if (!visible.empty()) return rng.pick(visible);
      if (!hidden.empty()) return rng.pick(hidden);
      return std::nullopt;
    };
    for (int node : sources) {
      auto lit = pick_from(node);
      if (!lit && node != c) lit = pick_from(c);
      if (!lit) throw Infeasible("not enough properties to observe " + to_string(h));
      chosen.insert(lit->name);
      out.push_back(Axiom::attribute(h.subject, *lit));
    }
    return out;
  }

  // Property and subtype hypotheses: members of the node, of a leaf
  // descendant and of a non-leaf descendant.
  std::vector<int> leaf_desc, inner_desc;
  for (int d : descendants(wm, c))
    (wm.is_leaf(d) ? leaf_desc : inner_desc).push_back(d);
  const std::vector<int> targets{
      c, leaf_desc.empty() ? c : rng.pick(leaf_desc),
      inner_desc.empty() ? c : rng.pick(inner_desc)};
  const auto hidden = hidden_members(wm);
  for (int node : targets) {
    auto m = take_member(wm, node, used, hidden, names, rng);
    if (h.kind == AxiomKind::kProperty)
      out.push_back(Axiom::attribute(std::move(m), h.literal()));
    else
      out.push_back(Axiom::membership(std::move(m), h.object));
  }
  return out;
}

void prune(WorldModel& wm, const std::vector<Axiom>& observations,
           double keep_prob, Rng& rng) {
  const auto visible = visible_axioms(wm);
  const std::vector<Axiom> premises(visible.begin(), visible.end());
  const std::vector<Axiom> hidden(wm.hidden.begin(), wm.hidden.end());
  const Prover prover(premises, hidden);
  std::set<Axiom> needed;
  for (const auto& o : observations)
    for (const auto& support : prover.supports(o))
      needed.insert(support.begin(), support.end());

  const auto keep = [&](const Axiom& a) {
    return wm.hidden.contains(a) || needed.contains(a) || rng.bernoulli(keep_prob);
  };
  for (auto& node : wm.nodes) {
    std::vector<Literal> props;
    for (auto& lit : node.properties)
      if (keep(Axiom::property(node.concept_name, lit))) props.push_back(lit);
    node.properties = std::move(props);
    std::vector<std::string> members;
    for (auto& m : node.members)
      if (keep(Axiom::membership(m, node.concept_name))) members.push_back(m);
    node.members = std::move(members);
  }
}

std::vector<std::string> check_example(const ReasoningExample& example) {
  std::vector<std::string> problems;
  try {
    validate(example.world);
  } catch (const InvalidWorldModel& e) {
    problems.emplace_back(e.what());
  }
  const std::set<Axiom> truth(example.truth.begin(), example.truth.end());
  if (truth != example.world.hidden)
    problems.emplace_back("truth differs from the hidden set");
  if (example.meta.subtasks.size() != example.truth.size())
    problems.emplace_back("subtask tags do not match the truth");

  const auto visible = example.visible();
  const Prover with_truth(visible, example.truth);
  const Prover alone(visible, {});
  std::map<Axiom, int> uses;
  for (const auto& o : example.observations) {
    const auto text = to_string(o);
    if (!with_truth.entails(o)) problems.push_back(text + " is not explained");
    if (alone.entails(o)) problems.push_back(text + " follows from the world model");
    const auto supports = with_truth.supports(o);
    if (supports.size() != 1)
      problems.push_back(text + " has " + std::to_string(supports.size()) +
                         " minimal supports");
    for (const auto& s : supports)
      for (const auto& a : s)
        if (truth.contains(a)) ++uses[a];
  }
  for (const auto& h : example.truth)
    if (!uses.contains(h)) problems.push_back(to_string(h) + " explains nothing");
  return problems;
}

ReasoningExample generate_example(const GenConfig& config) {
  if (config.height < 1) throw Infeasible("height must be at least 1");
  if (config.mode == Mode::kSingle && config.subtask == Subtask::kSubtype &&
      config.subtype_style == SubtypeStyle::kHideEdge && config.height < 2)
    throw Infeasible("no in-tree edge at height 1");

  Rng rng(config.seed);
  for (int attempt = 0; attempt < std::max(1, config.max_attempts); ++attempt) {
    NameSource names(config.pools, rng);
    ReasoningExample ex;
    ex.world = build_topology(config.height, rng);
    populate(ex.world, names, rng, config.negation_prob);
    auto hyps = hide_axioms(ex.world, config, names, rng);

    std::set<std::string> used;
    for (const auto& h : hyps) {
      auto obs = gen_observations(ex.world, h, used, names, rng);
      ex.observations.insert(ex.observations.end(), obs.begin(), obs.end());
    }
    prune(ex.world, ex.observations, config.distractor_prob, rng);

    std::sort(hyps.begin(), hyps.end(),
              [](const Hypothesis& a, const Hypothesis& b) { return a.axiom < b.axiom; });
    for (const auto& h : hyps) {
      ex.truth.push_back(h.axiom);
      ex.meta.subtasks.push_back(h.subtask);
    }
    ex.meta.height = config.height;
    ex.meta.mode = config.mode;
    ex.meta.seed = config.seed;

    if (!check_example(ex).empty()) continue;
    rng.shuffle(ex.observations);
    return ex;
  }
  throw Infeasible("no valid example after " + std::to_string(config.max_attempts) +
                   " attempts");
}

}  // namespace ontohyp
