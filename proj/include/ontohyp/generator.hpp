#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ontohyp/names.hpp"
#include "ontohyp/ontology.hpp"
#include "ontohyp/rng.hpp"

namespace ontohyp {

enum class Mode : std::uint8_t { kSingle, kMulti };
enum class Subtask : std::uint8_t { kProperty, kMembership, kSubtype, kRandom };
enum class SubtypeStyle : std::uint8_t { kHideEdge, kFreshSupertype, kMixed };

std::string_view to_string(Mode mode);
std::string_view to_string(Subtask subtask);
std::string_view to_string(SubtypeStyle style);
/// Accept the names printed by to_string plus short aliases ("property",
/// "edge", ...). Throw FormatError otherwise.
Mode mode_from_string(std::string_view text);
Subtask subtask_from_string(std::string_view text);
SubtypeStyle subtype_style_from_string(std::string_view text);

struct GenConfig {
  int height = 1;
  Mode mode = Mode::kMulti;
  Subtask subtask = Subtask::kRandom;  // single mode only
  std::uint64_t seed = 0;
  NamePools pools = primary_pools();
  SubtypeStyle subtype_style = SubtypeStyle::kMixed;

  double negation_prob = 0.2;
  /// Multi mode: chance that a non-root node hides one of its axioms.
  double hide_prob = 0.17;
  /// Chance that a membership or property axiom no proof relies on stays in
  /// the world model.
  double distractor_prob = 0.06;
  int max_attempts = 50;
};

/// One ground-truth hypothesis together with the subtask that produced it.
struct Hypothesis {
  Axiom axiom;
  Subtask subtask = Subtask::kProperty;
  int node = 0;  // tree node the hypothesis was attached to

  bool operator==(const Hypothesis&) const = default;
};

struct ExampleMeta {
  int height = 1;
  Mode mode = Mode::kMulti;
  /// Parallel to ReasoningExample::truth.
  std::vector<Subtask> subtasks;
  std::uint64_t seed = 0;

  bool operator==(const ExampleMeta&) const = default;
};

struct ReasoningExample {
  WorldModel world;
  /// Member-level facts: memberships and attributes.
  std::vector<Axiom> observations;
  /// Ground-truth hypotheses, sorted; equals world.hidden.
  std::vector<Axiom> truth;
  ExampleMeta meta;

  std::vector<Axiom> visible() const;

  bool operator==(const ReasoningExample&) const = default;
};

/// Level-order skeleton of the requested height. Each non-leaf draws u from
/// `uniform` and gets two children if u > 0.5, three otherwise. Names are
/// left empty.
WorldModel build_topology(int height, const std::function<double()>& uniform);
WorldModel build_topology(int height, Rng& rng);

/// Attach a concept, three property literals and three members to every node.
/// Throws PoolExhausted.
void populate(WorldModel& wm, NameSource& names, Rng& rng,
              double negation_prob = 0.2);

/// Choose the hidden axioms. Property and membership hypotheses mint a new
/// literal or member attached to their node; fresh supertypes mint a concept
/// outside the tree.
/// Sets wm.hidden. Throws Infeasible.
std::vector<Hypothesis> hide_axioms(WorldModel& wm, const GenConfig& config,
                                    NameSource& names, Rng& rng);

/// Three observations explained by `hypothesis`. Members listed in `used` are
/// avoided and the chosen ones are added to it; a new visible member is minted
/// when a node runs out. Throws Infeasible.
std::vector<Axiom> gen_observations(WorldModel& wm, const Hypothesis& hypothesis,
                                    std::set<std::string>& used,
                                    NameSource& names, Rng& rng);

/// Drop membership and property axioms that no minimal proof of an
/// observation uses, keeping each with probability `keep_prob`. Subtype edges
/// are always kept.
void prune(WorldModel& wm, const std::vector<Axiom>& observations,
           double keep_prob, Rng& rng);

/// Reasons an example breaks its invariants, empty when it is sound.
std::vector<std::string> check_example(const ReasoningExample& example);

/// Full pipeline with verification; retries with fresh randomness.
/// Throws Infeasible or PoolExhausted.
ReasoningExample generate_example(const GenConfig& config);

}  // namespace ontohyp
