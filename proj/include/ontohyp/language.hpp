#pragma once

#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "ontohyp/generator.hpp"
#include "ontohyp/ontology.hpp"
#include "ontohyp/rng.hpp"

namespace ontohyp {

/// Word lists the parser consults to tell concepts, properties and members
/// apart. All entries are lowercase; concepts are singular.
struct Lexicon {
  std::set<std::string> concepts;
  std::set<std::string> properties;
  std::set<std::string> members;

  /// Every name of the primary and demonstration pools.
  static const Lexicon& builtin();
  /// builtin() plus every name mentioned by the example.
  static Lexicon for_example(const ReasoningExample& example);

  void add(const Axiom& axiom);
};

/// "wumpus" -> "wumpuses", "berry" -> "berries", "cat" -> "cats".
std::string pluralize(std::string_view noun);
/// Heuristic inverse of pluralize.
std::string singularize(std::string_view noun);
/// "a" or "an" by the first letter.
std::string_view article(std::string_view noun);

enum class SubtypeForm : std::uint8_t { kEach, kEvery, kAll };

/// Fixed surface form; `form` only affects subtype rules.
std::string render_axiom(const Axiom& axiom, SubtypeForm form = SubtypeForm::kAll);
/// Subtype rules pick one of the three forms uniformly.
std::string render_axiom(const Axiom& axiom, Rng& rng);

struct Unparseable {
  std::string text;
  bool operator==(const Unparseable&) const = default;
};

using ParseResult = std::variant<Axiom, Unparseable>;

/// Inverse of render_axiom, tolerant of case, list markers, a missing period,
/// a missing quantifier and is/are or singular/plural mismatches. Never
/// repairs member/concept confusion.
ParseResult parse_statement(std::string_view text,
                            const Lexicon& lexicon = Lexicon::builtin());

struct RenderedExample {
  /// World-model sentences in prompt order.
  std::vector<std::pair<Axiom, std::string>> world;
  std::vector<std::string> observations;

  std::string world_text() const;
  /// "We observe that ..." or empty when there are no observations.
  std::string observation_text() const;
  /// World text, observation text and the question, space separated.
  std::string text() const;
  /// Sentence used for `axiom` in the world text, or its default rendering.
  std::string sentence_for(const Axiom& axiom) const;

  bool operator==(const RenderedExample&) const = default;
};

inline constexpr std::string_view kQuestion =
    "Please produce hypotheses to explain all observations.";

/// Visible axioms in shuffled order, observations in example order.
RenderedExample render_example(const ReasoningExample& example, Rng& rng);

}  // namespace ontohyp
