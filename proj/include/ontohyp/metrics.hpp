#pragma once

#include <map>
#include <string>
#include <vector>

#include "ontohyp/generator.hpp"
#include "ontohyp/ontology.hpp"

namespace ontohyp {

/// Candidate hypotheses as graded: parsed axioms (canonical, deduplicated,
/// first-seen order) plus raw lines that did not parse.
struct HypothesisSet {
  std::vector<Axiom> parsed;
  std::vector<std::string> opaque;

  static HypothesisSet of(const std::vector<Axiom>& axioms);

  /// Returns false when the canonical axiom was already present.
  bool add(const Axiom& axiom);
  void add_opaque(std::string line) { opaque.push_back(std::move(line)); }
  std::size_t size() const { return parsed.size() + opaque.size(); }

  bool operator==(const HypothesisSet&) const = default;
};

struct EvalResult {
  bool weak = false;
  bool strong = false;
  double quality = 0.0;

  // Quality components; zero when weak is false.
  int candidate_uses = 0;  // sum of n(h) over the candidate set
  int candidate_size = 0;  // |H|, opaque lines included
  int truth_uses = 0;      // sum of n(h*) over the minimal forest of H*
  int truth_size = 0;      // |H*|

  bool operator==(const EvalResult&) const = default;
};

bool weak_accuracy(const ReasoningExample& example, const HypothesisSet& h);
bool strong_accuracy(const ReasoningExample& example, const HypothesisSet& h);

/// n(h) for every parsed candidate: the number of observations with a valid,
/// premise-minimal proof that uses h. Candidates that are world-model axioms
/// count 0.
std::map<Axiom, int> hypothesis_uses(const std::vector<Axiom>& visible,
                                     const std::vector<Axiom>& hypotheses,
                                     const std::vector<Axiom>& observations);

/// Throws DivisionUndefined if the truth is never used as a premise.
double quality(const ReasoningExample& example, const HypothesisSet& h);
EvalResult grade(const ReasoningExample& example, const HypothesisSet& h);

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
};

/// Wilson score interval. Throws InvalidCounts unless
/// 0 <= successes <= trials and trials > 0.
Interval wilson_interval(long successes, long trials, double confidence = 0.95);

enum class GroupBy : std::uint8_t { kHeight, kSubtask, kMode, kAll };

struct GradedItem {
  EvalResult result;
  int height = 1;
  Mode mode = Mode::kMulti;
  /// Subtask tags joined with '+', e.g. "infer-property".
  std::string subtasks;
};

struct ReportRow {
  std::string group;
  std::size_t count = 0;
  double weak = 0.0;
  Interval weak_ci;
  double strong = 0.0;
  Interval strong_ci;
  double quality = 0.0;
};

struct Report {
  std::vector<ReportRow> rows;
  double confidence = 0.95;
};

/// Rows ordered by group key. With `conditional_quality` the quality mean is
/// taken over weak-correct results only (0 if there are none). Throws
/// EmptyGroup on empty input.
Report aggregate(const std::vector<GradedItem>& items, GroupBy by,
                 bool conditional_quality = false, double confidence = 0.95);

std::string format_report(const Report& report);

}  // namespace ontohyp
