#include "ontohyp/metrics.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <cstdio>
#include <set>

#include "ontohyp/error.hpp"
#include "ontohyp/prover.hpp"

namespace ontohyp {

HypothesisSet HypothesisSet::of(const std::vector<Axiom>& axioms) {
  HypothesisSet h;
  for (const auto& a : axioms) h.add(a);
  return h;
}

bool HypothesisSet::add(const Axiom& axiom) {
  auto c = canonical(axiom);
  if (std::find(parsed.begin(), parsed.end(), c) != parsed.end()) return false;
  parsed.push_back(std::move(c));
  return true;
}

bool weak_accuracy(const ReasoningExample& example, const HypothesisSet& h) {
  const Prover prover(example.visible(), h.parsed);
  return std::all_of(example.observations.begin(), example.observations.end(),
                     [&](const Axiom& o) { return prover.entails(o); });
}

bool strong_accuracy(const ReasoningExample& example, const HypothesisSet& h) {
  if (!h.opaque.empty()) return false;
  const std::set<Axiom> parsed(h.parsed.begin(), h.parsed.end());
  std::set<Axiom> truth;
  for (const auto& t : example.truth) truth.insert(canonical(t));
  return parsed == truth;
}

std::map<Axiom, int> hypothesis_uses(const std::vector<Axiom>& visible,
                                     const std::vector<Axiom>& hypotheses,
                                     const std::vector<Axiom>& observations) {
  const Prover prover(visible, hypotheses);
  std::map<Axiom, int> uses;
  for (const auto& h : hypotheses) uses[h] = 0;
  for (const auto& o : observations) {
    std::set<Axiom> used;
    for (const auto& support : prover.supports(o))
      for (const auto& a : support)
        if (prover.is_hypothesis(a)) used.insert(a);
    for (const auto& a : used) ++uses[a];
  }
  return uses;
}

EvalResult grade(const ReasoningExample& example, const HypothesisSet& h) {
  EvalResult r;
  r.weak = weak_accuracy(example, h);
  r.strong = r.weak && strong_accuracy(example, h);
  if (!r.weak) return r;

  const auto visible = example.visible();
  for (const auto& [axiom, n] : hypothesis_uses(visible, h.parsed, example.observations))
    r.candidate_uses += n;
  r.candidate_size = static_cast<int>(h.size());

  const auto forest = explain(visible, example.truth, example.observations);
  if (forest)
    for (const auto& t : example.truth) r.truth_uses += premise_uses(*forest, t);
  r.truth_size = static_cast<int>(example.truth.size());
  if (r.truth_uses == 0 || r.truth_size == 0)
    throw DivisionUndefined("ground truth is never used as a premise");
  if (r.candidate_size > 0)
    r.quality = (static_cast<double>(r.candidate_uses) / r.candidate_size) /
                (static_cast<double>(r.truth_uses) / r.truth_size);
  return r;
}

double quality(const ReasoningExample& example, const HypothesisSet& h) {
  return grade(example, h).quality;
}

Interval wilson_interval(long successes, long trials, double confidence) {
  if (trials <= 0 || successes < 0 || successes > trials)
    throw InvalidCounts("wilson_interval needs 0 <= successes <= trials, trials > 0");
  if (!(confidence > 0.0 && confidence < 1.0))
    throw InvalidCounts("confidence must lie in (0, 1)");
  const boost::math::normal normal;
  const double z = boost::math::quantile(normal, 1.0 - (1.0 - confidence) / 2.0);
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  Interval ci{std::max(0.0, center - half), std::min(1.0, center + half)};
  if (successes == 0) ci.lower = 0.0;
  if (successes == trials) ci.upper = 1.0;
  return ci;
}

Report aggregate(const std::vector<GradedItem>& items, GroupBy by,
                 bool conditional_quality, double confidence) {
  if (items.empty()) throw EmptyGroup("no results to aggregate");
  struct Acc {
    long n = 0, weak = 0, strong = 0, weak_q = 0;
    double q_all = 0.0, q_weak = 0.0;
  };
  std::map<std::pair<int, std::string>, Acc> groups;
  for (const auto& it : items) {
    std::pair<int, std::string> key{0, "all"};
    switch (by) {
      case GroupBy::kHeight:
        key = {it.height, std::to_string(it.height)};
        break;
      case GroupBy::kSubtask:
        key = {0, it.subtasks};
        break;
      case GroupBy::kMode:
        key = {0, std::string(to_string(it.mode))};
        break;
      case GroupBy::kAll:
        break;
    }
    auto& acc = groups[key];
    ++acc.n;
    acc.weak += it.result.weak;
    acc.strong += it.result.strong;
    acc.q_all += it.result.quality;
    if (it.result.weak) {
      ++acc.weak_q;
      acc.q_weak += it.result.quality;
    }
  }
  Report report;
  report.confidence = confidence;
  for (const auto& [key, acc] : groups) {
    ReportRow row;
    row.group = key.second;
    row.count = static_cast<std::size_t>(acc.n);
    row.weak = static_cast<double>(acc.weak) / acc.n;
    row.strong = static_cast<double>(acc.strong) / acc.n;
    row.weak_ci = wilson_interval(acc.weak, acc.n, confidence);
    row.strong_ci = wilson_interval(acc.strong, acc.n, confidence);
    if (conditional_quality)
      row.quality = acc.weak_q > 0 ? acc.q_weak / acc.weak_q : 0.0;
    else
      row.quality = acc.q_all / acc.n;
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string format_report(const Report& report) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-18s %6s  %-24s %-24s %8s\n", "group", "n",
                "weak [CI]", "strong [CI]", "quality");
  out += line;
  for (const auto& r : report.rows) {
    std::snprintf(line, sizeof line,
                  "%-18s %6zu  %.3f [%.3f, %.3f]    %.3f [%.3f, %.3f]    %.4f\n",
                  r.group.c_str(), r.count, r.weak, r.weak_ci.lower, r.weak_ci.upper,
                  r.strong, r.strong_ci.lower, r.strong_ci.upper, r.quality);
    out += line;
  }
  return out;
}

}  // namespace ontohyp
