#include "ontohyp/language.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <sstream>

#include "ontohyp/names.hpp"

namespace ontohyp {

const Lexicon& Lexicon::builtin() {
  static const Lexicon lex = [] {
    Lexicon l;
    for (const NamePools* pools : {&primary_pools(), &demonstration_pools()}) {
      for (const auto& c : pools->concepts) l.concepts.insert(lowercase(c));
      for (const auto& p : pools->properties) l.properties.insert(lowercase(p));
      for (const auto& m : pools->members) l.members.insert(lowercase(m));
    }
    return l;
  }();
  return lex;
}

void Lexicon::add(const Axiom& axiom) {
  const Axiom a = canonical(axiom);
  switch (a.kind) {
    case AxiomKind::kProperty:
      concepts.insert(a.subject);
      properties.insert(a.object);
      break;
    case AxiomKind::kSubtype:
      concepts.insert(a.subject);
      concepts.insert(a.object);
      break;
    case AxiomKind::kMembership:
      members.insert(lowercase(a.subject));
      concepts.insert(a.object);
      break;
    case AxiomKind::kAttribute:
      members.insert(lowercase(a.subject));
      properties.insert(a.object);
      break;
  }
}

Lexicon Lexicon::for_example(const ReasoningExample& example) {
  Lexicon lex = builtin();
  for (const auto& a : complete_axioms(example.world)) lex.add(a);
  for (const auto& o : example.observations) lex.add(o);
  for (const auto& t : example.truth) lex.add(t);
  return lex;
}

namespace {

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

bool is_vowel(char c) {
  return std::string_view("aeiou").find(
             static_cast<char>(std::tolower(static_cast<unsigned char>(c)))) !=
         std::string_view::npos;
}

bool sibilant(std::string_view s) {
  return ends_with(s, "s") || ends_with(s, "x") || ends_with(s, "z") ||
         ends_with(s, "ch") || ends_with(s, "sh");
}

}  // namespace

std::string pluralize(std::string_view noun) {
  std::string n(noun);
  if (sibilant(n)) return n + "es";
  if (n.size() >= 2 && n.back() == 'y' && !is_vowel(n[n.size() - 2]))
    return n.substr(0, n.size() - 1) + "ies";
  return n + "s";
}

std::string singularize(std::string_view noun) {
  std::string n(noun);
  if (n.size() > 3 && ends_with(n, "ies")) return n.substr(0, n.size() - 3) + "y";
  if (n.size() > 2 && ends_with(n, "es") && sibilant(n.substr(0, n.size() - 2)))
    return n.substr(0, n.size() - 2);
  if (n.size() > 1 && ends_with(n, "s") && !ends_with(n, "ss"))
    return n.substr(0, n.size() - 1);
  return n;
}

std::string_view article(std::string_view noun) {
  return !noun.empty() && is_vowel(noun.front()) ? "an" : "a";
}

std::string render_axiom(const Axiom& axiom, SubtypeForm form) {
  const std::string neg = axiom.negated ? "not " : "";
  switch (axiom.kind) {
    case AxiomKind::kProperty:
      return "All " + pluralize(axiom.subject) + " are " + neg + axiom.object + ".";
    case AxiomKind::kMembership:
      return axiom.subject + " is " + std::string(article(axiom.object)) + " " +
             axiom.object + ".";
    case AxiomKind::kAttribute:
      return axiom.subject + " is " + neg + axiom.object + ".";
    case AxiomKind::kSubtype:
      break;
  }
  const std::string a = std::string(article(axiom.object)) + " ";
  switch (form) {
    case SubtypeForm::kEach:
      return "Each " + axiom.subject + " is " + a + axiom.object + ".";
    case SubtypeForm::kEvery:
      return "Every " + axiom.subject + " is " + a + axiom.object + ".";
    case SubtypeForm::kAll:
      break;
  }
  return "All " + pluralize(axiom.subject) + " are " + pluralize(axiom.object) + ".";
}

std::string render_axiom(const Axiom& axiom, Rng& rng) {
  if (axiom.kind != AxiomKind::kSubtype) return render_axiom(axiom);
  return render_axiom(axiom, static_cast<SubtypeForm>(rng.index(3)));
}

namespace {

// Concept named by `word`: a lexicon hit first, then its singular.
std::string concept_of(const std::string& word, bool plural, const Lexicon& lex) {
  if (lex.concepts.contains(word)) return word;
  auto s = singularize(word);
  if (lex.concepts.contains(s) || plural) return s;
  return word;
}

bool known_concept(const std::string& word, const Lexicon& lex) {
  return lex.concepts.contains(word) || lex.concepts.contains(singularize(word));
}

bool capitalized(const std::string& word) {
  return !word.empty() && std::isupper(static_cast<unsigned char>(word.front()));
}

}  // namespace

ParseResult parse_statement(std::string_view text, const Lexicon& lex) {
  const Unparseable fail{std::string(text)};
  static const std::regex marker(R"(^\s*(?:\d+[.)]|[-*•]|\([a-z0-9]\))\s+)");
  std::string s = std::regex_replace(std::string(text), marker, "");
  while (!s.empty() && (std::isspace(static_cast<unsigned char>(s.back())) ||
                        s.back() == '.' || s.back() == '!' || s.back() == ';'))
    s.pop_back();

  std::vector<std::string> raw;
  std::istringstream in(s);
  for (std::string w; in >> w;) raw.push_back(w);
  std::vector<std::string> tok;
  for (const auto& w : raw) tok.push_back(lowercase(w));

  std::size_t i = 0;
  bool quantified = false;
  if (i < tok.size() && (tok[i] == "all" || tok[i] == "each" || tok[i] == "every" ||
                         tok[i] == "a" || tok[i] == "an")) {
    quantified = true;
    ++i;
  }
  if (i + 2 > tok.size()) return fail;
  const std::string subject = tok[i++];
  if (tok[i] != "is" && tok[i] != "are") return fail;
  const bool plural_copula = tok[i++] == "are";
  bool negated = false;
  if (i < tok.size() && tok[i] == "not") {
    negated = true;
    ++i;
  }
  bool with_article = false;
  if (i < tok.size() && (tok[i] == "a" || tok[i] == "an")) {
    with_article = true;
    ++i;
  }
  if (i + 1 != tok.size()) return fail;
  const std::string object = tok[i];
  const std::string& object_raw = raw[i];

  // Member/concept confusion stays visible as an unparseable line.
  if (lex.members.contains(object)) return fail;
  if (capitalized(object_raw) && !known_concept(object, lex) &&
      !lex.properties.contains(object))
    return fail;

  bool subject_is_member = lex.members.contains(subject);
  if (subject_is_member && quantified) return fail;
  if ((quantified || plural_copula) && !known_concept(subject, lex) &&
      lex.members.contains(singularize(subject)))
    return fail;
  if (!subject_is_member)
    subject_is_member = !quantified && !plural_copula && !known_concept(subject, lex);

  bool object_is_concept = with_article;
  if (!object_is_concept)
    object_is_concept = !lex.properties.contains(object) && known_concept(object, lex);

  if (object_is_concept) {
    if (negated) return fail;
    const bool plural_object = !with_article && plural_copula;
    const auto parent = concept_of(object, plural_object, lex);
    if (subject_is_member)
      return canonical(Axiom::membership(subject, parent));
    const auto child = concept_of(subject, plural_copula, lex);
    if (child == parent) return fail;
    return canonical(Axiom::subtype(child, parent));
  }
  if (with_article) return fail;
  const Literal lit{object, negated};
  if (subject_is_member) return canonical(Axiom::attribute(subject, lit));
  return canonical(Axiom::property(concept_of(subject, plural_copula, lex), lit));
}

std::string RenderedExample::world_text() const {
  std::string out;
  for (const auto& [axiom, sentence] : world) {
    if (!out.empty()) out += ' ';
    out += sentence;
  }
  return out;
}

std::string RenderedExample::observation_text() const {
  if (observations.empty()) return "";
  std::string out = "We observe that";
  for (const auto& o : observations) out += " " + o;
  return out;
}

std::string RenderedExample::text() const {
  std::string out;
  for (const auto& part : {world_text(), observation_text(), std::string(kQuestion)}) {
    if (part.empty()) continue;
    if (!out.empty()) out += ' ';
    out += part;
  }
  return out;
}

std::string RenderedExample::sentence_for(const Axiom& axiom) const {
  for (const auto& [a, sentence] : world)
    if (a == axiom) return sentence;
  return render_axiom(axiom);
}

RenderedExample render_example(const ReasoningExample& example, Rng& rng) {
  RenderedExample out;
  auto visible = example.visible();
  rng.shuffle(visible);
  for (auto& a : visible) {
    auto sentence = render_axiom(a, rng);
    out.world.emplace_back(std::move(a), std::move(sentence));
  }
  for (const auto& o : example.observations) out.observations.push_back(render_axiom(o));
  return out;
}

}  // namespace ontohyp
