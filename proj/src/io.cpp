#include "ontohyp/io.hpp"

#include <algorithm>
#include <fstream>

#include "ontohyp/error.hpp"

namespace ontohyp {

using nlohmann::json;

DatasetRecord make_record(std::string id, ReasoningExample example) {
  DatasetRecord r;
  r.id = std::move(id);
  Rng rng(derive_seed(example.meta.seed, 1));
  r.rendered = render_example(example, rng);
  r.example = std::move(example);
  return r;
}

namespace {

std::string literal_text(const Literal& lit) {
  return (lit.negated ? "~" : "") + lit.name;
}

Literal literal_from_text(const std::string& text) {
  if (!text.empty() && text.front() == '~') return {text.substr(1), true};
  return {text, false};
}

json axioms_json(const std::vector<Axiom>& axioms) {
  json out = json::array();
  for (const auto& a : axioms) out.push_back(to_string(a));
  return out;
}

std::vector<Axiom> axioms_from(const json& j) {
  std::vector<Axiom> out;
  for (const auto& e : j) out.push_back(axiom_from_string(e.get<std::string>()));
  return out;
}

json subtasks_json(const std::vector<Subtask>& subtasks) {
  json out = json::array();
  for (auto s : subtasks) out.push_back(std::string(to_string(s)));
  return out;
}

std::vector<Subtask> subtasks_from(const json& j) {
  std::vector<Subtask> out;
  for (const auto& e : j) out.push_back(subtask_from_string(e.get<std::string>()));
  return out;
}

template <typename F>
auto guarded(const char* what, F&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw FormatError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

json to_json(const DatasetRecord& record) {
  const auto& ex = record.example;
  json j;
  j["id"] = record.id;
  j["seed"] = ex.meta.seed;
  j["height"] = ex.meta.height;
  j["mode"] = std::string(to_string(ex.meta.mode));
  j["subtasks"] = subtasks_json(ex.meta.subtasks);

  json tree = json::array();
  for (const auto& node : ex.world.nodes) {
    json n;
    n["concept"] = node.concept_name;
    n["parent"] = node.parent;
    n["depth"] = node.depth;
    n["properties"] = json::array();
    for (const auto& p : node.properties) n["properties"].push_back(literal_text(p));
    n["members"] = node.members;
    tree.push_back(std::move(n));
  }
  j["tree"] = std::move(tree);
  j["hidden"] = axioms_json({ex.world.hidden.begin(), ex.world.hidden.end()});
  j["axioms"] = axioms_json(ex.visible());
  j["observations"] = axioms_json(ex.observations);
  j["truth"] = axioms_json(ex.truth);

  json sentences = json::array();
  for (const auto& [axiom, sentence] : record.rendered.world)
    sentences.push_back(json::array({to_string(axiom), sentence}));
  j["world_sentences"] = std::move(sentences);
  j["observation_sentences"] = record.rendered.observations;
  j["world_text"] = record.rendered.world_text();
  j["observation_text"] = record.rendered.observation_text();
  return j;
}

DatasetRecord dataset_record_from_json(const json& j) {
  return guarded("dataset record", [&] {
    DatasetRecord r;
    r.id = j.at("id").get<std::string>();
    auto& ex = r.example;
    ex.meta.seed = j.at("seed").get<std::uint64_t>();
    ex.meta.height = j.at("height").get<int>();
    ex.meta.mode = mode_from_string(j.at("mode").get<std::string>());
    ex.meta.subtasks = subtasks_from(j.at("subtasks"));

    ex.world.height = ex.meta.height;
    for (const auto& n : j.at("tree")) {
      ConceptNode node;
      node.concept_name = n.at("concept").get<std::string>();
      node.parent = n.at("parent").get<int>();
      node.depth = n.at("depth").get<int>();
      for (const auto& p : n.at("properties"))
        node.properties.push_back(literal_from_text(p.get<std::string>()));
      node.members = n.at("members").get<std::vector<std::string>>();
      const int id = static_cast<int>(ex.world.nodes.size());
      if (node.parent >= id) throw FormatError("tree is not in level order");
      if (node.parent >= 0) ex.world.nodes[node.parent].children.push_back(id);
      ex.world.nodes.push_back(std::move(node));
    }
    for (auto& a : axioms_from(j.at("hidden"))) ex.world.hidden.insert(std::move(a));
    ex.observations = axioms_from(j.at("observations"));
    ex.truth = axioms_from(j.at("truth"));
    validate(ex.world);

    for (const auto& pair : j.at("world_sentences"))
      r.rendered.world.emplace_back(axiom_from_string(pair.at(0).get<std::string>()),
                                    pair.at(1).get<std::string>());
    r.rendered.observations =
        j.at("observation_sentences").get<std::vector<std::string>>();
    return r;
  });
}

json to_json(const HypothesisSet& h) {
  return {{"parsed", axioms_json(h.parsed)}, {"opaque", h.opaque}};
}

HypothesisSet hypothesis_set_from_json(const json& j) {
  HypothesisSet h;
  h.parsed = axioms_from(j.at("parsed"));
  h.opaque = j.at("opaque").get<std::vector<std::string>>();
  return h;
}

json to_json(const ResultRecord& r) {
  json j;
  j["id"] = r.id;
  j["prompt_hash"] = r.prompt_hash;
  j["response"] = r.response;
  j["hypotheses"] = to_json(r.hypotheses);
  j["graded"] = r.graded;
  j["error"] = r.error;
  j["weak"] = r.result.weak;
  j["strong"] = r.result.strong;
  j["quality"] = r.result.quality;
  j["candidate_uses"] = r.result.candidate_uses;
  j["candidate_size"] = r.result.candidate_size;
  j["truth_uses"] = r.result.truth_uses;
  j["truth_size"] = r.result.truth_size;
  j["height"] = r.height;
  j["mode"] = std::string(to_string(r.mode));
  j["subtasks"] = subtasks_json(r.subtasks);
  j["seconds"] = r.seconds;
  j["model"] = r.model;
  return j;
}

ResultRecord result_record_from_json(const json& j) {
  return guarded("result record", [&] {
    ResultRecord r;
    r.id = j.at("id").get<std::string>();
    r.prompt_hash = j.value("prompt_hash", "");
    r.response = j.value("response", "");
    r.hypotheses = hypothesis_set_from_json(j.at("hypotheses"));
    r.graded = j.at("graded").get<bool>();
    r.error = j.value("error", "");
    r.result.weak = j.at("weak").get<bool>();
    r.result.strong = j.at("strong").get<bool>();
    r.result.quality = j.at("quality").get<double>();
    r.result.candidate_uses = j.value("candidate_uses", 0);
    r.result.candidate_size = j.value("candidate_size", 0);
    r.result.truth_uses = j.value("truth_uses", 0);
    r.result.truth_size = j.value("truth_size", 0);
    r.height = j.at("height").get<int>();
    r.mode = mode_from_string(j.at("mode").get<std::string>());
    r.subtasks = subtasks_from(j.at("subtasks"));
    r.seconds = j.value("seconds", 0.0);
    r.model = j.value("model", "");
    return r;
  });
}

std::string join_subtasks(const std::vector<Subtask>& subtasks) {
  std::vector<std::string> names;
  for (auto s : subtasks) names.emplace_back(to_string(s));
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : "+") + n;
  return out;
}

GradedItem graded_item(const ResultRecord& record) {
  return {record.result, record.height, record.mode, join_subtasks(record.subtasks)};
}

void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(const json&)>& fn) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path.string());
  std::string line;
  for (int number = 1; std::getline(in, line); ++number) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw FormatError(path.string() + ":" + std::to_string(number) + ": " + e.what());
    }
    fn(j);
  }
}

std::vector<DatasetRecord> read_dataset(const std::filesystem::path& path) {
  std::vector<DatasetRecord> out;
  for_each_jsonl(path, [&](const json& j) { out.push_back(dataset_record_from_json(j)); });
  return out;
}

std::vector<ResultRecord> read_results(const std::filesystem::path& path) {
  std::vector<ResultRecord> out;
  for_each_jsonl(path, [&](const json& j) { out.push_back(result_record_from_json(j)); });
  return out;
}

void write_dataset(const std::filesystem::path& path,
                   const std::vector<DatasetRecord>& records) {
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot write " + path.string());
  for (const auto& r : records) out << to_json(r).dump() << '\n';
  out.flush();
  if (!out) throw std::ios_base::failure("write failed: " + path.string());
}

}  // namespace ontohyp
