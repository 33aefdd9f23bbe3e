#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ontohyp/generator.hpp"
#include "ontohyp/language.hpp"
#include "ontohyp/metrics.hpp"

namespace ontohyp {

/// One line of a dataset file.
struct DatasetRecord {
  std::string id;
  ReasoningExample example;
  RenderedExample rendered;

  bool operator==(const DatasetRecord&) const = default;
};

/// Generated example plus its rendering, drawn from a seed derived from the
/// example seed so either can be regenerated alone.
DatasetRecord make_record(std::string id, ReasoningExample example);

nlohmann::json to_json(const DatasetRecord& record);
/// Throws FormatError on missing or malformed fields.
DatasetRecord dataset_record_from_json(const nlohmann::json& j);

/// One graded response.
struct ResultRecord {
  std::string id;
  std::string prompt_hash;
  std::string response;  // verbatim
  HypothesisSet hypotheses;
  EvalResult result;
  bool graded = false;
  std::string error;

  int height = 1;
  Mode mode = Mode::kMulti;
  std::vector<Subtask> subtasks;

  double seconds = 0.0;
  std::string model;

  bool operator==(const ResultRecord&) const = default;
};

nlohmann::json to_json(const ResultRecord& record);
ResultRecord result_record_from_json(const nlohmann::json& j);

std::string join_subtasks(const std::vector<Subtask>& subtasks);
GradedItem graded_item(const ResultRecord& record);

nlohmann::json to_json(const HypothesisSet& h);
HypothesisSet hypothesis_set_from_json(const nlohmann::json& j);

/// Calls `fn` for every non-blank line parsed as JSON. Throws std::ios_base::failure
/// if the file cannot be opened and FormatError (with the line number) on
/// malformed JSON.
void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(const nlohmann::json&)>& fn);

std::vector<DatasetRecord> read_dataset(const std::filesystem::path& path);
std::vector<ResultRecord> read_results(const std::filesystem::path& path);
void write_dataset(const std::filesystem::path& path,
                   const std::vector<DatasetRecord>& records);

}  // namespace ontohyp
