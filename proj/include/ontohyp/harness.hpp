#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "ontohyp/generator.hpp"
#include "ontohyp/io.hpp"
#include "ontohyp/language.hpp"
#include "ontohyp/metrics.hpp"

namespace ontohyp {

inline constexpr std::string_view kSystemPromptVersion = "ontohyp-format-v1";
const std::string& default_system_prompt();

enum class IclMode : std::uint8_t { kNone, kInDistribution, kOutOfDistribution };
std::string_view to_string(IclMode mode);
IclMode icl_mode_from_string(std::string_view text);

struct Message {
  std::string role;
  std::string content;
};

/// One worked demonstration: the question text and the CoT answer.
struct Demo {
  std::string question;
  std::string answer;
  std::vector<Subtask> subtasks;
};

struct PromptBundle {
  std::string system;
  std::vector<Demo> demos;
  std::string user;

  /// system, then user/assistant pairs for the demos, then the question.
  std::vector<Message> messages() const;
  /// SHA-256 of the message sequence, hex encoded.
  std::string hash() const;
};

/// Minimal proof of each observation, linearized, followed by the answer.
std::string render_cot(const ReasoningExample& example,
                       const RenderedExample& rendered);
std::string render_cot(const ReasoningExample& example);

/// Eight demonstrations from the demonstration name pools. In-distribution
/// demos share the target's height and mode; out-of-distribution demos are
/// height-1 single-hypothesis examples. Single-mode demos cycle through the
/// three subtasks.
std::vector<Demo> build_demos(IclMode mode, const ReasoningExample& target,
                              Rng& rng);

/// Strips <think> blocks, keeps the text after the last "Hypotheses:" label
/// when there is one, and parses each sentence. Never fails.
HypothesisSet parse_response(std::string_view text,
                             const Lexicon& lexicon = Lexicon::builtin());

/// Chat-completion endpoint settings. The token itself is read from the
/// environment at call time and never stored.
struct ModelEndpoint {
  std::string base_url = "https://api.openai.com/v1";
  std::string model;
  std::string auth_env = "OPENAI_API_KEY";
  double timeout_seconds = 60.0;
  int max_retries = 5;
  double backoff_seconds = 1.0;
  double temperature = 0.0;
  int max_tokens = 0;  // 0 leaves it to the server

  static ModelEndpoint from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

class ModelClient {
 public:
  virtual ~ModelClient() = default;
  /// One completion. Throws EndpointError, Timeout or AuthMissing.
  virtual std::string complete(const PromptBundle& bundle) = 0;
  virtual std::string name() const = 0;
};

/// OpenAI-compatible /chat/completions client with bounded exponential
/// backoff on 429, 5xx and transport failures.
class HttpChatClient : public ModelClient {
 public:
  /// Request and response bodies are appended to `log_path` when non-empty.
  HttpChatClient(ModelEndpoint endpoint, std::filesystem::path log_path = {});

  std::string complete(const PromptBundle& bundle) override;
  std::string name() const override { return endpoint_.model; }

  /// Hook for tests; defaults to std::this_thread::sleep_for.
  void set_sleep(std::function<void(std::chrono::duration<double>)> sleep) {
    sleep_ = std::move(sleep);
  }

 private:
  void log(const nlohmann::json& entry);

  ModelEndpoint endpoint_;
  std::filesystem::path log_path_;
  std::mutex log_mutex_;
  std::function<void(std::chrono::duration<double>)> sleep_;
};

/// Test double answering from a table keyed by the final user message.
class ScriptedClient : public ModelClient {
 public:
  enum class Script : std::uint8_t { kTruth, kObservations, kEmpty };

  ScriptedClient() = default;
  ScriptedClient(const std::vector<DatasetRecord>& dataset, Script script);

  void set(std::string user, std::string response);
  /// Throws EndpointError(404) for prompts without a scripted response.
  std::string complete(const PromptBundle& bundle) override;
  std::string name() const override { return "scripted"; }
  std::size_t calls() const;

 private:
  std::map<std::string, std::string> responses_;
  mutable std::mutex mutex_;
  std::size_t calls_ = 0;
};

ScriptedClient::Script script_from_string(std::string_view text);

struct RunConfig {
  IclMode icl = IclMode::kNone;
  int concurrency = 4;
  /// Draw fresh demos for every question instead of once per (height, mode).
  bool demos_per_question = false;
  std::uint64_t demo_seed = 0;
  std::string system_prompt = default_system_prompt();
};

PromptBundle build_prompt(const DatasetRecord& record, std::vector<Demo> demos,
                          const std::string& system_prompt);

/// Grade a raw response against a dataset record.
ResultRecord grade_response(const DatasetRecord& record, std::string response);

struct RunSummary {
  std::size_t completed = 0;  // new records written by this call
  std::size_t skipped = 0;    // already present in the results file
  std::size_t errors = 0;     // records written with an endpoint error
  std::vector<ResultRecord> records;  // every record in the results file
};

/// Appends one record per example to `out_dir`/results.jsonl. Examples whose
/// id already appears there are skipped. Per-example endpoint errors are
/// recorded; only I/O failures abort.
RunSummary run_eval(const std::vector<DatasetRecord>& dataset, ModelClient& client,
                    const RunConfig& config, const std::filesystem::path& out_dir);

}  // namespace ontohyp
