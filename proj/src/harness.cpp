#include "ontohyp/harness.hpp"

#include <openssl/evp.h>

#include <atomic>
#include <cctype>
#include <condition_variable>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <functional>
#include <optional>
#include <regex>
#include <set>
#include <thread>

#include "httplib.h"
#include "ontohyp/error.hpp"
#include "ontohyp/names.hpp"
#include "ontohyp/prover.hpp"

namespace ontohyp {

using nlohmann::json;

const std::string& default_system_prompt() {
  static const std::string text =
      "You will read a world model written in English sentences, followed by "
      "observations. Propose hypotheses that, together with the world model, "
      "explain every observation. Prefer a small set of general hypotheses over "
      "many specific ones. You may reason first. Then write a line containing "
      "only \"Hypotheses:\" followed by one hypothesis per line, each written "
      "as a single sentence in the same forms the world model uses, for "
      "example \"All dalpists are rainy.\", \"Each dalpist is a wumpus.\" or "
      "\"Amy is a dalpist.\"";
  return text;
}

std::string_view to_string(IclMode mode) {
  switch (mode) {
    case IclMode::kNone:
      return "none";
    case IclMode::kInDistribution:
      return "in-dist";
    case IclMode::kOutOfDistribution:
      return "ood";
  }
  return "?";
}

IclMode icl_mode_from_string(std::string_view text) {
  const auto t = lowercase(text);
  if (t == "none" || t == "zero-shot") return IclMode::kNone;
  if (t == "in-dist" || t == "in-distribution") return IclMode::kInDistribution;
  if (t == "ood" || t == "out-of-distribution") return IclMode::kOutOfDistribution;
  throw FormatError("unknown icl mode: " + std::string(text));
}

std::vector<Message> PromptBundle::messages() const {
  std::vector<Message> out{{"system", system}};
  for (const auto& d : demos) {
    out.push_back({"user", d.question});
    out.push_back({"assistant", d.answer});
  }
  out.push_back({"user", user});
  return out;
}

std::string PromptBundle::hash() const {
  std::string data;
  for (const auto& m : messages()) {
    data += m.role;
    data += '\0';
    data += m.content;
    data += '\0';
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 15];
  }
  return out;
}

namespace {

std::string so(const std::string& sentence) {
  std::string s = sentence;
  if (s.rfind("All ", 0) == 0 || s.rfind("Each ", 0) == 0 || s.rfind("Every ", 0) == 0)
    s[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(s[0])));
  return "So " + s;
}

void linearize(const ProofTree& tree, const RenderedExample& rendered,
               std::vector<std::string>& out) {
  if (tree.is_leaf()) {
    out.push_back(rendered.sentence_for(tree.conclusion));
    return;
  }
  for (const auto& p : tree.premises) linearize(p, rendered, out);
  out.push_back(so(render_axiom(tree.conclusion)));
}

}  // namespace

std::string render_cot(const ReasoningExample& example,
                       const RenderedExample& rendered) {
  const Prover prover(example.visible(), example.truth);
  std::vector<std::string> sentences;
  for (const auto& o : example.observations) {
    auto tree = prover.prove(o);
    if (tree) linearize(*tree, rendered, sentences);
  }
  std::string out;
  for (const auto& s : sentences) out += (out.empty() ? "" : " ") + s;
  out += "\nHypotheses:";
  for (const auto& t : example.truth) out += "\n" + render_axiom(t);
  return out;
}

std::string render_cot(const ReasoningExample& example) {
  Rng rng(derive_seed(example.meta.seed, 1));
  return render_cot(example, render_example(example, rng));
}

std::vector<Demo> build_demos(IclMode mode, const ReasoningExample& target,
                              Rng& rng) {
  std::vector<Demo> demos;
  if (mode == IclMode::kNone) return demos;
  static constexpr Subtask kCycle[] = {Subtask::kProperty, Subtask::kMembership,
                                       Subtask::kSubtype};
  for (int i = 0; i < 8; ++i) {
    GenConfig config;
    config.pools = demonstration_pools();
    config.seed = rng.next();
    if (mode == IclMode::kInDistribution) {
      config.height = target.meta.height;
      config.mode = target.meta.mode;
    } else {
      config.height = 1;
      config.mode = Mode::kSingle;
    }
    config.subtask = kCycle[i % 3];
    auto example = generate_example(config);
    Rng render_rng(derive_seed(config.seed, 1));
    const auto rendered = render_example(example, render_rng);
    demos.push_back({rendered.text(), render_cot(example, rendered),
                     example.meta.subtasks});
  }
  return demos;
}

HypothesisSet parse_response(std::string_view text, const Lexicon& lexicon) {
  std::string s(text);
  static const std::regex think(R"(<think>[\s\S]*?</think>)", std::regex::icase);
  s = std::regex_replace(s, think, " ");
  if (auto close = lowercase(s).rfind("</think>"); close != std::string::npos)
    s = s.substr(close + 8);

  static const std::regex label(
      R"((?:^|\n)[ \t*#]*(?:final\s+)?(?:hypotheses|hypothesis|answer)[ \t*]*:)",
      std::regex::icase);
  std::size_t start = 0;
  for (auto it = std::sregex_iterator(s.begin(), s.end(), label);
       it != std::sregex_iterator(); ++it)
    start = static_cast<std::size_t>(it->position() + it->length());
  s = s.substr(start);

  static const std::regex marker(R"(^\s*(?:\d+[.)]|[-*•]|\([a-z0-9]\))\s+)");
  HypothesisSet out;
  std::istringstream lines(s);
  for (std::string line; std::getline(lines, line);) {
    line = std::regex_replace(line, marker, "");
    std::string sentence;
    const auto flush = [&] {
      const auto b = sentence.find_first_not_of(" \t\r*");
      const auto e = sentence.find_last_not_of(" \t\r*");
      if (b != std::string::npos) {
        auto trimmed = sentence.substr(b, e - b + 1);
        auto parsed = parse_statement(trimmed, lexicon);
        if (auto* a = std::get_if<Axiom>(&parsed))
          out.add(*a);
        else
          out.add_opaque(std::move(trimmed));
      }
      sentence.clear();
    };
    for (char c : line) {
      if (c == '.' || c == '!' || c == '?' || c == ';')
        flush();
      else
        sentence += c;
    }
    flush();
  }
  return out;
}

ModelEndpoint ModelEndpoint::from_json(const json& j) {
  ModelEndpoint e;
  try {
    e.base_url = j.value("base_url", e.base_url);
    e.model = j.at("model").get<std::string>();
    e.auth_env = j.value("auth_env", e.auth_env);
    e.timeout_seconds = j.value("timeout_seconds", e.timeout_seconds);
    e.max_retries = j.value("max_retries", e.max_retries);
    e.backoff_seconds = j.value("backoff_seconds", e.backoff_seconds);
    e.temperature = j.value("temperature", e.temperature);
    e.max_tokens = j.value("max_tokens", e.max_tokens);
  } catch (const json::exception& ex) {
    throw FormatError(std::string("endpoint config: ") + ex.what());
  }
  if (e.max_retries < 0 || e.timeout_seconds <= 0)
    throw FormatError("endpoint config: retries and timeout must be positive");
  return e;
}

json ModelEndpoint::to_json() const {
  return {{"base_url", base_url},       {"model", model},
          {"auth_env", auth_env},       {"timeout_seconds", timeout_seconds},
          {"max_retries", max_retries}, {"backoff_seconds", backoff_seconds},
          {"temperature", temperature}, {"max_tokens", max_tokens}};
}

HttpChatClient::HttpChatClient(ModelEndpoint endpoint, std::filesystem::path log_path)
    : endpoint_(std::move(endpoint)), log_path_(std::move(log_path)) {
  sleep_ = [](std::chrono::duration<double> d) { std::this_thread::sleep_for(d); };
}

void HttpChatClient::log(const json& entry) {
  if (log_path_.empty()) return;
  std::lock_guard lock(log_mutex_);
  std::ofstream out(log_path_, std::ios::app);
  out << entry.dump() << '\n';
}

std::string HttpChatClient::complete(const PromptBundle& bundle) {
  std::string token;
  if (!endpoint_.auth_env.empty()) {
    const char* value = std::getenv(endpoint_.auth_env.c_str());
    if (value == nullptr || *value == '\0')
      throw AuthMissing("environment variable " + endpoint_.auth_env + " is not set");
    token = value;
  }

  static const std::regex url(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(endpoint_.base_url, m, url))
    throw EndpointError(0, "invalid base_url " + endpoint_.base_url);
  std::string path = m[2].str();
  while (!path.empty() && path.back() == '/') path.pop_back();
  path += "/chat/completions";

  json body;
  body["model"] = endpoint_.model;
  body["temperature"] = endpoint_.temperature;
  if (endpoint_.max_tokens > 0) body["max_tokens"] = endpoint_.max_tokens;
  body["messages"] = json::array();
  for (const auto& msg : bundle.messages())
    body["messages"].push_back({{"role", msg.role}, {"content", msg.content}});
  const std::string payload = body.dump();

  httplib::Client client(m[1].str());
  const auto timeout = std::chrono::duration<double>(endpoint_.timeout_seconds);
  client.set_connection_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
  client.set_read_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
  client.set_write_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
  httplib::Headers headers;
  if (!token.empty()) headers.emplace("Authorization", "Bearer " + token);

  int last_status = 0;
  std::string last_error;
  for (int attempt = 0; attempt <= endpoint_.max_retries; ++attempt) {
    if (attempt > 0)
      sleep_(std::chrono::duration<double>(endpoint_.backoff_seconds *
                                           static_cast<double>(1 << std::min(attempt - 1, 20))));
    auto res = client.Post(path, headers, payload, "application/json");
    json entry{{"url", endpoint_.base_url + path}, {"attempt", attempt}, {"request", body}};
    if (!res) {
      last_status = 0;
      last_error = httplib::to_string(res.error());
      entry["error"] = last_error;
      log(entry);
      continue;
    }
    entry["status"] = res->status;
    entry["response"] = res->body;
    log(entry);
    last_status = res->status;
    last_error = res->body.substr(0, 200);
    if (res->status == 200) {
      try {
        return json::parse(res->body)
            .at("choices")
            .at(0)
            .at("message")
            .at("content")
            .get<std::string>();
      } catch (const json::exception& e) {
        throw EndpointError(200, std::string("malformed completion: ") + e.what());
      }
    }
    if (res->status != 429 && res->status < 500)
      throw EndpointError(res->status, "HTTP " + std::to_string(res->status) + ": " +
                                           last_error);
  }
  if (last_status == 0) throw Timeout("request failed: " + last_error);
  throw EndpointError(last_status, "HTTP " + std::to_string(last_status) +
                                       " after retries: " + last_error);
}

namespace {

std::string scripted_response(const DatasetRecord& r, ScriptedClient::Script script) {
  std::string out;
  switch (script) {
    case ScriptedClient::Script::kTruth:
      for (const auto& t : r.example.truth) out += (out.empty() ? "" : "\n") + render_axiom(t);
      break;
    case ScriptedClient::Script::kObservations:
      for (const auto& o : r.rendered.observations) out += (out.empty() ? "" : " ") + o;
      break;
    case ScriptedClient::Script::kEmpty:
      break;
  }
  return out;
}

}  // namespace

ScriptedClient::ScriptedClient(const std::vector<DatasetRecord>& dataset, Script script) {
  for (const auto& r : dataset) set(r.rendered.text(), scripted_response(r, script));
}

void ScriptedClient::set(std::string user, std::string response) {
  std::lock_guard lock(mutex_);
  responses_[std::move(user)] = std::move(response);
}

std::string ScriptedClient::complete(const PromptBundle& bundle) {
  std::lock_guard lock(mutex_);
  ++calls_;
  auto it = responses_.find(bundle.user);
  if (it == responses_.end()) throw EndpointError(404, "no scripted response");
  return it->second;
}

std::size_t ScriptedClient::calls() const {
  std::lock_guard lock(mutex_);
  return calls_;
}

ScriptedClient::Script script_from_string(std::string_view text) {
  const auto t = lowercase(text);
  if (t == "truth") return ScriptedClient::Script::kTruth;
  if (t == "observations") return ScriptedClient::Script::kObservations;
  if (t == "empty") return ScriptedClient::Script::kEmpty;
  throw FormatError("unknown script: " + std::string(text));
}

PromptBundle build_prompt(const DatasetRecord& record, std::vector<Demo> demos,
                          const std::string& system_prompt) {
  return {system_prompt, std::move(demos), record.rendered.text()};
}

ResultRecord grade_response(const DatasetRecord& record, std::string response) {
  ResultRecord r;
  r.id = record.id;
  r.height = record.example.meta.height;
  r.mode = record.example.meta.mode;
  r.subtasks = record.example.meta.subtasks;
  r.hypotheses = parse_response(response, Lexicon::for_example(record.example));
  r.response = std::move(response);
  r.result = grade(record.example, r.hypotheses);
  r.graded = true;
  return r;
}

RunSummary run_eval(const std::vector<DatasetRecord>& dataset, ModelClient& client,
                    const RunConfig& config, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  const auto results_path = out_dir / "results.jsonl";

  RunSummary summary;
  std::set<std::string> done;
  if (std::filesystem::exists(results_path)) {
    summary.records = read_results(results_path);
    for (const auto& r : summary.records) done.insert(r.id);
  }
  std::vector<std::size_t> pending;
  std::set<std::string> queued;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    if (done.contains(dataset[i].id) || !queued.insert(dataset[i].id).second)
      ++summary.skipped;
    else
      pending.push_back(i);
  }

  std::mutex demo_mutex;
  std::map<std::pair<int, int>, std::vector<Demo>> demo_cache;
  const auto demos_for = [&](std::size_t index) -> std::vector<Demo> {
    if (config.icl == IclMode::kNone) return {};
    const auto& target = dataset[index].example;
    if (config.demos_per_question) {
      Rng rng(derive_seed(config.demo_seed, index + 1));
      return build_demos(config.icl, target, rng);
    }
    std::pair<int, int> key{0, 0};
    if (config.icl == IclMode::kInDistribution)
      key = {target.meta.height, static_cast<int>(target.meta.mode)};
    std::lock_guard lock(demo_mutex);
    auto it = demo_cache.find(key);
    if (it == demo_cache.end()) {
      Rng rng(derive_seed(config.demo_seed, static_cast<std::uint64_t>(key.first * 4 + key.second)));
      it = demo_cache.emplace(key, build_demos(config.icl, target, rng)).first;
    }
    return it->second;
  };

  std::ofstream out(results_path, std::ios::app);
  if (!out) throw std::ios_base::failure("cannot write " + results_path.string());

  std::mutex queue_mutex;
  std::condition_variable ready;
  std::deque<ResultRecord> queue;
  bool producers_done = false;
  bool io_failed = false;

  std::thread writer([&] {
    std::unique_lock lock(queue_mutex);
    for (;;) {
      ready.wait(lock, [&] { return !queue.empty() || producers_done; });
      if (queue.empty()) return;
      auto record = std::move(queue.front());
      queue.pop_front();
      lock.unlock();
      out << to_json(record).dump() << '\n';
      out.flush();
      const bool ok = static_cast<bool>(out);
      lock.lock();
      if (!ok) io_failed = true;
      if (!record.error.empty()) ++summary.errors;
      ++summary.completed;
      summary.records.push_back(std::move(record));
    }
  });

  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (;;) {
      {
        std::lock_guard lock(queue_mutex);
        if (io_failed) return;
      }
      const std::size_t k = next++;
      if (k >= pending.size()) return;
      const auto& record = dataset[pending[k]];
      ResultRecord result;
      PromptBundle bundle;
      const auto start = std::chrono::steady_clock::now();
      try {
        bundle = build_prompt(record, demos_for(pending[k]), config.system_prompt);
        result = grade_response(record, client.complete(bundle));
      } catch (const Error& e) {
        result = ResultRecord{};
        result.id = record.id;
        result.height = record.example.meta.height;
        result.mode = record.example.meta.mode;
        result.subtasks = record.example.meta.subtasks;
        result.error = e.what();
      }
      result.prompt_hash = bundle.user.empty() ? "" : bundle.hash();
      result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      result.model = client.name();
      {
        std::lock_guard lock(queue_mutex);
        queue.push_back(std::move(result));
      }
      ready.notify_one();
    }
  };

  const int threads = std::max(1, config.concurrency);
  std::vector<std::thread> workers;
  for (int i = 0; i < threads; ++i) workers.emplace_back(work);
  for (auto& t : workers) t.join();
  {
    std::lock_guard lock(queue_mutex);
    producers_done = true;
  }
  ready.notify_one();
  writer.join();
  if (io_failed) throw std::ios_base::failure("write failed: " + results_path.string());
  return summary;
}

}  // namespace ontohyp
