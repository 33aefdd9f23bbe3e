#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <thread>

#include "fixtures.hpp"
#include "httplib.h"
#include "ontohyp/error.hpp"
#include "ontohyp/harness.hpp"

using namespace ontohyp;
using namespace ontohyp::testing;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("ontohyp-harness-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<DatasetRecord> small_dataset(int n, int height = 2, Mode mode = Mode::kMulti) {
  std::vector<DatasetRecord> out;
  for (int i = 0; i < n; ++i)
    out.push_back(make_record("ex-" + std::to_string(i),
                              generate_example(config(height, mode, derive_seed(5, i)))));
  return out;
}

// Local stand-in for a chat-completion server.
class FakeServer {
 public:
  explicit FakeServer(std::function<void(const httplib::Request&, httplib::Response&)> handler) {
    server_.Post("/v1/chat/completions", std::move(handler));
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeServer() {
    server_.stop();
    thread_.join();
  }
  std::string base_url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1"; }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

std::string completion(const std::string& content) {
  return nlohmann::json{{"choices", {{{"message", {{"role", "assistant"}, {"content", content}}}}}}}
      .dump();
}

}  // namespace

TEST(ParseResponse, AnswerLine) {
  const auto lex = Lexicon::for_example(mammal_example());
  const auto h = parse_response("All mammals are hairy. Fae is a tiger. All rodents are mammals.", lex);
  EXPECT_EQ(h.parsed.size(), 3u);
  EXPECT_TRUE(h.opaque.empty());
  EXPECT_TRUE(strong_accuracy(mammal_example(), h));
}

TEST(ParseResponse, ThinkBlocksAndLabels) {
  const auto h = parse_response("<think>Maybe all dalpists are cold.</think> Dalpists are rainy.");
  ASSERT_EQ(h.parsed.size(), 1u);
  EXPECT_EQ(h.parsed[0], Axiom::property("dalpist", lit("rainy")));
  const auto labelled = parse_response(
      "Amy is a dalpist. So Amy is rainy.\nHypotheses:\n1. Dalpists are rainy.\n2. Amy is a dalpist.");
  EXPECT_EQ(labelled.parsed.size(), 2u);
  EXPECT_TRUE(labelled.opaque.empty());
}

TEST(ParseResponse, OpaqueLines) {
  const auto h = parse_response("Lompee is Frank.");
  EXPECT_TRUE(h.parsed.empty());
  EXPECT_EQ(h.opaque, std::vector<std::string>{"Lompee is Frank"});
  EXPECT_EQ(parse_response("").size(), 0u);
}

TEST(RenderCot, JackIsAMammal) {
  auto ex = mammal_example();
  ex.observations = {Axiom::membership("Jack", "mammal")};
  RenderedExample rendered;
  rendered.world = {{Axiom::membership("Jack", "rat"), "Jack is a rat."},
                    {Axiom::subtype("rat", "rodent"), "Each rat is a rodent."}};
  const auto cot = render_cot(ex, rendered);
  EXPECT_EQ(cot.substr(0, cot.find('\n')),
            "Jack is a rat. Each rat is a rodent. So Jack is a rodent. All rodents are mammals. "
            "So Jack is a mammal.");
  EXPECT_NE(cot.find("\nHypotheses:\n"), std::string::npos);
}

TEST(RenderCot, HeightOnePropertyProofs) {
  const auto ex = generate_example(config(1, Mode::kSingle, 3, Subtask::kProperty));
  const auto cot = render_cot(ex);
  const auto body = cot.substr(0, cot.find('\n'));
  EXPECT_EQ(std::count(body.begin(), body.end(), '.'), 9);
  // The answer section is the truth and nothing else.
  EXPECT_TRUE(strong_accuracy(ex, parse_response(cot, Lexicon::for_example(ex))));
}

TEST(RenderCot, ObservationThatIsAHypothesis) {
  auto ex = mammal_example();
  ex.truth = {Axiom::membership("Jack", "mammal")};
  ex.observations = {Axiom::membership("Jack", "mammal")};
  RenderedExample rendered;
  const auto cot = render_cot(ex, rendered);
  EXPECT_EQ(cot.substr(0, cot.find('\n')), "Jack is a mammal.");
}

TEST(BuildDemos, InAndOutOfDistribution) {
  const auto target = generate_example(config(3, Mode::kMulti, 1));
  Rng a(7), b(7), c(8);
  const auto in = build_demos(IclMode::kInDistribution, target, a);
  ASSERT_EQ(in.size(), 8u);
  const auto again = build_demos(IclMode::kInDistribution, target, b);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(in[i].question, again[i].question);
  const auto ood = build_demos(IclMode::kOutOfDistribution, target, c);
  ASSERT_EQ(ood.size(), 8u);
  for (const auto& d : ood) EXPECT_EQ(d.subtasks.size(), 1u);
  for (const auto& d : in) EXPECT_GE(d.subtasks.size(), 3u);
  Rng none(1);
  EXPECT_TRUE(build_demos(IclMode::kNone, target, none).empty());
  for (const auto& d : in) EXPECT_NE(d.answer.find("\nHypotheses:\n"), std::string::npos);
}

TEST(PromptBundle, HashIsStableAndSensitive) {
  PromptBundle p{"system", {{"q", "a", {}}}, "user"};
  EXPECT_EQ(p.messages().size(), 4u);
  EXPECT_EQ(p.hash().size(), 64u);
  EXPECT_EQ(p.hash(), PromptBundle(p).hash());
  auto q = p;
  q.user = "user.";
  EXPECT_NE(p.hash(), q.hash());
}

TEST(HttpChatClient, MissingTokenFailsBeforeAnyRequest) {
  std::atomic<int> hits{0};
  FakeServer server([&](const httplib::Request&, httplib::Response& res) {
    ++hits;
    res.set_content(completion("x"), "application/json");
  });
  ModelEndpoint e;
  e.base_url = server.base_url();
  e.model = "m";
  e.auth_env = "ONTOHYP_TEST_UNSET_TOKEN";
  ::unsetenv(e.auth_env.c_str());
  HttpChatClient client(e);
  EXPECT_THROW(client.complete({"s", {}, "u"}), AuthMissing);
  EXPECT_EQ(hits.load(), 0);
}

TEST(HttpChatClient, RetriesOnRateLimit) {
  std::atomic<int> hits{0};
  std::string auth;
  FakeServer server([&](const httplib::Request& req, httplib::Response& res) {
    if (++hits <= 2) {
      res.status = 429;
      return;
    }
    auth = req.get_header_value("Authorization");
    const auto body = nlohmann::json::parse(req.body);
    res.set_content(completion("echo: " + body["messages"].back()["content"].get<std::string>()),
                    "application/json");
  });
  ::setenv("ONTOHYP_TEST_TOKEN", "secret", 1);
  ModelEndpoint e;
  e.base_url = server.base_url();
  e.model = "m";
  e.auth_env = "ONTOHYP_TEST_TOKEN";
  e.max_retries = 3;
  HttpChatClient client(e);
  std::vector<double> sleeps;
  client.set_sleep([&](std::chrono::duration<double> d) { sleeps.push_back(d.count()); });
  EXPECT_EQ(client.complete({"s", {}, "hello"}), "echo: hello");
  EXPECT_EQ(hits.load(), 3);
  EXPECT_EQ(auth, "Bearer secret");
  EXPECT_EQ(sleeps, (std::vector<double>{1.0, 2.0}));
}

TEST(HttpChatClient, GivesUpAfterRetries) {
  std::atomic<int> hits{0};
  FakeServer server([&](const httplib::Request&, httplib::Response& res) {
    ++hits;
    res.status = 503;
  });
  ModelEndpoint e;
  e.base_url = server.base_url();
  e.model = "m";
  e.auth_env = "";
  e.max_retries = 2;
  HttpChatClient client(e);
  client.set_sleep([](auto) {});
  try {
    client.complete({"s", {}, "u"});
    FAIL();
  } catch (const EndpointError& err) {
    EXPECT_EQ(err.status(), 503);
  }
  EXPECT_EQ(hits.load(), 3);
}

TEST(HttpChatClient, ClientErrorsAreNotRetried) {
  std::atomic<int> hits{0};
  FakeServer server([&](const httplib::Request&, httplib::Response& res) {
    ++hits;
    res.status = 400;
  });
  ModelEndpoint e;
  e.base_url = server.base_url();
  e.model = "m";
  e.auth_env = "";
  HttpChatClient client(e);
  client.set_sleep([](auto) {});
  EXPECT_THROW(client.complete({"s", {}, "u"}), EndpointError);
  EXPECT_EQ(hits.load(), 1);
}

TEST(ModelEndpoint, JsonRoundTrip) {
  ModelEndpoint e;
  e.model = "gpt";
  e.max_retries = 2;
  const auto back = ModelEndpoint::from_json(e.to_json());
  EXPECT_EQ(back.to_json(), e.to_json());
  EXPECT_THROW(ModelEndpoint::from_json(nlohmann::json::object()), FormatError);
}

TEST(RunEval, TruthScriptIsPerfect) {
  const auto data = small_dataset(12);
  ScriptedClient client(data, ScriptedClient::Script::kTruth);
  const auto dir = scratch("truth");
  const auto s = run_eval(data, client, {}, dir);
  EXPECT_EQ(s.completed, 12u);
  EXPECT_EQ(s.errors, 0u);
  for (const auto& r : s.records) {
    EXPECT_TRUE(r.graded);
    EXPECT_TRUE(r.result.strong);
    EXPECT_DOUBLE_EQ(r.result.quality, 1.0);
    EXPECT_EQ(r.prompt_hash.size(), 64u);
  }
  EXPECT_EQ(read_results(dir / "results.jsonl").size(), 12u);
}

TEST(RunEval, EmptyAndObservationScripts) {
  const auto data = small_dataset(6);
  ScriptedClient empty(data, ScriptedClient::Script::kEmpty);
  for (const auto& r : run_eval(data, empty, {}, scratch("empty")).records) {
    EXPECT_FALSE(r.result.weak);
    EXPECT_DOUBLE_EQ(r.result.quality, 0.0);
  }
  ScriptedClient echo(data, ScriptedClient::Script::kObservations);
  for (const auto& r : run_eval(data, echo, {}, scratch("echo")).records) {
    EXPECT_TRUE(r.result.weak);
    EXPECT_FALSE(r.result.strong);
    EXPECT_LT(r.result.quality, 1.0);
  }
}

TEST(RunEval, ResumesWithoutRepeatingWork) {
  const auto data = small_dataset(10);
  const auto dir = scratch("resume");
  ScriptedClient first(data, ScriptedClient::Script::kTruth);
  const std::vector<DatasetRecord> head(data.begin(), data.begin() + 4);
  run_eval(head, first, {}, dir);
  ScriptedClient second(data, ScriptedClient::Script::kTruth);
  const auto s = run_eval(data, second, {}, dir);
  EXPECT_EQ(s.skipped, 4u);
  EXPECT_EQ(s.completed, 6u);
  EXPECT_EQ(second.calls(), 6u);
  EXPECT_EQ(s.records.size(), 10u);
  EXPECT_EQ(read_results(dir / "results.jsonl").size(), 10u);
}

TEST(RunEval, EndpointErrorsAreRecorded) {
  const auto data = small_dataset(3);
  ScriptedClient client;  // knows no prompts
  const auto s = run_eval(data, client, {}, scratch("errors"));
  EXPECT_EQ(s.errors, 3u);
  for (const auto& r : s.records) {
    EXPECT_FALSE(r.graded);
    EXPECT_FALSE(r.error.empty());
  }
}

TEST(RunEval, DemosAreSharedPerHeight) {
  const auto data = small_dataset(4, 3);
  // Records the demo block of every prompt it sees.
  struct Recorder : ModelClient {
    std::mutex m;
    std::vector<PromptBundle> seen;
    std::string complete(const PromptBundle& b) override {
      std::lock_guard lock(m);
      seen.push_back(b);
      return "";
    }
    std::string name() const override { return "recorder"; }
  } recorder;
  RunConfig cfg;
  cfg.icl = IclMode::kInDistribution;
  cfg.demo_seed = 3;
  run_eval(data, recorder, cfg, scratch("demos"));
  ASSERT_EQ(recorder.seen.size(), 4u);
  for (const auto& b : recorder.seen) {
    ASSERT_EQ(b.demos.size(), 8u);
    EXPECT_EQ(b.demos[0].question, recorder.seen[0].demos[0].question);
    EXPECT_EQ(b.messages().size(), 18u);
  }
  recorder.seen.clear();
  cfg.demos_per_question = true;
  run_eval(data, recorder, cfg, scratch("demos-each"));
  std::set<std::string> firsts;
  for (const auto& b : recorder.seen) firsts.insert(b.demos[0].question);
  EXPECT_EQ(firsts.size(), 4u);
}
