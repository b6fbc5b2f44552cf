#include <gtest/gtest.h>

#include <atomic>
#include <thread>

#include "grasp/http_client.hpp"
#include "test_support.hpp"

using namespace grasp;
using namespace std::chrono_literals;

namespace {

class ScriptedClient : public ChatClient {
 public:
  enum class Fail { None, Transient, RateLimit, Auth, Malformed };
  ScriptedClient(std::vector<Fail> script, std::string text) : script_(std::move(script)), text_(std::move(text)) {}

  std::string complete(const ChatRequest& r) override {
    const Fail f = calls_ < script_.size() ? script_[calls_] : Fail::None;
    ++calls_;
    switch (f) {
      case Fail::Transient: throw TransientError(r.instance_id, "connection reset");
      case Fail::RateLimit: throw RateLimitError(r.instance_id, "429");
      case Fail::Auth: throw AuthError(r.instance_id, "401");
      case Fail::Malformed: throw MalformedResponseError(r.instance_id, "bad json");
      case Fail::None: break;
    }
    return text_;
  }

  std::size_t calls_ = 0;

 private:
  std::vector<Fail> script_;
  std::string text_;
};

using F = ScriptedClient::Fail;

ChatRequest request(std::string id = "dist=random/obs=1/start=in/g=0/mu=1/lim=0/cost=0") {
  return {std::move(id), build_prompt(generate(DistributionKind::Random, true, StartMode::Inner, 0, 0),
                                      all_constraint_sets()[0], "test-model")};
}

}  // namespace

TEST(RequestBody, Shape) {
  const auto body = request_body(request().prompt);
  EXPECT_EQ(body["model"], "test-model");
  EXPECT_EQ(body["temperature"], 0);
  ASSERT_EQ(body["messages"].size(), 2u);
  EXPECT_EQ(body["messages"][0]["role"], "system");
  EXPECT_EQ(body["messages"][1]["role"], "user");
  EXPECT_TRUE(body["messages"][1]["content"].get<std::string>().starts_with("You are given the following"));
}

TEST(ResponseText, ExtractsFirstChoice) {
  const auto j = nlohmann::json::parse(R"({"choices":[{"message":{"role":"assistant","content":"[UP]"}}]})");
  EXPECT_EQ(response_text(j, "x"), "[UP]");
  EXPECT_THROW(response_text(nlohmann::json::parse(R"({"choices":[]})"), "x"), MalformedResponseError);
  EXPECT_THROW(response_text(nlohmann::json::parse(R"({"error":"nope"})"), "x"), MalformedResponseError);
}

TEST(QueryModel, RetriesTransientWithBackoff) {
  ScriptedClient client({F::Transient, F::RateLimit, F::Transient}, "[UP]");
  std::vector<std::chrono::milliseconds> sleeps;
  const auto text = query_model(client, request(), RetryPolicy{4, 100ms, 2.0}, [&](auto d) { sleeps.push_back(d); });
  EXPECT_EQ(text, "[UP]");
  EXPECT_EQ(client.calls_, 4u);
  EXPECT_EQ(sleeps, (std::vector<std::chrono::milliseconds>{100ms, 200ms, 400ms}));
}

TEST(QueryModel, GivesUpAfterMaxRetries) {
  ScriptedClient client(std::vector<F>(10, F::Transient), "[UP]");
  int sleeps = 0;
  try {
    query_model(client, request("the-id"), RetryPolicy{3, 1ms, 2.0}, [&](auto) { ++sleeps; });
    FAIL();
  } catch (const RetriesExhaustedError& e) {
    EXPECT_EQ(e.instance_id(), "the-id");
  }
  EXPECT_EQ(client.calls_, 4u);
  EXPECT_EQ(sleeps, 3);
}

TEST(QueryModel, RateLimitSurfacesAfterRetries) {
  ScriptedClient client(std::vector<F>(10, F::RateLimit), "[UP]");
  EXPECT_THROW(query_model(client, request(), RetryPolicy{2, 1ms, 2.0}, [](auto) {}), RateLimitError);
  EXPECT_EQ(client.calls_, 3u);
}

TEST(QueryModel, AuthAndMalformedNotRetried) {
  ScriptedClient auth({F::Auth}, "");
  EXPECT_THROW(query_model(auth, request(), {}, [](auto) {}), AuthError);
  EXPECT_EQ(auth.calls_, 1u);
  ScriptedClient bad({F::Malformed}, "");
  EXPECT_THROW(query_model(bad, request(), {}, [](auto) {}), MalformedResponseError);
  EXPECT_EQ(bad.calls_, 1u);
}

TEST(RunInstance, StubClientScoresWithoutNetwork) {
  const auto id = parse_instance_id("dist=random/obs=1/start=in/g=0/mu=1/lim=0/cost=0");
  const Grid g = generate(DistributionKind::Random, true, StartMode::Inner, 0, 0);
  ScriptedClient client({}, "Here you go: [TAKE, DROP]");
  SuiteConfig config;
  config.agent = parse_agent("llm:stub");
  const auto r = run_instance(config, id, 0, g, &client, [](auto) {});
  EXPECT_TRUE(r.scored);
  EXPECT_EQ(r.length, 2);
  EXPECT_EQ(r.raw_response, "Here you go: [TAKE, DROP]");
}

TEST(RunInstance, NetworkFailureMarksUnscored) {
  const auto id = parse_instance_id("dist=random/obs=1/start=in/g=0/mu=1/lim=0/cost=0");
  const Grid g = generate(DistributionKind::Random, true, StartMode::Inner, 0, 0);
  ScriptedClient client(std::vector<F>(10, F::Transient), "");
  SuiteConfig config;
  config.agent = parse_agent("llm:stub");
  config.retry.max_retries = 2;
  const auto r = run_instance(config, id, 0, g, &client, [](auto) {});
  EXPECT_FALSE(r.scored);
  EXPECT_EQ(client.calls_, 3u);
  EXPECT_NE(r.error.find("gave up"), std::string::npos);
}

TEST(Cassette, LoadAndRecord) {
  const auto dir = std::filesystem::temp_directory_path() / "grasp_cassette_test";
  std::filesystem::create_directories(dir);
  ScriptedClient inner({}, "[LEFT]");
  RecordingClient rec(inner);
  rec.complete(request("a"));
  rec.complete(request("b"));
  rec.save(dir / "c.json");
  auto replay = CassetteClient::load(dir / "c.json");
  EXPECT_EQ(replay.complete(request("a")), "[LEFT]");
  EXPECT_EQ(replay.responses().size(), 2u);
  EXPECT_THROW(replay.complete(request("missing")), LlmError);
  std::filesystem::remove_all(dir);
}

TEST(Auditing, WritesRequestAndOutcome) {
  const auto path = std::filesystem::temp_directory_path() / "grasp_audit_test.jsonl";
  std::filesystem::remove(path);
  {
    ScriptedClient inner({F::Auth}, "[UP]");
    AuditingClient audit(inner, path);
    EXPECT_THROW(audit.complete(request("x")), AuthError);
    EXPECT_EQ(audit.complete(request("y")), "[UP]");
  }
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  const auto first = nlohmann::json::parse(line);
  EXPECT_EQ(first["instance_id"], "x");
  EXPECT_TRUE(first.contains("error"));
  EXPECT_EQ(first["request"]["temperature"], 0);
  std::getline(in, line);
  EXPECT_EQ(nlohmann::json::parse(line)["response"], "[UP]");
  std::filesystem::remove(path);
}

TEST(LlmConfigFile, Load) {
  const auto path = std::filesystem::temp_directory_path() / "grasp_llm_config.json";
  write_file(path, R"({"endpoint":"http://localhost:1/v1/chat/completions","model":"m","max_retries":7,"concurrency":2})");
  const auto c = LlmConfig::load(path);
  EXPECT_EQ(c.max_retries, 7);
  EXPECT_EQ(c.concurrency, 2);
  EXPECT_EQ(c.api_key_env, "GRASP_API_KEY");
  std::filesystem::remove(path);
}

class HttpClientTest : public ::testing::Test {
 protected:
  void SetUp() override {
    server_.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
      last_auth_ = req.get_header_value("Authorization");
      last_body_ = req.body;
      res.status = status_;
      res.set_content(reply_, "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  void TearDown() override {
    server_.stop();
    thread_.join();
  }
  HttpChatClient client() {
    return HttpChatClient("http://127.0.0.1:" + std::to_string(port_) + "/v1/chat/completions", "sk-test");
  }

  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> status_{200};
  std::string reply_ = R"({"choices":[{"message":{"content":"[UP, TAKE]"}}]})";
  std::string last_auth_;
  std::string last_body_;
};

TEST_F(HttpClientTest, PostsChatRequest) {
  auto c = client();
  EXPECT_EQ(c.complete(request()), "[UP, TAKE]");
  EXPECT_EQ(last_auth_, "Bearer sk-test");
  EXPECT_EQ(nlohmann::json::parse(last_body_)["temperature"], 0);
}

TEST_F(HttpClientTest, StatusMapping) {
  auto c = client();
  status_ = 401;
  EXPECT_THROW(c.complete(request()), AuthError);
  status_ = 429;
  EXPECT_THROW(c.complete(request()), RateLimitError);
  status_ = 503;
  EXPECT_THROW(c.complete(request()), TransientError);
  status_ = 200;
  reply_ = "not json";
  EXPECT_THROW(c.complete(request()), MalformedResponseError);
}

TEST(HttpClient, ConnectionRefusedIsTransient) {
  HttpChatClient c("http://127.0.0.1:1/v1/chat/completions", "k");
  EXPECT_THROW(c.complete(request()), TransientError);
}
