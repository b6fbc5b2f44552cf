#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include <json.hpp>

#include "grasp/prompt.hpp"

namespace grasp {

/// Base for all model-call failures. Carries the instance the call was for.
class LlmError : public std::runtime_error {
 public:
  LlmError(std::string instance_id, const std::string& what)
      : std::runtime_error(instance_id + ": " + what), instance_id_(std::move(instance_id)) {}
  const std::string& instance_id() const noexcept { return instance_id_; }

 private:
  std::string instance_id_;
};

/// Network-level failure or 5xx; retried.
class TransientError : public LlmError {
  using LlmError::LlmError;
};
/// HTTP 429; retried, surfaced as RateLimitError once retries run out.
class RateLimitError : public LlmError {
  using LlmError::LlmError;
};
class AuthError : public LlmError {
  using LlmError::LlmError;
};
class MalformedResponseError : public LlmError {
  using LlmError::LlmError;
};
class RetriesExhaustedError : public LlmError {
  using LlmError::LlmError;
};

struct ChatRequest {
  std::string instance_id;
  PromptBundle prompt;
};

/// Chat-completions wire body: model, temperature 0, [system, user].
inline nlohmann::json request_body(const PromptBundle& p) {
  return {{"model", p.model},
          {"temperature", 0},
          {"messages",
           nlohmann::json::array({{{"role", "system"}, {"content", p.system}}, {{"role", "user"}, {"content", p.user}}})}};
}

/// choices[0].message.content of a chat-completions response.
inline std::string response_text(const nlohmann::json& body, const std::string& instance_id) {
  try {
    const auto& content = body.at("choices").at(0).at("message").at("content");
    if (!content.is_string()) throw MalformedResponseError(instance_id, "message content is not a string");
    return content.get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw MalformedResponseError(instance_id, std::string("unexpected response shape: ") + e.what());
  }
}

/// One chat completion. Implementations must be safe to call from several
/// threads at once.
class ChatClient {
 public:
  virtual ~ChatClient() = default;
  virtual std::string complete(const ChatRequest& request) = 0;
};

/// Replays responses recorded per instance id. File layout:
///   { "responses": { "<instance id>": "<raw text>", ... } }
class CassetteClient : public ChatClient {
 public:
  explicit CassetteClient(std::map<std::string, std::string> responses) : responses_(std::move(responses)) {}

  static CassetteClient load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open cassette " + path.string());
    const auto j = nlohmann::json::parse(in);
    return CassetteClient(j.at("responses").get<std::map<std::string, std::string>>());
  }

  std::string complete(const ChatRequest& request) override {
    const auto it = responses_.find(request.instance_id);
    if (it == responses_.end()) throw LlmError(request.instance_id, "no recorded response in cassette");
    return it->second;
  }

  const std::map<std::string, std::string>& responses() const noexcept { return responses_; }

 private:
  std::map<std::string, std::string> responses_;
};

/// Wraps another client and keeps every response so it can be saved as a cassette.
class RecordingClient : public ChatClient {
 public:
  explicit RecordingClient(ChatClient& inner) : inner_(inner) {}

  std::string complete(const ChatRequest& request) override {
    std::string text = inner_.complete(request);
    std::lock_guard lock(mutex_);
    recorded_[request.instance_id] = text;
    return text;
  }

  void save(const std::filesystem::path& path) const {
    std::lock_guard lock(mutex_);
    std::ofstream out(path);
    out << nlohmann::json{{"responses", recorded_}}.dump(2) << '\n';
  }

 private:
  ChatClient& inner_;
  mutable std::mutex mutex_;
  std::map<std::string, std::string> recorded_;
};

/// Appends every request and its outcome to a JSONL audit file.
class AuditingClient : public ChatClient {
 public:
  AuditingClient(ChatClient& inner, const std::filesystem::path& path) : inner_(inner), out_(path, std::ios::app) {
    if (!out_) throw std::runtime_error("cannot open audit log " + path.string());
  }

  std::string complete(const ChatRequest& request) override {
    nlohmann::json entry{{"instance_id", request.instance_id}, {"request", request_body(request.prompt)}};
    try {
      std::string text = inner_.complete(request);
      entry["response"] = text;
      write(entry);
      return text;
    } catch (const std::exception& e) {
      entry["error"] = e.what();
      write(entry);
      throw;
    }
  }

 private:
  void write(const nlohmann::json& entry) {
    std::lock_guard lock(mutex_);
    out_ << entry.dump() << '\n';
    out_.flush();
  }

  ChatClient& inner_;
  std::mutex mutex_;
  std::ofstream out_;
};

struct RetryPolicy {
  int max_retries = 4;
  std::chrono::milliseconds base_delay{500};
  double multiplier = 2.0;
};

using Sleeper = std::function<void(std::chrono::milliseconds)>;

inline void real_sleep(std::chrono::milliseconds d) { std::this_thread::sleep_for(d); }

/// Calls the client, retrying transient and rate-limit failures with
/// exponential backoff. Auth and malformed-response errors are not retried.
inline std::string query_model(ChatClient& client, const ChatRequest& request, const RetryPolicy& policy = {},
                               const Sleeper& sleep = real_sleep) {
  auto delay = policy.base_delay;
  for (int attempt = 0;; ++attempt) {
    try {
      return client.complete(request);
    } catch (const RateLimitError&) {
      if (attempt >= policy.max_retries)
        throw RateLimitError(request.instance_id, "rate limited after " + std::to_string(attempt + 1) + " attempts");
    } catch (const TransientError& e) {
      if (attempt >= policy.max_retries)
        throw RetriesExhaustedError(request.instance_id,
                                    "gave up after " + std::to_string(attempt + 1) + " attempts: " + e.what());
    }
    sleep(delay);
    delay = std::chrono::milliseconds(static_cast<long long>(static_cast<double>(delay.count()) * policy.multiplier));
  }
}

/// Client settings, read from a JSON config file. The credential comes from
/// the environment variable named by `api_key_env`.
struct LlmConfig {
  std::string endpoint = "https://api.openai.com/v1/chat/completions";
  std::string model;
  int max_retries = 4;
  int concurrency = 4;
  std::string cassette_path;
  std::string api_key_env = "GRASP_API_KEY";

  static LlmConfig load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open LLM config " + path.string());
    const auto j = nlohmann::json::parse(in);
    LlmConfig c;
    c.endpoint = j.value("endpoint", c.endpoint);
    c.model = j.value("model", c.model);
    c.max_retries = j.value("max_retries", c.max_retries);
    c.concurrency = j.value("concurrency", c.concurrency);
    c.cassette_path = j.value("cassette_path", c.cassette_path);
    c.api_key_env = j.value("api_key_env", c.api_key_env);
    return c;
  }
};

}  // namespace grasp
