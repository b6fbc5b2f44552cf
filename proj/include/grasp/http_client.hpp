#pragma once

// Kept out of the other headers: pulls in cpp-httplib and OpenSSL.

#include <cstdlib>
#include <string>

#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

#include "grasp/llm_client.hpp"

namespace grasp {

/// POSTs chat-completions requests to an OpenAI-compatible endpoint.
class HttpChatClient : public ChatClient {
 public:
  HttpChatClient(std::string endpoint, std::string api_key) : api_key_(std::move(api_key)) {
    // split "scheme://host[:port]/path"
    const auto scheme_end = endpoint.find("://");
    const auto path_start = endpoint.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
    base_ = endpoint.substr(0, path_start);
    path_ = path_start == std::string::npos ? "/" : endpoint.substr(path_start);
  }

  static HttpChatClient from_config(const LlmConfig& config) {
    const char* key = std::getenv(config.api_key_env.c_str());
    if (key == nullptr || *key == '\0')
      throw std::runtime_error("environment variable " + config.api_key_env + " is not set");
    return HttpChatClient(config.endpoint, key);
  }

  std::string complete(const ChatRequest& request) override {
    httplib::Client client(base_);
    client.set_read_timeout(120, 0);
    client.set_bearer_token_auth(api_key_);
    const auto res = client.Post(path_, request_body(request.prompt).dump(), "application/json");
    if (!res) throw TransientError(request.instance_id, "transport error: " + httplib::to_string(res.error()));
    if (res->status == 401 || res->status == 403)
      throw AuthError(request.instance_id, "authentication failed (HTTP " + std::to_string(res->status) + ")");
    if (res->status == 429) throw RateLimitError(request.instance_id, "rate limited");
    if (res->status >= 500) throw TransientError(request.instance_id, "server error HTTP " + std::to_string(res->status));
    if (res->status != 200)
      throw LlmError(request.instance_id, "HTTP " + std::to_string(res->status) + ": " + res->body);
    nlohmann::json body;
    try {
      body = nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::exception&) {
      throw MalformedResponseError(request.instance_id, "response is not JSON");
    }
    return response_text(body, request.instance_id);
  }

 private:
  std::string base_;
  std::string path_;
  std::string api_key_;
};

}  // namespace grasp
