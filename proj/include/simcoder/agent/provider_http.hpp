#pragma once

// HttpProvider implementation. Separate header so only the network-facing
// translation units pay for cpp-httplib.

#include <algorithm>

#include <httplib.h>

#include "simcoder/agent/provider.hpp"

namespace simcoder::agent {

inline std::string HttpProvider::complete(const AttemptRef&, const Prompt& prompt) {
  limiter_.acquire();
  struct Release {
    RateLimiter& l;
    ~Release() { l.release(); }
  } release{limiter_};

  // De-facto chat-completions shape: messages in, choices out. The system
  // preamble travels as the system message, the rest as the user message.
  nlohmann::ordered_json body;
  body["model"] = config_.model;
  body["messages"] = nlohmann::ordered_json::array();
  body["messages"].push_back({{"role", "system"}, {"content", prompt.system_preamble}});
  Prompt user_part = prompt;
  user_part.system_preamble.clear();
  std::string user_text = render(user_part);
  size_t skip = user_text.find_first_not_of('\n');  // render leads with the empty preamble
  body["messages"].push_back(
      {{"role", "user"}, {"content", skip == std::string::npos ? "" : user_text.substr(skip)}});
  std::string payload = body.dump();

  std::string last_failure = "no attempt made";
  int server_wait_ms = -1;  // Retry-After, when the server named one
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0) {
      int wait_ms = server_wait_ms >= 0 ? server_wait_ms
                                        : config_.backoff_base_ms * (1 << (attempt - 1));
      wait_ms = std::min(wait_ms, config_.retry_after_cap_seconds * 1000);
      std::this_thread::sleep_for(std::chrono::milliseconds(wait_ms));
      server_wait_ms = -1;
    }

    httplib::Client client(config_.base_url);
    client.set_connection_timeout(config_.timeout_seconds, 0);
    client.set_read_timeout(config_.timeout_seconds, 0);
    httplib::Headers headers;
    if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

    auto res = client.Post(config_.path, headers, payload, "application/json");
    if (!res) {
      last_failure = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 429 || res->status >= 500) {
      last_failure = "HTTP " + std::to_string(res->status) + ": " + res->body;
      if (res->has_header("Retry-After")) {
        try {
          server_wait_ms = std::stoi(res->get_header_value("Retry-After")) * 1000;
        } catch (...) {
          server_wait_ms = -1;
        }
      }
      continue;
    }
    if (res->status >= 400) {  // other 4xx: not retryable
      throw Error(ErrorKind::ProviderError,
                  "HTTP " + std::to_string(res->status) + ": " + res->body);
    }
    try {
      auto j = nlohmann::json::parse(res->body);
      return j.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::ProviderError,
                  std::string("malformed completion response: ") + e.what());
    }
  }
  throw Error(ErrorKind::ProviderError,
              "retries exhausted after " + std::to_string(config_.max_retries + 1) +
                  " attempts; last failure: " + last_failure);
}

}  // namespace simcoder::agent
