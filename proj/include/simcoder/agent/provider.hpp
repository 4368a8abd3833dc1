#pragma once

// Candidate generation: an abstract completion provider, the HTTP
// chat-completions client with retry/backoff and rate limiting, a scripted
// mock for tests, and transcript recording/replay. Recorded transcripts are
// the reproducible substrate: commercial models are not deterministic, a
// replayed run is.

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <filesystem>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "simcoder/agent/prompt.hpp"
#include "simcoder/agent/task.hpp"
#include "simcoder/errors.hpp"

namespace simcoder::agent {

struct AttemptRef {
  std::string task_id;
  uint64_t attempt = 1;  // 1-based
};

class Provider {
 public:
  virtual ~Provider() = default;
  // Returns the raw completion text. Throws Error(ProviderError) once the
  // retry budget is spent.
  virtual std::string complete(const AttemptRef& ref, const Prompt& prompt) = 0;
};

// Extracts candidate source from a completion: the first complete fenced
// block wins; a fence-free completion is taken verbatim (plain-code
// providers); an unterminated fence is rejected.
inline std::string extract_code(const std::string& completion) {
  if (completion.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw Error(ErrorKind::EmptyCompletion, "provider returned an empty completion");
  }
  size_t open = completion.find("```");
  if (open == std::string::npos) return completion;
  size_t body = completion.find('\n', open);
  if (body == std::string::npos) {
    throw Error(ErrorKind::NoCodeBlock, "completion has an unterminated code fence");
  }
  ++body;  // skip the language tag line
  size_t close = completion.find("```", body);
  if (close == std::string::npos) {
    throw Error(ErrorKind::NoCodeBlock, "completion has an unterminated code fence");
  }
  return completion.substr(body, close - body);
}

struct Generated {
  std::string code;
  std::string raw;  // archived alongside
};

inline Generated generate(Provider& provider, const AttemptRef& ref, const Prompt& prompt) {
  Generated g;
  g.raw = provider.complete(ref, prompt);
  g.code = extract_code(g.raw);
  return g;
}

// ---------------------------------------------------------------------------
// Scripted mock: returns a fixed sequence of completions and counts calls.

class MockProvider : public Provider {
 public:
  explicit MockProvider(std::vector<std::string> completions)
      : completions_(std::move(completions)) {}

  std::string complete(const AttemptRef&, const Prompt&) override {
    std::lock_guard<std::mutex> lock(mu_);
    if (calls_ >= completions_.size()) {
      throw Error(ErrorKind::ProviderError, "mock completion sequence exhausted");
    }
    return completions_[calls_++];
  }

  uint64_t calls() const { return calls_; }

 private:
  std::mutex mu_;
  std::vector<std::string> completions_;
  uint64_t calls_ = 0;
};

// ---------------------------------------------------------------------------
// HTTP chat-completions client.

struct ProviderConfig {
  std::string base_url = "http://localhost:8080";
  std::string path = "/v1/chat/completions";
  std::string model = "default";
  std::string api_key_env = "SIMCODER_API_KEY";
  int max_retries = 3;           // on 429 and 5xx
  int timeout_seconds = 120;
  int retry_after_cap_seconds = 30;
  int backoff_base_ms = 250;
  int max_in_flight = 2;
  int min_interval_ms = 0;
};

inline ProviderConfig provider_config_from_json(const nlohmann::json& j) {
  ProviderConfig c;
  try {
    if (j.contains("base_url")) c.base_url = j.at("base_url").get<std::string>();
    if (j.contains("path")) c.path = j.at("path").get<std::string>();
    if (j.contains("model")) c.model = j.at("model").get<std::string>();
    if (j.contains("api_key_env")) c.api_key_env = j.at("api_key_env").get<std::string>();
    if (j.contains("max_retries")) c.max_retries = j.at("max_retries").get<int>();
    if (j.contains("timeout_seconds")) c.timeout_seconds = j.at("timeout_seconds").get<int>();
    if (j.contains("retry_after_cap_seconds")) {
      c.retry_after_cap_seconds = j.at("retry_after_cap_seconds").get<int>();
    }
    if (j.contains("backoff_base_ms")) c.backoff_base_ms = j.at("backoff_base_ms").get<int>();
    if (j.contains("max_in_flight")) c.max_in_flight = j.at("max_in_flight").get<int>();
    if (j.contains("min_interval_ms")) c.min_interval_ms = j.at("min_interval_ms").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::BadValue, std::string("malformed provider config: ") + e.what());
  }
  return c;
}

inline ProviderConfig load_provider_config(const std::filesystem::path& path) {
  try {
    return provider_config_from_json(nlohmann::json::parse(read_text_file(path)));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::BadValue, "provider config '" + path.string() + "': " + e.what());
  }
}

// Shared limiter: bounds in-flight requests and enforces a minimum spacing
// between request starts.
class RateLimiter {
 public:
  RateLimiter(int max_in_flight, int min_interval_ms)
      : max_in_flight_(max_in_flight > 0 ? max_in_flight : 1),
        min_interval_(std::chrono::milliseconds(min_interval_ms)) {}

  void acquire() {
    std::unique_lock<std::mutex> lock(mu_);
    cv_.wait(lock, [&] { return in_flight_ < max_in_flight_; });
    ++in_flight_;
    // Reserve the next start slot while still holding the lock so
    // concurrent callers space out instead of piling onto one slot.
    auto now = std::chrono::steady_clock::now();
    auto start = std::max(now, last_start_ + min_interval_);
    last_start_ = start;
    lock.unlock();
    if (start > now) std::this_thread::sleep_until(start);
  }

  void release() {
    {
      std::lock_guard<std::mutex> lock(mu_);
      --in_flight_;
    }
    cv_.notify_one();
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  int in_flight_ = 0;
  int max_in_flight_;
  std::chrono::milliseconds min_interval_;
  std::chrono::steady_clock::time_point last_start_{};
};

class HttpProvider : public Provider {
 public:
  explicit HttpProvider(ProviderConfig config)
      : config_(std::move(config)), limiter_(config_.max_in_flight, config_.min_interval_ms) {
    const char* key = std::getenv(config_.api_key_env.c_str());
    if (key) api_key_ = key;
  }

  std::string complete(const AttemptRef&, const Prompt& prompt) override;

 private:
  ProviderConfig config_;
  std::string api_key_;
  RateLimiter limiter_;
};

// ---------------------------------------------------------------------------
// Transcripts: one file per attempt, one directory per task.

inline std::filesystem::path transcript_path(const std::filesystem::path& dir,
                                             const AttemptRef& ref) {
  return dir / ref.task_id / ("attempt_" + std::to_string(ref.attempt) + ".json");
}

// Wraps any provider and archives (prompt, completion, timestamp) per
// attempt for later replay.
class RecordingProvider : public Provider {
 public:
  RecordingProvider(Provider& inner, std::filesystem::path dir)
      : inner_(inner), dir_(std::move(dir)) {}

  std::string complete(const AttemptRef& ref, const Prompt& prompt) override {
    std::string completion = inner_.complete(ref, prompt);
    nlohmann::ordered_json j;
    j["task_id"] = ref.task_id;
    j["attempt"] = ref.attempt;
    j["prompt"] = render(prompt);
    j["completion"] = completion;
    j["unix_time"] = std::chrono::duration_cast<std::chrono::seconds>(
                         std::chrono::system_clock::now().time_since_epoch())
                         .count();
    write_text_file(transcript_path(dir_, ref), j.dump(2) + "\n");
    return completion;
  }

 private:
  Provider& inner_;
  std::filesystem::path dir_;
};

// Replays archived transcripts; never touches the network.
class ReplayProvider : public Provider {
 public:
  explicit ReplayProvider(std::filesystem::path dir) : dir_(std::move(dir)) {}

  std::string complete(const AttemptRef& ref, const Prompt&) override {
    auto path = transcript_path(dir_, ref);
    if (!std::filesystem::exists(path)) {
      throw Error(ErrorKind::ProviderError,
                  "no transcript for task '" + ref.task_id + "' attempt " +
                      std::to_string(ref.attempt) + " under " + dir_.string());
    }
    try {
      auto j = nlohmann::json::parse(read_text_file(path));
      return j.at("completion").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::ProviderError, "corrupt transcript '" + path.string() + "': " + e.what());
    }
  }

 private:
  std::filesystem::path dir_;
};

}  // namespace simcoder::agent
