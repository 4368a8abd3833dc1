#include <catch2/catch_amalgamated.hpp>

#include <atomic>
#include <thread>

#include "simcoder/agent/provider_http.hpp"
#include "simcoder/agent/sandbox.hpp"

using namespace simcoder;
using namespace simcoder::agent;

TEST_CASE("code extraction rules") {
  // One fenced block: contents only.
  CHECK(extract_code("Here you go:\n```python\nprint(1)\n```\nEnjoy!") == "print(1)\n");
  // First of several blocks wins.
  CHECK(extract_code("```\na\n```\n```\nb\n```") == "a\n");
  // No fences at all: verbatim.
  CHECK(extract_code("print(2)\n") == "print(2)\n");
  // Unterminated fence.
  CHECK_THROWS_AS(extract_code("```python\nprint(1)"), Error);
  // Empty completion.
  CHECK_THROWS_AS(extract_code("  \n \t"), Error);
}

TEST_CASE("mock provider returns its script verbatim") {
  MockProvider mock({"first", "second"});
  Prompt p;
  CHECK(mock.complete({"t", 1}, p) == "first");
  CHECK(mock.complete({"t", 2}, p) == "second");
  CHECK(mock.calls() == 2);
  CHECK_THROWS_AS(mock.complete({"t", 3}, p), Error);
}

namespace {

struct StubServer {
  httplib::Server server;
  std::thread thread;
  int port = 0;

  explicit StubServer(httplib::Server::Handler handler) {
    server.Post("/v1/chat/completions", std::move(handler));
    port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    thread = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
  }
  ~StubServer() {
    server.stop();
    thread.join();
  }

  ProviderConfig config() const {
    ProviderConfig c;
    c.base_url = "http://127.0.0.1:" + std::to_string(port);
    c.max_retries = 2;
    c.backoff_base_ms = 10;
    c.retry_after_cap_seconds = 1;
    c.timeout_seconds = 5;
    return c;
  }
};

const char* kGoodBody = R"({"choices":[{"message":{"content":"```python\nprint(7)\n```"}}]})";

}  // namespace

TEST_CASE("http provider retries a 429 honoring Retry-After") {
  std::atomic<int> hits{0};
  StubServer stub([&](const httplib::Request&, httplib::Response& res) {
    if (++hits == 1) {
      res.status = 429;
      res.set_header("Retry-After", "0");
      res.set_content("slow down", "text/plain");
    } else {
      res.set_content(kGoodBody, "application/json");
    }
  });
  HttpProvider provider(stub.config());
  Prompt p;
  p.system_preamble = "sys";
  p.arch_spec = "arch";
  p.task_body = "task";
  CHECK(provider.complete({"t", 1}, p) == "```python\nprint(7)\n```");
  CHECK(hits.load() == 2);
}

TEST_CASE("http provider surfaces a provider error after the retry cap") {
  std::atomic<int> hits{0};
  StubServer stub([&](const httplib::Request&, httplib::Response& res) {
    ++hits;
    res.status = 503;
    res.set_content("overloaded", "text/plain");
  });
  HttpProvider provider(stub.config());
  Prompt p;
  try {
    provider.complete({"t", 1}, p);
    FAIL("expected ProviderError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ProviderError);
    CHECK(std::string(e.what()).find("503") != std::string::npos);
  }
  CHECK(hits.load() == 3);  // initial try + max_retries
}

TEST_CASE("http provider sends the chat-completions shape") {
  std::string seen_body;
  std::string seen_auth;
  StubServer stub([&](const httplib::Request& req, httplib::Response& res) {
    seen_body = req.body;
    seen_auth = req.get_header_value("Authorization");
    res.set_content(kGoodBody, "application/json");
  });
  setenv("SIMCODER_API_KEY", "sk-test", 1);
  HttpProvider provider(stub.config());
  Prompt p;
  p.system_preamble = "control instructions";
  p.arch_spec = "rows=2";
  p.task_body = "do the thing";
  provider.complete({"t", 1}, p);
  auto j = nlohmann::json::parse(seen_body);
  REQUIRE(j.at("messages").size() == 2);
  CHECK(j["messages"][0]["role"] == "system");
  CHECK(j["messages"][0]["content"] == "control instructions");
  CHECK(j["messages"][1]["role"] == "user");
  std::string user = j["messages"][1]["content"].get<std::string>();
  CHECK(user.find("rows=2") != std::string::npos);
  CHECK(user.find("do the thing") != std::string::npos);
  CHECK(seen_auth == "Bearer sk-test");
  unsetenv("SIMCODER_API_KEY");
}

TEST_CASE("rate limiter spaces request starts and bounds in-flight work") {
  RateLimiter limiter(2, 30);
  std::atomic<int> in_flight{0};
  std::atomic<int> peak{0};
  std::vector<std::chrono::steady_clock::time_point> starts(6);
  std::mutex mu;

  auto worker = [&](int i) {
    limiter.acquire();
    {
      std::lock_guard<std::mutex> lock(mu);
      starts[static_cast<size_t>(i)] = std::chrono::steady_clock::now();
    }
    int now = ++in_flight;
    int seen = peak.load();
    while (now > seen && !peak.compare_exchange_weak(seen, now)) {
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
    --in_flight;
    limiter.release();
  };
  std::vector<std::thread> threads;
  for (int i = 0; i < 6; ++i) threads.emplace_back(worker, i);
  for (auto& t : threads) t.join();

  CHECK(peak.load() <= 2);
  std::sort(starts.begin(), starts.end());
  for (size_t i = 1; i < starts.size(); ++i) {
    auto gap = std::chrono::duration_cast<std::chrono::milliseconds>(starts[i] - starts[i - 1]);
    CHECK(gap.count() >= 25);  // min interval minus scheduling slack
  }
}

TEST_CASE("recording and replay round-trip a transcript") {
  simcoder::agent::detail::ScratchDir scratch;
  MockProvider mock({"one", "two"});
  RecordingProvider rec(mock, scratch.path);
  Prompt p;
  p.system_preamble = "s";
  p.arch_spec = "a";
  p.task_body = "t";
  CHECK(rec.complete({"task9", 1}, p) == "one");
  CHECK(rec.complete({"task9", 2}, p) == "two");

  ReplayProvider replay(scratch.path);
  CHECK(replay.complete({"task9", 1}, p) == "one");
  CHECK(replay.complete({"task9", 2}, p) == "two");
  CHECK_THROWS_AS(replay.complete({"task9", 3}, p), Error);
  CHECK_THROWS_AS(replay.complete({"other", 1}, p), Error);
}
