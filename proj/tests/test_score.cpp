#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "simcoder/agent/score.hpp"

using namespace simcoder;
using namespace simcoder::agent;

namespace {

std::vector<AttemptLog> corpus(uint64_t n, const std::function<void(AttemptLog&, uint64_t)>& fill) {
  std::vector<AttemptLog> logs(n);
  for (uint64_t i = 0; i < n; ++i) {
    logs[i].task_id = "task" + std::to_string(i);
    fill(logs[i], i);
  }
  return logs;
}

}  // namespace

TEST_CASE("published pass rates print exactly") {
  // 126 of 138 within k, then 133 of 138.
  auto logs = corpus(138, [](AttemptLog& log, uint64_t i) {
    log.succeeded = i < 133;
    log.attempts_used = i < 126 ? 1 : 5;
  });
  PassAtKReport at1 = pass_at_k(logs, 1);
  CHECK(at1.c == 126);
  CHECK(at1.n == 138);
  CHECK(pass_rate_string(at1) == "91.30%");

  PassAtKReport at5 = pass_at_k(logs, 5);
  CHECK(at5.c == 133);
  CHECK(pass_rate_string(at5) == "96.38%");
  CHECK(at5.rate == Catch::Approx(133.0 / 138.0));
}

TEST_CASE("all tasks solved on the first attempt scores 1.0 for any k") {
  auto logs = corpus(17, [](AttemptLog& log, uint64_t) {
    log.succeeded = true;
    log.attempts_used = 1;
  });
  for (uint64_t k : {1ull, 2ull, 10ull}) {
    CHECK(pass_at_k(logs, k).rate == 1.0);
  }
}

TEST_CASE("empty corpus is an error") {
  CHECK_THROWS_AS(pass_at_k({}, 1), Error);
}

TEST_CASE("pass@k is non-decreasing in k") {
  std::mt19937_64 rng(20250811);
  for (int round = 0; round < 1000; ++round) {
    uint64_t n = 1 + rng() % 40;
    auto logs = corpus(n, [&](AttemptLog& log, uint64_t) {
      log.attempts_used = 1 + rng() % 6;
      log.succeeded = (rng() % 3) != 0;
    });
    double prev = 0.0;
    for (uint64_t k = 1; k <= 6; ++k) {
      double rate = pass_at_k(logs, k).rate;
      REQUIRE(rate >= prev);
      prev = rate;
    }
  }
}
