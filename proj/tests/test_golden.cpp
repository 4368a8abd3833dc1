#include <catch2/catch_amalgamated.hpp>

#include "simcoder/agent/prompt.hpp"

#ifndef SIMCODER_SOURCE_DIR
#define SIMCODER_SOURCE_DIR "."
#endif

using namespace simcoder;
using namespace simcoder::agent;

namespace {

std::filesystem::path data_dir() {
  return std::filesystem::path(SIMCODER_SOURCE_DIR) / "tests" / "data";
}

}  // namespace

TEST_CASE("golden prompts match byte for byte") {
  Task task = load_task_file(data_dir() / "golden_task.json");
  std::string arch = read_text_file(data_dir() / "golden_arch.cfg");

  const std::pair<PromptStrategy, const char*> strategies[] = {
      {PromptStrategy::ZeroShot, "zero_shot"},
      {PromptStrategy::Icl, "icl"},
      {PromptStrategy::Cot, "cot"},
      {PromptStrategy::IclCot, "icl_cot"},
  };
  for (const auto& [strategy, name] : strategies) {
    std::string rendered = render(build_prompt(strategy, task, arch));
    std::string golden =
        read_text_file(data_dir() / ("golden_prompt_" + std::string(name) + ".txt"));
    INFO("strategy " << name);
    REQUIRE(rendered == golden);
  }

  // Containment: each strategy carries exactly its mandated blocks.
  std::string zero = read_text_file(data_dir() / "golden_prompt_zero_shot.txt");
  std::string icl = read_text_file(data_dir() / "golden_prompt_icl.txt");
  std::string cot = read_text_file(data_dir() / "golden_prompt_cot.txt");
  std::string both = read_text_file(data_dir() / "golden_prompt_icl_cot.txt");

  CHECK(zero.find("Worked examples") == std::string::npos);
  CHECK(zero.find("Reasoning requirement") == std::string::npos);
  CHECK(icl.find("Worked examples") != std::string::npos);
  CHECK(icl.find("Reasoning requirement") == std::string::npos);
  CHECK(cot.find("Worked examples") == std::string::npos);
  CHECK(cot.find("Reasoning requirement") != std::string::npos);
  CHECK(both.find("Worked examples") != std::string::npos);
  CHECK(both.find("Reasoning requirement") != std::string::npos);
  for (const std::string* text : {&zero, &icl, &cot, &both}) {
    CHECK(text->find("array_rows = 8") != std::string::npos);  // arch spec present
    CHECK(text->find("im2col lowering") != std::string::npos);  // task body present
  }
}
