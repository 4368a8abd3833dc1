// Regenerates the bundled sample task corpus and the golden prompt fixtures.
// Expected outputs are computed by the simulator library; rerun this tool
// after changing simulator semantics and commit the refreshed documents.

#include <iostream>

#include "simcoder/agent/prompt.hpp"
#include "task_corpus.hpp"

using namespace simcoder;
using namespace simcoder::agent;

int main(int argc, char** argv) {
  std::filesystem::path tasks_dir = "data/tasks";
  std::filesystem::path golden_dir = "tests/data";
  for (int i = 1; i + 1 < argc; i += 2) {
    std::string flag = argv[i];
    if (flag == "--tasks-dir") tasks_dir = argv[i + 1];
    else if (flag == "--golden-dir") golden_dir = argv[i + 1];
    else {
      std::cerr << "usage: taskgen [--tasks-dir DIR] [--golden-dir DIR]\n";
      return 2;
    }
  }

  nlohmann::ordered_json manifest;
  manifest["tasks"] = nlohmann::ordered_json::array();
  for (const Task& task : tools::build_sample_corpus()) {
    validate_task(task);
    std::string file = task.task_id + ".json";
    write_text_file(tasks_dir / file, task_to_json(task).dump(2) + "\n");
    manifest["tasks"].push_back(file);
  }
  write_text_file(tasks_dir / "manifest.json", manifest.dump(2) + "\n");

  Task golden = tools::golden_task();
  std::string arch = tools::golden_arch_text();
  write_text_file(golden_dir / "golden_task.json", task_to_json(golden).dump(2) + "\n");
  write_text_file(golden_dir / "golden_arch.cfg", arch);
  const std::pair<PromptStrategy, const char*> strategies[] = {
      {PromptStrategy::ZeroShot, "zero_shot"},
      {PromptStrategy::Icl, "icl"},
      {PromptStrategy::Cot, "cot"},
      {PromptStrategy::IclCot, "icl_cot"},
  };
  for (const auto& [strategy, name] : strategies) {
    write_text_file(golden_dir / ("golden_prompt_" + std::string(name) + ".txt"),
                    render(build_prompt(strategy, golden, arch)));
  }

  std::cout << "wrote task corpus to " << tasks_dir << " and goldens to " << golden_dir << "\n";
  return 0;
}
