#pragma once

// The generate -> evaluate -> repair loop for one task, and its log.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "simcoder/agent/evaluate.hpp"
#include "simcoder/agent/prompt.hpp"
#include "simcoder/agent/provider.hpp"
#include "simcoder/agent/task.hpp"
#include "simcoder/digest.hpp"

namespace simcoder::agent {

struct AttemptEntry {
  std::string prompt_digest;
  std::string candidate_digest;
  EvalResult result;

  bool operator==(const AttemptEntry&) const = default;
};

struct AttemptLog {
  std::string task_id;
  std::vector<AttemptEntry> attempts;
  bool succeeded = false;
  uint64_t attempts_used = 0;
  bool aborted = false;       // provider retry budget spent mid-task
  std::string abort_reason;

  bool operator==(const AttemptLog&) const = default;
};

inline nlohmann::ordered_json attempt_log_to_json(const AttemptLog& log) {
  nlohmann::ordered_json j;
  j["task_id"] = log.task_id;
  j["succeeded"] = log.succeeded;
  j["attempts_used"] = log.attempts_used;
  if (log.aborted) j["abort_reason"] = log.abort_reason;
  j["attempts"] = nlohmann::ordered_json::array();
  for (const auto& a : log.attempts) {
    j["attempts"].push_back({{"prompt_digest", a.prompt_digest},
                             {"candidate_digest", a.candidate_digest},
                             {"verdict", to_token(a.result.verdict)},
                             {"diagnostics", a.result.diagnostics}});
  }
  return j;
}

// Runs the attempt chain for one task: build the prompt, generate a
// candidate, evaluate it, and feed failures back as repair prompts until a
// candidate validates or the budget runs out. On success the candidate and
// its per-vector outputs are persisted under artifacts_dir when given.
inline AttemptLog run_task(const Task& task, Provider& provider, PromptStrategy strategy,
                           uint64_t budget, const SandboxProfile& profile,
                           const std::string& arch_spec,
                           const std::optional<std::filesystem::path>& artifacts_dir = {}) {
  if (budget < 1) throw Error(ErrorKind::Usage, "attempt budget must be >= 1");

  AttemptLog log;
  log.task_id = task.task_id;
  Prompt prompt = build_prompt(strategy, task, arch_spec);

  for (uint64_t attempt = 1; attempt <= budget; ++attempt) {
    AttemptRef ref{task.task_id, attempt};
    std::string raw;
    try {
      raw = provider.complete(ref, prompt);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::ProviderError) {
        log.aborted = true;
        log.abort_reason = e.what();
        break;
      }
      throw;
    }

    Generated gen;
    gen.raw = raw;
    try {
      gen.code = extract_code(raw);
    } catch (const Error& e) {
      // The model produced nothing usable; that is a failed attempt, and
      // the raw completion feeds the repair prompt.
      EvalResult bad{Verdict::SyntaxError, e.what()};
      log.attempts.push_back({digest_hex(render(prompt)), digest_hex(raw), bad});
      prompt = repair_prompt(prompt, raw, bad);
      continue;
    }

    EvalDetail detail = evaluate_detail(gen.code, task, profile);
    log.attempts.push_back(
        {digest_hex(render(prompt)), digest_hex(gen.code), detail.result});

    if (detail.result.verdict == Verdict::Valid) {
      log.succeeded = true;
      if (artifacts_dir) {
        auto dir = *artifacts_dir / task.task_id;
        write_text_file(dir / ("candidate" + profile.extension), gen.code);
        write_text_file(dir / "completion.txt", gen.raw);
        for (size_t i = 0; i < detail.outputs.size(); ++i) {
          write_text_file(dir / ("vector_" + std::to_string(i + 1) + ".out"), detail.outputs[i]);
        }
      }
      break;
    }
    prompt = repair_prompt(prompt, gen.code, detail.result);
  }

  log.attempts_used = log.attempts.size();
  return log;
}

}  // namespace simcoder::agent
