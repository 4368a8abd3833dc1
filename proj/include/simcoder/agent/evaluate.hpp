#pragma once

// Two-stage candidate evaluation: a compile/parse syntax check, then one
// sandboxed execution per test vector with output comparison. Diagnostics
// carry the first failure in full so the repair prompt can quote it.

#include <string>
#include <vector>

#include "simcoder/agent/sandbox.hpp"
#include "simcoder/agent/task.hpp"
#include "simcoder/agent/verdict.hpp"
#include "simcoder/errors.hpp"

namespace simcoder::agent {

namespace detail {

// Trailing whitespace per line and trailing blank lines are not meaningful
// in the output documents.
inline std::string normalize_output(std::string_view text) {
  std::string out;
  std::string line;
  for (size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '\n') {
      while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r')) {
        line.pop_back();
      }
      out += line;
      out += '\n';
      line.clear();
      if (i == text.size()) break;
    } else {
      line.push_back(text[i]);
    }
  }
  while (out.size() >= 2 && out[out.size() - 1] == '\n' && out[out.size() - 2] == '\n') {
    out.pop_back();
  }
  if (out == "\n") out.clear();
  return out;
}

inline std::string clip(const std::string& text, size_t limit = 4000) {
  if (text.size() <= limit) return text;
  return text.substr(0, limit) + "\n... (truncated)";
}

}  // namespace detail

struct EvalDetail {
  EvalResult result;
  std::vector<std::string> outputs;  // stdout per passed vector, for persistence
};

inline EvalDetail evaluate_detail(const std::string& candidate, const Task& task,
                                  const SandboxProfile& profile) {
  if (candidate.empty()) {
    throw Error(ErrorKind::BadValue, "candidate source must be non-empty");
  }
  detail::ScratchDir scratch;
  std::filesystem::path src = scratch.path / ("candidate" + profile.extension);
  write_text_file(src, candidate);

  EvalDetail out;

  // Stage 1: syntax via the profile's compile command.
  if (!profile.compile_cmd.empty()) {
    ExecOutcome compiled =
        run_sandboxed(detail::substitute_src(profile.compile_cmd, src.string()), "",
                      profile.cpu_seconds, profile.memory_mb, scratch.path);
    if (compiled.status == ExecOutcome::Status::NotRunnable) {
      throw Error(ErrorKind::SandboxUnavailable,
                  "compile command is not runnable: " + profile.compile_cmd);
    }
    if (compiled.status != ExecOutcome::Status::Exited || compiled.exit_code != 0) {
      out.result.verdict = Verdict::SyntaxError;
      out.result.diagnostics =
          "syntax check failed\n" + detail::clip(compiled.stderr_text + compiled.stdout_text);
      return out;
    }
  }

  // Stage 2: execute per test vector.
  for (size_t i = 0; i < task.test_vectors.size(); ++i) {
    const auto& vec = task.test_vectors[i];
    ExecOutcome ran = run_sandboxed(detail::substitute_src(profile.run_cmd, src.string()),
                                    vec.input, profile.cpu_seconds, profile.memory_mb,
                                    scratch.path);
    std::string label = "test vector " + std::to_string(i + 1);
    switch (ran.status) {
      case ExecOutcome::Status::NotRunnable:
        throw Error(ErrorKind::SandboxUnavailable, "run command is not runnable: " + profile.run_cmd);
      case ExecOutcome::Status::TimedOut:
        out.result.verdict = Verdict::Timeout;
        out.result.diagnostics = label + ": exceeded the " +
                                 std::to_string(profile.cpu_seconds) + "s CPU budget";
        return out;
      case ExecOutcome::Status::Signaled:
        out.result.verdict = Verdict::RuntimeError;
        out.result.diagnostics = label + ": terminated by signal " +
                                 std::to_string(ran.term_signal) + "\n" +
                                 detail::clip(ran.stderr_text);
        return out;
      case ExecOutcome::Status::Exited:
        break;
    }
    if (ran.exit_code != 0) {
      out.result.verdict = Verdict::RuntimeError;
      out.result.diagnostics = label + ": exited with status " + std::to_string(ran.exit_code) +
                               "\n" + detail::clip(ran.stderr_text);
      return out;
    }
    std::string got = detail::normalize_output(ran.stdout_text);
    std::string want = detail::normalize_output(vec.expected_output);
    if (got != want) {
      out.result.verdict = Verdict::WrongOutput;
      out.result.diagnostics = label + ": output mismatch\ninput:\n" + detail::clip(vec.input) +
                               "\nexpected:\n" + detail::clip(want) + "\nactual:\n" +
                               detail::clip(got);
      return out;
    }
    out.outputs.push_back(ran.stdout_text);
  }

  out.result.verdict = Verdict::Valid;
  return out;
}

inline EvalResult evaluate(const std::string& candidate, const Task& task,
                           const SandboxProfile& profile) {
  return evaluate_detail(candidate, task, profile).result;
}

}  // namespace simcoder::agent
