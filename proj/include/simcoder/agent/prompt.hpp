#pragma once

// Prompt construction for the four prompting strategies. Rendering is
// byte-stable: the golden-prompt tests compare the exact bytes.

#include <string>

#include "simcoder/agent/task.hpp"
#include "simcoder/agent/verdict.hpp"
#include "simcoder/errors.hpp"

namespace simcoder::agent {

enum class PromptStrategy { ZeroShot, Icl, Cot, IclCot };

inline const char* to_token(PromptStrategy s) {
  switch (s) {
    case PromptStrategy::ZeroShot: return "zero_shot";
    case PromptStrategy::Icl: return "icl";
    case PromptStrategy::Cot: return "cot";
    case PromptStrategy::IclCot: return "icl_cot";
  }
  return "zero_shot";
}

inline PromptStrategy parse_strategy(const std::string& s) {
  if (s == "zero_shot") return PromptStrategy::ZeroShot;
  if (s == "icl") return PromptStrategy::Icl;
  if (s == "cot") return PromptStrategy::Cot;
  if (s == "icl_cot") return PromptStrategy::IclCot;
  throw Error(ErrorKind::Usage, "unknown strategy '" + s + "' (expected zero_shot|icl|cot|icl_cot)");
}

struct Prompt {
  std::string system_preamble;
  std::string arch_spec;
  std::string task_body;
  std::string exemplar_block;       // empty when the strategy omits it
  std::string reasoning_directive;  // empty when the strategy omits it
  std::string repair_block;         // set by repair_prompt only

  bool operator==(const Prompt&) const = default;
};

inline constexpr const char* kSystemPreamble =
    "You are an engineer writing small, self-contained components of a "
    "systolic-array accelerator simulator. Write one complete program that "
    "reads its input document from standard input and prints the required "
    "output document to standard output, matching the requested format "
    "exactly. Respond with the program in a single fenced code block.";

inline constexpr const char* kReasoningDirective =
    "Before writing any code, reason through the design step by step: name "
    "the quantities you must compute, derive the formulas or procedure you "
    "will apply, and trace one example input by hand. Only then output the "
    "final program.";

inline std::string render_exemplars(const std::vector<Exemplar>& exemplars) {
  std::string out;
  for (size_t i = 0; i < exemplars.size(); ++i) {
    if (i > 0) out += "\n";
    out += "### Example " + std::to_string(i + 1) + "\nInput:\n```\n";
    out += exemplars[i].input;
    if (!exemplars[i].input.empty() && exemplars[i].input.back() != '\n') out += '\n';
    out += "```\nOutput:\n```\n";
    out += exemplars[i].output;
    if (!exemplars[i].output.empty() && exemplars[i].output.back() != '\n') out += '\n';
    out += "```\n";
  }
  return out;
}

inline Prompt build_prompt(PromptStrategy strategy, const Task& task,
                           const std::string& arch_spec) {
  if (arch_spec.empty()) {
    throw Error(ErrorKind::BadValue, "architecture specification text must be non-empty");
  }
  bool wants_icl = strategy == PromptStrategy::Icl || strategy == PromptStrategy::IclCot;
  bool wants_cot = strategy == PromptStrategy::Cot || strategy == PromptStrategy::IclCot;
  if (wants_icl && task.exemplars.empty()) {
    throw Error(ErrorKind::NoExemplars,
                "task '" + task.task_id + "' has no exemplars for an in-context strategy");
  }

  Prompt p;
  p.system_preamble = kSystemPreamble;
  p.arch_spec = arch_spec;
  p.task_body = task.description;
  if (wants_icl) p.exemplar_block = render_exemplars(task.exemplars);
  if (wants_cot) p.reasoning_directive = kReasoningDirective;
  return p;
}

// The repair prompt keeps every block of the original and carries only the
// most recent candidate plus its diagnostics.
inline Prompt repair_prompt(const Prompt& previous, const std::string& candidate,
                            const EvalResult& result) {
  if (result.verdict == Verdict::Valid) {
    throw Error(ErrorKind::BadValue, "repair_prompt requires a failing evaluation result");
  }
  Prompt p = previous;
  std::string block = "The previous candidate failed evaluation with verdict ";
  block += to_token(result.verdict);
  block += ".\n\n### Candidate\n```\n";
  block += candidate;
  if (!candidate.empty() && candidate.back() != '\n') block += '\n';
  block += "```\n\n### Diagnostics\n```\n";
  block += result.diagnostics;
  if (!result.diagnostics.empty() && result.diagnostics.back() != '\n') block += '\n';
  block += "```\n\nFix the issues the diagnostics describe and respond with the corrected "
           "complete program.\n";
  p.repair_block = block;
  return p;
}

inline std::string render(const Prompt& p) {
  std::string out = p.system_preamble;
  out += "\n\n## Architecture specification\n\n";
  out += p.arch_spec;
  if (out.back() != '\n') out += '\n';
  out += "\n## Task\n\n";
  out += p.task_body;
  if (out.back() != '\n') out += '\n';
  if (!p.exemplar_block.empty()) {
    out += "\n## Worked examples\n\n";
    out += p.exemplar_block;
  }
  if (!p.reasoning_directive.empty()) {
    out += "\n## Reasoning requirement\n\n";
    out += p.reasoning_directive;
    out += '\n';
  }
  if (!p.repair_block.empty()) {
    out += "\n## Previous attempt\n\n";
    out += p.repair_block;
  }
  return out;
}

}  // namespace simcoder::agent
