#pragma once

#include <string>

namespace simcoder::agent {

enum class Verdict { SyntaxError, RuntimeError, WrongOutput, Timeout, Valid };

inline const char* to_token(Verdict v) {
  switch (v) {
    case Verdict::SyntaxError: return "SYNTAX_ERROR";
    case Verdict::RuntimeError: return "RUNTIME_ERROR";
    case Verdict::WrongOutput: return "WRONG_OUTPUT";
    case Verdict::Timeout: return "TIMEOUT";
    case Verdict::Valid: return "VALID";
  }
  return "RUNTIME_ERROR";
}

// diagnostics is empty exactly when the verdict is Valid.
struct EvalResult {
  Verdict verdict = Verdict::RuntimeError;
  std::string diagnostics;

  bool operator==(const EvalResult&) const = default;
};

}  // namespace simcoder::agent
