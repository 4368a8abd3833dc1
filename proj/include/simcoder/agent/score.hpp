#pragma once

// Pass@k: the fraction of tasks whose attempt chain produced a valid
// candidate within the first k generations.

#include <string>
#include <vector>

#include "simcoder/agent/loop.hpp"
#include "simcoder/errors.hpp"
#include "simcoder/report.hpp"

namespace simcoder::agent {

struct PassAtKReport {
  uint64_t k = 0;
  uint64_t n = 0;  // tasks
  uint64_t c = 0;  // tasks solved within k attempts
  double rate = 0.0;  // c / n

  bool operator==(const PassAtKReport&) const = default;
};

inline PassAtKReport pass_at_k(const std::vector<AttemptLog>& logs, uint64_t k) {
  if (logs.empty()) throw Error(ErrorKind::EmptyCorpus, "no attempt logs to score");
  if (k < 1) throw Error(ErrorKind::Usage, "k must be >= 1");
  PassAtKReport rep;
  rep.k = k;
  rep.n = logs.size();
  for (const auto& log : logs) {
    if (log.succeeded && log.attempts_used <= k) ++rep.c;
  }
  rep.rate = static_cast<double>(rep.c) / static_cast<double>(rep.n);
  return rep;
}

// Two-decimal half-up percentage, e.g. 126/138 -> "91.30%".
inline std::string pass_rate_string(const PassAtKReport& rep) {
  return format_percent(percent_hundredths(rep.c, rep.n)) + "%";
}

}  // namespace simcoder::agent
