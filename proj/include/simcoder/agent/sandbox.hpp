#pragma once

// Candidate programs run in an isolated child process: own process group,
// CPU-time and address-space rlimits, stdin fed from a file, stdout/stderr
// captured to files, hard wall-clock kill as a backstop. Nothing a
// candidate does can take the host process down with it.

#include <fcntl.h>
#include <signal.h>
#include <sys/resource.h>
#include <sys/stat.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <thread>

#include <json.hpp>

#include "simcoder/agent/task.hpp"
#include "simcoder/errors.hpp"

namespace simcoder::agent {

// Compile/run command templates with a {src} placeholder; the candidate
// implementation language is a per-run configuration.
struct SandboxProfile {
  std::string compile_cmd = "python3 -m py_compile {src}";
  std::string run_cmd = "python3 {src}";
  std::string extension = ".py";
  uint64_t cpu_seconds = 30;
  uint64_t memory_mb = 512;
};

inline SandboxProfile sandbox_profile_from_json(const nlohmann::json& j) {
  SandboxProfile p;
  try {
    if (j.contains("compile_cmd")) p.compile_cmd = j.at("compile_cmd").get<std::string>();
    if (j.contains("run_cmd")) p.run_cmd = j.at("run_cmd").get<std::string>();
    if (j.contains("extension")) p.extension = j.at("extension").get<std::string>();
    if (j.contains("cpu_seconds")) p.cpu_seconds = j.at("cpu_seconds").get<uint64_t>();
    if (j.contains("memory_mb")) p.memory_mb = j.at("memory_mb").get<uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::BadValue, std::string("malformed sandbox profile: ") + e.what());
  }
  return p;
}

inline SandboxProfile load_sandbox_profile(const std::filesystem::path& path) {
  try {
    return sandbox_profile_from_json(nlohmann::json::parse(read_text_file(path)));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::BadValue, "sandbox profile '" + path.string() + "': " + e.what());
  }
}

struct ExecOutcome {
  enum class Status { Exited, Signaled, TimedOut, NotRunnable };
  Status status = Status::Exited;
  int exit_code = 0;
  int term_signal = 0;
  std::string stdout_text;
  std::string stderr_text;
};

namespace detail {

inline std::string substitute_src(const std::string& tmpl, const std::string& src) {
  std::string out = tmpl;
  const std::string key = "{src}";
  size_t pos;
  while ((pos = out.find(key)) != std::string::npos) out.replace(pos, key.size(), src);
  return out;
}

// Candidates run inside the scratch directory and may delete anything in
// it, including their own capture files; treat a vanished file as empty
// output rather than a host error.
inline std::string read_file_or_empty(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return "";
  try {
    return read_text_file(path);
  } catch (const Error&) {
    return "";
  }
}

// Scratch directory removed on scope exit.
struct ScratchDir {
  std::filesystem::path path;
  ScratchDir() {
    std::string tmpl = (std::filesystem::temp_directory_path() / "simcoder-XXXXXX").string();
    if (!mkdtemp(tmpl.data())) {
      throw Error(ErrorKind::SandboxUnavailable, "cannot create sandbox scratch directory");
    }
    path = tmpl;
  }
  ~ScratchDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;
};

}  // namespace detail

// Runs `command` under /bin/sh with rlimits applied, feeding stdin_text and
// capturing both output streams. The wall-clock backstop triggers slightly
// after the CPU budget so sleeping candidates terminate too.
inline ExecOutcome run_sandboxed(const std::string& command, const std::string& stdin_text,
                                 uint64_t cpu_seconds, uint64_t memory_mb,
                                 const std::filesystem::path& workdir) {
  namespace fs = std::filesystem;
  fs::path in_path = workdir / "stdin.txt";
  fs::path out_path = workdir / "stdout.txt";
  fs::path err_path = workdir / "stderr.txt";
  write_text_file(in_path, stdin_text);
  write_text_file(out_path, "");
  write_text_file(err_path, "");

  pid_t pid = fork();
  if (pid < 0) throw Error(ErrorKind::SandboxUnavailable, "fork failed");
  if (pid == 0) {
    setsid();  // own process group so the backstop can kill the whole tree
    int in_fd = open(in_path.c_str(), O_RDONLY);
    int out_fd = open(out_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    int err_fd = open(err_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    if (in_fd < 0 || out_fd < 0 || err_fd < 0) _exit(126);
    dup2(in_fd, STDIN_FILENO);
    dup2(out_fd, STDOUT_FILENO);
    dup2(err_fd, STDERR_FILENO);

    rlimit cpu{cpu_seconds, cpu_seconds + 1};
    setrlimit(RLIMIT_CPU, &cpu);
    rlim_t bytes = static_cast<rlim_t>(memory_mb) * 1024 * 1024;
    rlimit mem{bytes, bytes};
    setrlimit(RLIMIT_AS, &mem);
    rlimit core{0, 0};
    setrlimit(RLIMIT_CORE, &core);
    rlim_t fsz = 64ull * 1024 * 1024;
    rlimit fsize{fsz, fsz};
    setrlimit(RLIMIT_FSIZE, &fsize);

    if (chdir(workdir.c_str()) != 0) _exit(126);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }

  const auto deadline =
      std::chrono::steady_clock::now() + std::chrono::seconds(cpu_seconds + 2);
  bool killed = false;
  int status = 0;
  while (true) {
    pid_t done = waitpid(pid, &status, WNOHANG);
    if (done == pid) break;
    if (done < 0) throw Error(ErrorKind::SandboxUnavailable, "waitpid failed");
    if (!killed && std::chrono::steady_clock::now() >= deadline) {
      kill(-pid, SIGKILL);
      killed = true;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }

  ExecOutcome out;
  out.stdout_text = detail::read_file_or_empty(out_path);
  out.stderr_text = detail::read_file_or_empty(err_path);
  if (killed) {
    out.status = ExecOutcome::Status::TimedOut;
    return out;
  }
  if (WIFSIGNALED(status)) {
    out.term_signal = WTERMSIG(status);
    // A CPU-rlimit kill is a timeout, not a crash.
    out.status = (out.term_signal == SIGXCPU || out.term_signal == SIGKILL)
                     ? ExecOutcome::Status::TimedOut
                     : ExecOutcome::Status::Signaled;
    return out;
  }
  out.exit_code = WEXITSTATUS(status);
  if (out.exit_code == 126 || out.exit_code == 127) {
    out.status = ExecOutcome::Status::NotRunnable;  // environment, not candidate
    return out;
  }
  if (out.exit_code > 128 && out.exit_code <= 128 + 64) {
    // The shell reports a signal-killed command as 128+signo.
    out.term_signal = out.exit_code - 128;
    out.exit_code = 0;
    out.status = (out.term_signal == SIGXCPU || out.term_signal == SIGKILL)
                     ? ExecOutcome::Status::TimedOut
                     : ExecOutcome::Status::Signaled;
    return out;
  }
  out.status = ExecOutcome::Status::Exited;
  return out;
}

}  // namespace simcoder::agent
