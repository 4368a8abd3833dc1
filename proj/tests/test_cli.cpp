#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "simcoder/cli/commands.hpp"

#ifndef SIMCODER_SOURCE_DIR
#define SIMCODER_SOURCE_DIR "."
#endif

using namespace simcoder;
using namespace simcoder::cli;

namespace {

std::filesystem::path source_dir() { return std::filesystem::path(SIMCODER_SOURCE_DIR); }

int call_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("simcoder");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

struct CoutCapture {
  std::ostringstream ss;
  std::streambuf* old;
  CoutCapture() : old(std::cout.rdbuf(ss.rdbuf())) {}
  ~CoutCapture() { std::cout.rdbuf(old); }
  std::string text() const { return ss.str(); }
};

std::set<std::string> dir_entries(const std::filesystem::path& p) {
  std::set<std::string> out;
  for (const auto& e : std::filesystem::recursive_directory_iterator(p)) {
    out.insert(e.path().string());
  }
  return out;
}

// A candidate that answers every test vector of a task via a lookup table;
// used to assemble replay transcripts without a live provider.
std::string lookup_candidate(const agent::Task& task) {
  auto py_repr = [](const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      switch (c) {
        case '\\': out += "\\\\"; break;
        case '"': out += "\\\""; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default: out += c;
      }
    }
    return out + "\"";
  };
  std::string py = "import sys\ndata = sys.stdin.read()\ntable = {}\n";
  for (const auto& v : task.test_vectors) {
    py += "table[" + py_repr(v.input) + "] = " + py_repr(v.expected_output) + "\n";
  }
  for (const auto& e : task.exemplars) {
    py += "table[" + py_repr(e.input) + "] = " + py_repr(e.output) + "\n";
  }
  py += "sys.stdout.write(table[data])\n";
  return "```python\n" + py + "```";
}

}  // namespace

TEST_CASE("help text covers subcommands, flags, and exit codes") {
  std::string help = help_text();
  for (const char* needle :
       {"simulate", "bench", "agent", "report", "--config", "--topology", "--output-dir",
        "--manifest", "--strategy", "--budget", "--provider-config", "--sandbox-profile",
        "--replay", "--jobs", "--seed", "--ours", "--reference", "Exit codes", "0  success",
        "2  usage", "3  input", "4  simulation", "5  provider", "6  sandbox"}) {
    INFO("looking for: " << needle);
    CHECK(help.find(needle) != std::string::npos);
  }
}

TEST_CASE("simulate: empty topology produces a zero-total report") {
  agent::detail::ScratchDir scratch;
  auto topo = scratch.path / "empty.csv";
  agent::write_text_file(topo, std::string(kTopologyHeader) + "\n");
  auto out = scratch.path / "out";

  CoutCapture capture;
  int rc = call_cli({"simulate", "--config",
                     (source_dir() / "data/configs/os_32x32.cfg").string(), "--topology",
                     topo.string(), "--output-dir", out.string()});
  REQUIRE(rc == 0);
  CHECK(capture.text().rfind("empty total_cycles=0", 0) == 0);
  std::string csv = agent::read_text_file(out / "empty_report.csv");
  CHECK(csv.find("TOTAL,0") != std::string::npos);
}

TEST_CASE("simulate: missing topology exits with the input-error code") {
  agent::detail::ScratchDir scratch;
  int rc = call_cli({"simulate", "--config",
                     (source_dir() / "data/configs/os_32x32.cfg").string(), "--topology",
                     (scratch.path / "nope.csv").string(), "--output-dir",
                     (scratch.path / "out").string()});
  CHECK(rc == 3);
}

TEST_CASE("simulate: bad usage exits 2") {
  CHECK(call_cli({"simulate", "--config"}) == 2);
  CHECK(call_cli({"frobnicate"}) == 2);
}

TEST_CASE("simulate: identical runs write byte-identical reports") {
  agent::detail::ScratchDir scratch;
  auto out1 = scratch.path / "a";
  auto out2 = scratch.path / "b";
  for (const auto& out : {out1, out2}) {
    CoutCapture capture;
    REQUIRE(call_cli({"simulate", "--config",
                      (source_dir() / "data/configs/os_32x32.cfg").string(), "--topology",
                      (source_dir() / "data/topologies/tiny_cnn.csv").string(), "--output-dir",
                      out.string()}) == 0);
  }
  CHECK(agent::read_text_file(out1 / "tiny_cnn_report.csv") ==
        agent::read_text_file(out2 / "tiny_cnn_report.csv"));
}

TEST_CASE("simulate writes only under the output directory") {
  agent::detail::ScratchDir scratch;
  auto cwd = scratch.path / "cwd";
  auto out = scratch.path / "out";
  std::filesystem::create_directories(cwd);
  auto old_cwd = std::filesystem::current_path();
  std::filesystem::current_path(cwd);
  auto before = dir_entries(cwd);
  CoutCapture capture;
  int rc = call_cli({"simulate", "--config",
                     (source_dir() / "data/configs/ws_16x16.cfg").string(), "--topology",
                     (source_dir() / "data/topologies/mlp.csv").string(), "--output-dir",
                     out.string()});
  std::filesystem::current_path(old_cwd);
  REQUIRE(rc == 0);
  CHECK(dir_entries(cwd) == before);
  CHECK(std::filesystem::exists(out / "mlp_report.csv"));
}

TEST_CASE("bench: continues past a corrupt topology and reports it") {
  agent::detail::ScratchDir scratch;
  agent::write_text_file(scratch.path / "good1.csv",
                         std::string(kTopologyHeader) + "\nconv,8,8,3,3,2,4,1\n");
  agent::write_text_file(scratch.path / "broken.csv",
                         std::string(kTopologyHeader) + "\nconv,8,8,9,9,2,4,1\n");
  agent::write_text_file(scratch.path / "good2.csv",
                         std::string(kTopologyHeader) + "\nfc,1,1,1,1,64,10,1\n");
  agent::write_text_file(scratch.path / "manifest.txt", "good1.csv\nbroken.csv\ngood2.csv\n");
  auto out = scratch.path / "out";

  CoutCapture capture;
  int rc = call_cli({"bench", "--config", (source_dir() / "data/configs/os_32x32.cfg").string(),
                     "--manifest", (scratch.path / "manifest.txt").string(), "--output-dir",
                     out.string()});
  CHECK(rc == 4);
  std::string summary = agent::read_text_file(out / "bench_summary.csv");
  CHECK(summary.rfind("network,total_cycles,wall_clock_s\n", 0) == 0);
  CHECK(summary.find("good1,") != std::string::npos);
  CHECK(summary.find("broken,ERROR,0") != std::string::npos);
  CHECK(summary.find("good2,") != std::string::npos);
}

TEST_CASE("bench: full sample manifest emits one row per network") {
  agent::detail::ScratchDir scratch;
  auto out = scratch.path / "out";
  CoutCapture capture;
  int rc = call_cli({"bench", "--config", (source_dir() / "data/configs/os_32x32.cfg").string(),
                     "--manifest", (source_dir() / "data/bench/networks.txt").string(),
                     "--output-dir", out.string()});
  REQUIRE(rc == 0);
  std::string summary = agent::read_text_file(out / "bench_summary.csv");
  int rows = 0;
  for (char c : summary) rows += c == '\n';
  CHECK(rows == 5);  // header + 4 networks
}

TEST_CASE("report: compares two summaries with the published rounding") {
  agent::detail::ScratchDir scratch;
  agent::write_text_file(scratch.path / "ours.csv",
                         "network,total_cycles,wall_clock_s\nnetA,552624,0.1\nnetB,1333481,0.2\n");
  agent::write_text_file(scratch.path / "ref.csv",
                         "network,total_cycles,wall_clock_s\nnetA,552616,1.0\nnetB,1338519,2.0\n");
  CoutCapture capture;
  int rc = call_cli({"report", "--ours", (scratch.path / "ours.csv").string(), "--reference",
                     (scratch.path / "ref.csv").string()});
  REQUIRE(rc == 0);
  std::string text = capture.text();
  CHECK(text.find("netA,552624,552616,0.00") != std::string::npos);
  CHECK(text.find("netB,1333481,1338519,0.38") != std::string::npos);
}

TEST_CASE("agent: replay of recorded transcripts reproduces the fixture rate") {
  agent::detail::ScratchDir scratch;
  auto transcripts = scratch.path / "transcripts";
  auto manifest_path = source_dir() / "data/tasks/manifest.json";
  auto task_paths = agent::load_task_manifest(manifest_path);
  REQUIRE(task_paths.size() == 12);

  // 11 of 12 tasks succeed on attempt 1; the last fails all five attempts.
  for (size_t i = 0; i < task_paths.size(); ++i) {
    agent::Task task = agent::load_task_file(task_paths[i]);
    if (i + 1 < task_paths.size()) {
      nlohmann::ordered_json j;
      j["task_id"] = task.task_id;
      j["attempt"] = 1;
      j["prompt"] = "";
      j["completion"] = lookup_candidate(task);
      agent::write_text_file(agent::transcript_path(transcripts, {task.task_id, 1}),
                             j.dump(2) + "\n");
    } else {
      for (uint64_t attempt = 1; attempt <= 5; ++attempt) {
        nlohmann::ordered_json j;
        j["task_id"] = task.task_id;
        j["attempt"] = attempt;
        j["prompt"] = "";
        j["completion"] = "```python\nprint(\"not this\")\n```";
        agent::write_text_file(agent::transcript_path(transcripts, {task.task_id, attempt}),
                               j.dump(2) + "\n");
      }
    }
  }

  auto out = scratch.path / "run";
  CoutCapture capture;
  int rc = call_cli({"agent", "--manifest", manifest_path.string(), "--config",
                     (source_dir() / "data/configs/os_32x32.cfg").string(), "--strategy",
                     "icl_cot", "--budget", "5", "--sandbox-profile",
                     (source_dir() / "data/agent/sandbox_python.json").string(), "--replay",
                     transcripts.string(), "--output-dir", out.string(), "--jobs", "4"});
  REQUIRE(rc == 0);
  std::string text = capture.text();
  CHECK(text.find("icl_cot,91.67%,91.67%") != std::string::npos);

  auto scores = nlohmann::json::parse(agent::read_text_file(out / "pass_at_k.json"));
  CHECK(scores["n"] == 12);
  CHECK(scores["pass_at_1"]["c"] == 11);
  CHECK(scores["pass_at_budget"]["c"] == 11);
  // One attempt log per task, transcripts untouched by replay.
  int log_count = 0;
  for (const auto& e : std::filesystem::directory_iterator(out / "logs")) {
    (void)e;
    ++log_count;
  }
  CHECK(log_count == 12);
}

TEST_CASE("agent: icl_cot prompts carry both blocks into the transcript") {
  agent::detail::ScratchDir scratch;
  // Record with a mock via the library, then inspect the transcript text.
  agent::Task task = agent::load_task_file(source_dir() / "data/tasks/mapping_gemm_dims.json");
  agent::MockProvider mock({lookup_candidate(task)});
  agent::RecordingProvider rec(mock, scratch.path);
  agent::SandboxProfile profile;
  profile.cpu_seconds = 10;
  auto log = agent::run_task(task, rec, agent::PromptStrategy::IclCot, 1, profile,
                             agent::read_text_file(source_dir() / "data/configs/os_32x32.cfg"));
  REQUIRE(log.succeeded);
  auto j = nlohmann::json::parse(
      agent::read_text_file(agent::transcript_path(scratch.path, {task.task_id, 1})));
  std::string prompt = j["prompt"].get<std::string>();
  CHECK(prompt.find("Worked examples") != std::string::npos);
  CHECK(prompt.find("Reasoning requirement") != std::string::npos);
}

TEST_CASE("agent: replay without a transcript directory is a structured error") {
  agent::detail::ScratchDir scratch;
  int rc = call_cli({"agent", "--manifest",
                     (source_dir() / "data/tasks/manifest.json").string(), "--config",
                     (source_dir() / "data/configs/os_32x32.cfg").string(), "--replay",
                     (scratch.path / "missing").string(), "--output-dir",
                     (scratch.path / "out").string()});
  CHECK(rc == 3);
}

TEST_CASE("agent: neither provider config nor replay is a usage error") {
  agent::detail::ScratchDir scratch;
  int rc = call_cli({"agent", "--manifest",
                     (source_dir() / "data/tasks/manifest.json").string(), "--config",
                     (source_dir() / "data/configs/os_32x32.cfg").string(), "--output-dir",
                     (scratch.path / "out").string()});
  CHECK(rc == 2);
}
