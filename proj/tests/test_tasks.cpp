#include <catch2/catch_amalgamated.hpp>

#include "simcoder/agent/sandbox.hpp"
#include "simcoder/agent/task.hpp"

using namespace simcoder;
using namespace simcoder::agent;

TEST_CASE("task documents round-trip through JSON") {
  Task t;
  t.task_id = "storage_f1";
  t.description = "Compute stall cycles.";
  t.target_module = TargetModule::Storage;
  t.granularity = Granularity::Class;
  t.test_vectors = {{"in1", "out1"}, {"in2", "out2"}};
  t.exemplars = {{"ex_in", "ex_out"}};
  Task back = task_from_json(nlohmann::json::parse(task_to_json(t).dump()));
  CHECK(back == t);
}

TEST_CASE("task validation rejects contract violations") {
  nlohmann::json base = {
      {"task_id", "x"},
      {"description", "d"},
      {"target_module", "mapping"},
      {"granularity", "function"},
      {"test_vectors", {{{"input", "a"}, {"expected_output", "b"}}}},
  };

  CHECK_NOTHROW(task_from_json(base));

  auto no_vectors = base;
  no_vectors["test_vectors"] = nlohmann::json::array();
  CHECK_THROWS_AS(task_from_json(no_vectors), Error);

  auto overlapping = base;
  overlapping["exemplars"] = {{{"input", "a"}, {"output", "b"}}};  // same input as a vector
  CHECK_THROWS_AS(task_from_json(overlapping), Error);

  auto bad_module = base;
  bad_module["target_module"] = "networking";
  CHECK_THROWS_AS(task_from_json(bad_module), Error);

  auto bad_granularity = base;
  bad_granularity["granularity"] = "line";
  CHECK_THROWS_AS(task_from_json(bad_granularity), Error);
}

TEST_CASE("manifest paths resolve relative to the manifest") {
  detail::ScratchDir scratch;
  write_text_file(scratch.path / "bench" / "manifest.json",
                  R"({"tasks": ["a.json", "sub/b.json"]})");
  auto paths = load_task_manifest(scratch.path / "bench" / "manifest.json");
  REQUIRE(paths.size() == 2);
  CHECK(paths[0] == scratch.path / "bench" / "a.json");
  CHECK(paths[1] == scratch.path / "bench" / "sub" / "b.json");
}

TEST_CASE("sandbox profile parses with defaults") {
  SandboxProfile p = sandbox_profile_from_json(nlohmann::json::parse(R"({})"));
  CHECK(p.cpu_seconds == 30);
  CHECK(p.memory_mb == 512);
  CHECK(p.extension == ".py");

  SandboxProfile q = sandbox_profile_from_json(nlohmann::json::parse(
      R"({"compile_cmd": "", "run_cmd": "lua {src}", "extension": ".lua", "cpu_seconds": 5})"));
  CHECK(q.compile_cmd.empty());
  CHECK(q.run_cmd == "lua {src}");
  CHECK(q.cpu_seconds == 5);
}
