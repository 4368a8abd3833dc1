#pragma once

// Code-generation task schema: a natural-language functional requirement,
// demonstration pairs for in-context prompting, and the oracle-produced
// test vectors the candidate program is judged against. Candidate programs
// read one input document on stdin and print one output document on stdout.

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "simcoder/errors.hpp"

namespace simcoder::agent {

enum class TargetModule { Mapping, Storage, Interconnect };
enum class Granularity { Function, Class, Module };

inline const char* to_token(TargetModule m) {
  switch (m) {
    case TargetModule::Mapping: return "mapping";
    case TargetModule::Storage: return "storage";
    case TargetModule::Interconnect: return "interconnect";
  }
  return "mapping";
}

inline const char* to_token(Granularity g) {
  switch (g) {
    case Granularity::Function: return "function";
    case Granularity::Class: return "class";
    case Granularity::Module: return "module";
  }
  return "function";
}

inline TargetModule parse_target_module(const std::string& s) {
  if (s == "mapping") return TargetModule::Mapping;
  if (s == "storage") return TargetModule::Storage;
  if (s == "interconnect") return TargetModule::Interconnect;
  throw Error(ErrorKind::BadTaskFile, "unknown target_module '" + s + "'");
}

inline Granularity parse_granularity(const std::string& s) {
  if (s == "function") return Granularity::Function;
  if (s == "class") return Granularity::Class;
  if (s == "module") return Granularity::Module;
  throw Error(ErrorKind::BadTaskFile, "unknown granularity '" + s + "'");
}

struct Exemplar {
  std::string input;
  std::string output;
  bool operator==(const Exemplar&) const = default;
};

struct TestVector {
  std::string input;
  std::string expected_output;
  bool operator==(const TestVector&) const = default;
};

struct Task {
  std::string task_id;
  std::string description;
  TargetModule target_module = TargetModule::Mapping;
  Granularity granularity = Granularity::Function;
  std::vector<TestVector> test_vectors;  // non-empty
  std::vector<Exemplar> exemplars;       // inputs disjoint from test vectors

  bool operator==(const Task&) const = default;
};

inline void validate_task(const Task& t) {
  if (t.task_id.empty()) throw Error(ErrorKind::BadTaskFile, "task_id must be non-empty");
  if (t.test_vectors.empty()) {
    throw Error(ErrorKind::BadTaskFile, "task '" + t.task_id + "': test_vectors must be non-empty");
  }
  std::set<std::string> vector_inputs;
  for (const auto& v : t.test_vectors) vector_inputs.insert(v.input);
  for (const auto& e : t.exemplars) {
    if (vector_inputs.count(e.input)) {
      throw Error(ErrorKind::BadTaskFile,
                  "task '" + t.task_id + "': exemplar input duplicates a test vector input");
    }
  }
}

inline Task task_from_json(const nlohmann::json& j) {
  try {
    Task t;
    t.task_id = j.at("task_id").get<std::string>();
    t.description = j.at("description").get<std::string>();
    t.target_module = parse_target_module(j.at("target_module").get<std::string>());
    t.granularity = parse_granularity(j.at("granularity").get<std::string>());
    for (const auto& v : j.at("test_vectors")) {
      t.test_vectors.push_back(
          {v.at("input").get<std::string>(), v.at("expected_output").get<std::string>()});
    }
    if (j.contains("exemplars")) {
      for (const auto& e : j.at("exemplars")) {
        t.exemplars.push_back(
            {e.at("input").get<std::string>(), e.at("output").get<std::string>()});
      }
    }
    validate_task(t);
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::BadTaskFile, std::string("malformed task document: ") + e.what());
  }
}

inline nlohmann::ordered_json task_to_json(const Task& t) {
  nlohmann::ordered_json j;
  j["task_id"] = t.task_id;
  j["description"] = t.description;
  j["target_module"] = to_token(t.target_module);
  j["granularity"] = to_token(t.granularity);
  j["exemplars"] = nlohmann::ordered_json::array();
  for (const auto& e : t.exemplars) {
    j["exemplars"].push_back({{"input", e.input}, {"output", e.output}});
  }
  j["test_vectors"] = nlohmann::ordered_json::array();
  for (const auto& v : t.test_vectors) {
    j["test_vectors"].push_back({{"input", v.input}, {"expected_output", v.expected_output}});
  }
  return j;
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path.string() + "'");
  out << text;
}

inline Task load_task_file(const std::filesystem::path& path) {
  try {
    return task_from_json(nlohmann::json::parse(read_text_file(path)));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::BadTaskFile, "task file '" + path.string() + "': " + e.what());
  }
}

// A bench manifest is a JSON document {"tasks": [<path>, ...]}; relative
// entries resolve against the manifest's own directory.
inline std::vector<std::filesystem::path> load_task_manifest(const std::filesystem::path& path) {
  std::vector<std::filesystem::path> out;
  try {
    auto j = nlohmann::json::parse(read_text_file(path));
    for (const auto& entry : j.at("tasks")) {
      std::filesystem::path p = entry.get<std::string>();
      if (p.is_relative()) p = path.parent_path() / p;
      out.push_back(p);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::BadTaskFile, "manifest '" + path.string() + "': " + e.what());
  }
  return out;
}

}  // namespace simcoder::agent
