#pragma once

// Architecture specifications and workload topologies: the two input
// documents of every simulation run, plus their parsers and serializers.
//
// Config grammar: UTF-8, one `key = value` per line, `#` starts a comment.
// Topology grammar: CSV with a header row and exactly eight columns
//   layer_name,ifmap_h,ifmap_w,filter_h,filter_w,channels,num_filters,stride
// Trailing commas and surrounding whitespace are tolerated.

#include <charconv>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "simcoder/errors.hpp"

namespace simcoder {

enum class Dataflow { OutputStationary, WeightStationary, InputStationary };

inline std::string_view dataflow_token(Dataflow df) {
  switch (df) {
    case Dataflow::OutputStationary: return "os";
    case Dataflow::WeightStationary: return "ws";
    case Dataflow::InputStationary: return "is";
  }
  return "os";
}

inline Dataflow parse_dataflow(std::string_view token) {
  if (token == "os") return Dataflow::OutputStationary;
  if (token == "ws") return Dataflow::WeightStationary;
  if (token == "is") return Dataflow::InputStationary;
  throw Error(ErrorKind::UnknownDataflow,
              "unknown dataflow token '" + std::string(token) + "' (expected os|ws|is)");
}

struct ArchConfig {
  uint64_t array_rows = 0;   // PEs
  uint64_t array_cols = 0;   // PEs
  uint64_t ifmap_sram_bytes = 0;
  uint64_t filter_sram_bytes = 0;
  uint64_t ofmap_sram_bytes = 0;
  Dataflow dataflow = Dataflow::OutputStationary;
  uint64_t dram_bandwidth = 0;  // words per cycle
  uint64_t word_size = 1;       // bytes per word
  // Optional edge-port overrides for the interconnect model; 0 means
  // "derive from array geometry".
  uint64_t row_ports = 0;
  uint64_t col_ports = 0;
  uint64_t drain_ports = 0;

  bool operator==(const ArchConfig&) const = default;
};

struct LayerDescriptor {
  std::string name;
  uint64_t ifmap_h = 1;
  uint64_t ifmap_w = 1;
  uint64_t filter_h = 1;
  uint64_t filter_w = 1;
  uint64_t channels = 1;
  uint64_t num_filters = 1;
  uint64_t stride = 1;

  bool operator==(const LayerDescriptor&) const = default;
};

struct WorkloadTopology {
  std::string network_name;
  std::vector<LayerDescriptor> layers;  // file row order

  bool operator==(const WorkloadTopology&) const = default;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return lines;
}

inline bool parse_u64(std::string_view s, uint64_t& out) {
  s = trim(s);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace detail

inline ArchConfig parse_arch_config(std::string_view text) {
  std::unordered_map<std::string, std::string> kv;
  int line_no = 0;
  for (std::string_view raw : detail::split_lines(text)) {
    ++line_no;
    std::string_view line = raw;
    if (size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = detail::trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::BadValue,
                  "line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    std::string key(detail::trim(line.substr(0, eq)));
    std::string value(detail::trim(line.substr(eq + 1)));
    if (key.empty()) {
      throw Error(ErrorKind::BadValue, "line " + std::to_string(line_no) + ": empty key");
    }
    if (!kv.emplace(key, value).second) {
      throw Error(ErrorKind::BadValue, "duplicate key '" + key + "'");
    }
  }

  auto require = [&](const char* key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) {
      throw Error(ErrorKind::MissingKey, std::string("missing required key '") + key + "'");
    }
    return it->second;
  };
  auto get_u64 = [&](const char* key, const std::string& value) {
    uint64_t v = 0;
    if (!detail::parse_u64(value, v)) {
      throw Error(ErrorKind::BadValue,
                  std::string("key '") + key + "': not a non-negative integer: '" + value + "'");
    }
    return v;
  };

  ArchConfig cfg;
  cfg.array_rows = get_u64("array_rows", require("array_rows"));
  cfg.array_cols = get_u64("array_cols", require("array_cols"));
  cfg.dataflow = parse_dataflow(require("dataflow"));
  cfg.ifmap_sram_bytes = get_u64("ifmap_sram_kb", require("ifmap_sram_kb")) * 1024;
  cfg.filter_sram_bytes = get_u64("filter_sram_kb", require("filter_sram_kb")) * 1024;
  cfg.ofmap_sram_bytes = get_u64("ofmap_sram_kb", require("ofmap_sram_kb")) * 1024;
  cfg.dram_bandwidth =
      get_u64("dram_bandwidth_words_per_cycle", require("dram_bandwidth_words_per_cycle"));
  if (auto it = kv.find("word_size_bytes"); it != kv.end()) {
    cfg.word_size = get_u64("word_size_bytes", it->second);
  }
  if (auto it = kv.find("row_ports"); it != kv.end()) {
    cfg.row_ports = get_u64("row_ports", it->second);
  }
  if (auto it = kv.find("col_ports"); it != kv.end()) {
    cfg.col_ports = get_u64("col_ports", it->second);
  }
  if (auto it = kv.find("drain_ports"); it != kv.end()) {
    cfg.drain_ports = get_u64("drain_ports", it->second);
  }

  static const std::unordered_set<std::string> known = {
      "array_rows",     "array_cols", "dataflow",  "ifmap_sram_kb",
      "filter_sram_kb", "ofmap_sram_kb", "dram_bandwidth_words_per_cycle",
      "word_size_bytes", "row_ports", "col_ports", "drain_ports"};
  for (const auto& [key, value] : kv) {
    if (!known.count(key)) {
      throw Error(ErrorKind::BadValue, "unknown key '" + key + "'");
    }
  }

  if (cfg.array_rows < 1) throw Error(ErrorKind::BadValue, "array_rows must be >= 1");
  if (cfg.array_cols < 1) throw Error(ErrorKind::BadValue, "array_cols must be >= 1");
  if (cfg.word_size < 1) throw Error(ErrorKind::BadValue, "word_size_bytes must be >= 1");
  if (cfg.dram_bandwidth < 1) {
    throw Error(ErrorKind::BadValue, "dram_bandwidth_words_per_cycle must be > 0");
  }
  if (cfg.ifmap_sram_bytes < cfg.word_size) {
    throw Error(ErrorKind::BadValue, "ifmap_sram_kb too small to hold one word");
  }
  if (cfg.filter_sram_bytes < cfg.word_size) {
    throw Error(ErrorKind::BadValue, "filter_sram_kb too small to hold one word");
  }
  if (cfg.ofmap_sram_bytes < cfg.word_size) {
    throw Error(ErrorKind::BadValue, "ofmap_sram_kb too small to hold one word");
  }
  return cfg;
}

inline std::string serialize_arch_config(const ArchConfig& cfg) {
  std::ostringstream os;
  os << "array_rows = " << cfg.array_rows << "\n";
  os << "array_cols = " << cfg.array_cols << "\n";
  os << "dataflow = " << dataflow_token(cfg.dataflow) << "\n";
  os << "ifmap_sram_kb = " << cfg.ifmap_sram_bytes / 1024 << "\n";
  os << "filter_sram_kb = " << cfg.filter_sram_bytes / 1024 << "\n";
  os << "ofmap_sram_kb = " << cfg.ofmap_sram_bytes / 1024 << "\n";
  os << "dram_bandwidth_words_per_cycle = " << cfg.dram_bandwidth << "\n";
  os << "word_size_bytes = " << cfg.word_size << "\n";
  if (cfg.row_ports) os << "row_ports = " << cfg.row_ports << "\n";
  if (cfg.col_ports) os << "col_ports = " << cfg.col_ports << "\n";
  if (cfg.drain_ports) os << "drain_ports = " << cfg.drain_ports << "\n";
  return os.str();
}

inline constexpr const char* kTopologyHeader =
    "layer_name,ifmap_h,ifmap_w,filter_h,filter_w,channels,num_filters,stride";

inline WorkloadTopology parse_topology_csv(std::string_view text,
                                           std::string_view network_name = "") {
  WorkloadTopology topo;
  topo.network_name = std::string(network_name);

  auto lines = detail::split_lines(text);
  // Drop trailing blank lines so a final newline is not a row.
  while (!lines.empty() && detail::trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) {
    throw Error(ErrorKind::BadRow, "row 1: missing header row");
  }

  std::unordered_set<std::string> seen;
  static const char* kColumns[] = {"layer_name", "ifmap_h",  "ifmap_w",     "filter_h",
                                   "filter_w",   "channels", "num_filters", "stride"};
  for (size_t i = 1; i < lines.size(); ++i) {
    int line_no = static_cast<int>(i) + 1;
    std::string_view line = detail::trim(lines[i]);
    if (line.empty()) continue;

    std::vector<std::string_view> fields;
    size_t pos = 0;
    while (true) {
      size_t comma = line.find(',', pos);
      if (comma == std::string_view::npos) {
        fields.push_back(detail::trim(line.substr(pos)));
        break;
      }
      fields.push_back(detail::trim(line.substr(pos, comma - pos)));
      pos = comma + 1;
    }
    // Tolerate one trailing comma.
    if (fields.size() == 9 && fields.back().empty()) fields.pop_back();
    if (fields.size() != 8) {
      throw Error(ErrorKind::BadRow, "row " + std::to_string(line_no) + ": expected 8 columns, got " +
                                         std::to_string(fields.size()));
    }

    LayerDescriptor layer;
    layer.name = std::string(fields[0]);
    if (layer.name.empty()) {
      throw Error(ErrorKind::BadRow, "row " + std::to_string(line_no) + ": empty layer name");
    }
    uint64_t* slots[] = {nullptr,          &layer.ifmap_h,  &layer.ifmap_w,
                         &layer.filter_h,  &layer.filter_w, &layer.channels,
                         &layer.num_filters, &layer.stride};
    for (size_t col = 1; col < 8; ++col) {
      if (!detail::parse_u64(fields[col], *slots[col])) {
        throw Error(ErrorKind::NonNumericField, "row " + std::to_string(line_no) + ", column '" +
                                                    kColumns[col] + "': non-numeric value '" +
                                                    std::string(fields[col]) + "'");
      }
    }

    auto bad = [&](const std::string& why) {
      return Error(ErrorKind::BadRow,
                   "row " + std::to_string(line_no) + " (" + layer.name + "): " + why);
    };
    if (layer.ifmap_h < 1 || layer.ifmap_w < 1 || layer.filter_h < 1 || layer.filter_w < 1 ||
        layer.channels < 1 || layer.num_filters < 1 || layer.stride < 1) {
      throw bad("all dimensions must be >= 1");
    }
    if (layer.filter_h > layer.ifmap_h) throw bad("filter_h exceeds ifmap_h");
    if (layer.filter_w > layer.ifmap_w) throw bad("filter_w exceeds ifmap_w");
    if (!seen.insert(layer.name).second) {
      throw Error(ErrorKind::DuplicateLayerName, "duplicate layer name '" + layer.name + "'");
    }
    topo.layers.push_back(std::move(layer));
  }
  return topo;
}

inline std::string serialize_topology_csv(const WorkloadTopology& topo) {
  std::ostringstream os;
  os << kTopologyHeader << "\n";
  for (const auto& l : topo.layers) {
    os << l.name << ',' << l.ifmap_h << ',' << l.ifmap_w << ',' << l.filter_h << ','
       << l.filter_w << ',' << l.channels << ',' << l.num_filters << ',' << l.stride << "\n";
  }
  return os.str();
}

}  // namespace simcoder
