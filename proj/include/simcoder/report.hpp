#pragma once

// Per-layer and per-run result aggregation, the cycle-error metric, and
// deterministic CSV emission. All number formatting is locale-independent.

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "simcoder/errors.hpp"
#include "simcoder/memory.hpp"

namespace simcoder {

struct LayerReport {
  std::string layer_name;
  uint64_t total_cycles = 0;  // compute_cycles + stall_cycles
  uint64_t compute_cycles = 0;
  uint64_t stall_cycles = 0;
  double utilization = 0.0;
  TrafficReport traffic;

  bool operator==(const LayerReport&) const = default;
};

struct RunReport {
  std::string network_name;
  std::vector<LayerReport> layers;
  uint64_t total_cycles = 0;  // exact sum of layer totals
  double wall_clock_seconds = 0.0;

  bool operator==(const RunReport&) const = default;
};

inline RunReport aggregate(std::vector<LayerReport> layers, std::string network_name,
                           double wall_clock_seconds) {
  RunReport run;
  run.network_name = std::move(network_name);
  run.layers = std::move(layers);
  run.wall_clock_seconds = wall_clock_seconds;
  for (const auto& l : run.layers) run.total_cycles += l.total_cycles;
  return run;
}

// Percentage of num/den in hundredths of a percent, rounded half-up.
// Shared by the error metric and Pass@k so both print identically.
inline uint64_t percent_hundredths(uint64_t num, uint64_t den) {
  if (den == 0) throw Error(ErrorKind::DivisionByZeroReference, "zero denominator");
  unsigned __int128 scaled = static_cast<unsigned __int128>(num) * 20000 + den;
  return static_cast<uint64_t>(scaled / (static_cast<unsigned __int128>(den) * 2));
}

inline std::string format_percent(uint64_t hundredths) {
  std::string s = std::to_string(hundredths / 100);
  uint64_t frac = hundredths % 100;
  s += '.';
  s += static_cast<char>('0' + frac / 10);
  s += static_cast<char>('0' + frac % 10);
  return s;
}

// 100 * |ours - reference| / reference, rounded half-up to two decimals.
inline double error_rate(uint64_t ours, uint64_t reference) {
  if (reference == 0) {
    throw Error(ErrorKind::DivisionByZeroReference, "reference cycle count is zero");
  }
  uint64_t diff = ours > reference ? ours - reference : reference - ours;
  return static_cast<double>(percent_hundredths(diff, reference)) / 100.0;
}

inline std::string error_rate_string(uint64_t ours, uint64_t reference) {
  if (reference == 0) {
    throw Error(ErrorKind::DivisionByZeroReference, "reference cycle count is zero");
  }
  uint64_t diff = ours > reference ? ours - reference : reference - ours;
  return format_percent(percent_hundredths(diff, reference));
}

namespace detail {

inline std::string format_fraction(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 6);
  return std::string(buf, ptr);
}

}  // namespace detail

inline constexpr const char* kReportHeader =
    "layer,total_cycles,compute_cycles,stall_cycles,utilization,dram_ifmap,dram_filter,"
    "dram_ofmap";

// Byte-deterministic per-layer CSV with a final TOTAL row.
inline std::string emit_csv(const RunReport& report) {
  std::string out = kReportHeader;
  out += '\n';
  uint64_t compute_sum = 0, stall_sum = 0, ifmap_sum = 0, filter_sum = 0, ofmap_sum = 0;
  for (const auto& l : report.layers) {
    compute_sum += l.compute_cycles;
    stall_sum += l.stall_cycles;
    ifmap_sum += l.traffic.dram_ifmap_reads;
    filter_sum += l.traffic.dram_filter_reads;
    ofmap_sum += l.traffic.dram_ofmap_writes;
    out += l.layer_name;
    out += ',' + std::to_string(l.total_cycles);
    out += ',' + std::to_string(l.compute_cycles);
    out += ',' + std::to_string(l.stall_cycles);
    out += ',' + detail::format_fraction(l.utilization);
    out += ',' + std::to_string(l.traffic.dram_ifmap_reads);
    out += ',' + std::to_string(l.traffic.dram_filter_reads);
    out += ',' + std::to_string(l.traffic.dram_ofmap_writes);
    out += '\n';
  }
  out += "TOTAL," + std::to_string(report.total_cycles) + ',' + std::to_string(compute_sum) +
         ',' + std::to_string(stall_sum) + ",," + std::to_string(ifmap_sum) + ',' +
         std::to_string(filter_sum) + ',' + std::to_string(ofmap_sum) + '\n';
  return out;
}

inline std::string summary_line(const RunReport& report) {
  return report.network_name + " total_cycles=" + std::to_string(report.total_cycles) +
         " wall_clock=" + detail::format_fraction(report.wall_clock_seconds);
}

// Reparses an emit_csv document (numeric fields only; traffic SRAM counts
// are not emitted). Used by tests and the report subcommand.
inline RunReport parse_report_csv(std::string_view text, std::string_view network_name = "") {
  RunReport run;
  run.network_name = std::string(network_name);
  auto lines = simcoder::detail::split_lines(text);
  for (size_t i = 1; i < lines.size(); ++i) {
    std::string_view line = simcoder::detail::trim(lines[i]);
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    size_t pos = 0;
    while (true) {
      size_t comma = line.find(',', pos);
      if (comma == std::string_view::npos) {
        fields.push_back(line.substr(pos));
        break;
      }
      fields.push_back(line.substr(pos, comma - pos));
      pos = comma + 1;
    }
    if (fields.size() != 8) {
      throw Error(ErrorKind::BadRow, "report row " + std::to_string(i + 1) + ": expected 8 columns");
    }
    auto num = [&](std::string_view s) {
      uint64_t v = 0;
      if (!simcoder::detail::parse_u64(s, v)) {
        throw Error(ErrorKind::NonNumericField,
                    "report row " + std::to_string(i + 1) + ": bad number '" + std::string(s) + "'");
      }
      return v;
    };
    if (fields[0] == "TOTAL") {
      run.total_cycles = num(fields[1]);
      continue;
    }
    LayerReport l;
    l.layer_name = std::string(fields[0]);
    l.total_cycles = num(fields[1]);
    l.compute_cycles = num(fields[2]);
    l.stall_cycles = num(fields[3]);
    std::from_chars(fields[4].data(), fields[4].data() + fields[4].size(), l.utilization);
    l.traffic.dram_ifmap_reads = num(fields[5]);
    l.traffic.dram_filter_reads = num(fields[6]);
    l.traffic.dram_ofmap_writes = num(fields[7]);
    run.layers.push_back(std::move(l));
  }
  return run;
}

}  // namespace simcoder
