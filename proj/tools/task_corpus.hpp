#pragma once

// Builds the bundled sample task corpus. Every expected output and exemplar
// output below is computed by the reference simulator at generation time;
// nothing is hand-written. The corpus spans the three simulator modules at
// function, class, and module granularity. taskgen writes these documents
// to disk; a test regenerates them and compares against the shipped files.

#include <sstream>
#include <string>
#include <vector>

#include "simcoder/agent/prompt.hpp"
#include "simcoder/agent/task.hpp"
#include "simcoder/interconnect.hpp"
#include "simcoder/simulate.hpp"

namespace simcoder::tools {

using agent::Exemplar;
using agent::Granularity;
using agent::TargetModule;
using agent::Task;
using agent::TestVector;

namespace detail {

inline LayerDescriptor layer_from_line(const std::string& line) {
  std::istringstream in(line);
  LayerDescriptor l;
  l.name = "layer";
  in >> l.ifmap_h >> l.ifmap_w >> l.filter_h >> l.filter_w >> l.channels >> l.num_filters >>
      l.stride;
  return l;
}

inline ArchConfig roomy(uint64_t rows, uint64_t cols, Dataflow df = Dataflow::OutputStationary,
                        uint64_t bandwidth = 4) {
  ArchConfig cfg;
  cfg.array_rows = rows;
  cfg.array_cols = cols;
  cfg.dataflow = df;
  cfg.ifmap_sram_bytes = cfg.filter_sram_bytes = cfg.ofmap_sram_bytes = 1ull << 30;
  cfg.dram_bandwidth = bandwidth;
  cfg.word_size = 1;
  return cfg;
}

inline std::string fold_cycles_line(const FoldCycles& fc) {
  return "fill=" + std::to_string(fc.fill) + " stream=" + std::to_string(fc.stream) +
         " drain=" + std::to_string(fc.drain) + " total=" + std::to_string(fc.total) + "\n";
}

}  // namespace detail

// --- mapping -----------------------------------------------------------

inline Task task_gemm_dims() {
  Task t;
  t.task_id = "mapping_gemm_dims";
  t.target_module = TargetModule::Mapping;
  t.granularity = Granularity::Function;
  t.description =
      "Implement the im2col lowering of one convolution layer to GEMM operand "
      "dimensions.\n\n"
      "Input (stdin): one line with seven integers separated by single spaces:\n"
      "  ifmap_h ifmap_w filter_h filter_w channels num_filters stride\n"
      "The convolution is 'valid' (no padding) with the same stride in both axes, so\n"
      "  out_h = (ifmap_h - filter_h) // stride + 1\n"
      "  out_w = (ifmap_w - filter_w) // stride + 1\n"
      "The GEMM dimensions are sr = out_h * out_w (output pixels per filter), "
      "sc = num_filters, and t = filter_h * filter_w * channels (multiply-accumulates "
      "per output).\n\n"
      "Output (stdout): exactly one line:\n"
      "  sr=<sr> sc=<sc> t=<t>\n";
  auto solve = [](const std::string& input) {
    GemmDims d = im2col_dims(detail::layer_from_line(input));
    return "sr=" + std::to_string(d.sr) + " sc=" + std::to_string(d.sc) +
           " t=" + std::to_string(d.t) + "\n";
  };
  for (const char* in : {"8 8 3 3 2 4 1\n", "224 224 7 7 3 64 2\n", "1 1 1 1 1024 1000 1\n"}) {
    t.test_vectors.push_back({in, solve(in)});
  }
  for (const char* in : {"6 6 2 2 1 3 2\n", "5 7 3 3 4 2 1\n"}) {
    t.exemplars.push_back({in, solve(in)});
  }
  return t;
}

inline Task task_fold_counts() {
  Task t;
  t.task_id = "mapping_fold_counts";
  t.target_module = TargetModule::Mapping;
  t.granularity = Granularity::Function;
  t.description =
      "Compute how many passes (folds) a layer's GEMM needs on a fixed systolic "
      "array.\n\n"
      "Input (stdin): two lines.\n"
      "  line 1: array_rows array_cols\n"
      "  line 2: ifmap_h ifmap_w filter_h filter_w channels num_filters stride\n"
      "Derive the GEMM dimensions with the valid-convolution rule: sr = out_h * out_w "
      "where out_h = (ifmap_h - filter_h) // stride + 1 (likewise out_w), and "
      "sc = num_filters. The operand matrix folds onto the array in tiles of at most "
      "array_rows x array_cols outputs, so row_folds = ceil(sr / array_rows) and "
      "col_folds = ceil(sc / array_cols).\n\n"
      "Output (stdout): exactly one line:\n"
      "  row_folds=<n> col_folds=<n>\n";
  auto solve = [](const std::string& input) {
    std::istringstream in(input);
    ArchConfig cfg;
    in >> cfg.array_rows >> cfg.array_cols;
    std::string rest;
    std::getline(in >> std::ws, rest);
    FoldPlan plan = plan_folds(im2col_dims(detail::layer_from_line(rest)), cfg);
    return "row_folds=" + std::to_string(plan.row_folds) +
           " col_folds=" + std::to_string(plan.col_folds) + "\n";
  };
  for (const char* in :
       {"4 4\n8 8 3 3 2 10 1\n", "32 32\n224 224 7 7 3 64 2\n", "8 8\n1 1 1 1 16 4 1\n"}) {
    t.test_vectors.push_back({in, solve(in)});
  }
  for (const char* in : {"2 2\n4 4 2 2 1 5 1\n", "16 8\n12 12 3 3 2 20 2\n"}) {
    t.exemplars.push_back({in, solve(in)});
  }
  return t;
}

inline Task task_fold_planner() {
  Task t;
  t.task_id = "mapping_fold_planner";
  t.target_module = TargetModule::Mapping;
  t.granularity = Granularity::Class;
  t.description =
      "Implement a fold planner that tiles a layer's GEMM onto a systolic array and "
      "lists every fold.\n\n"
      "Input (stdin): two lines.\n"
      "  line 1: array_rows array_cols\n"
      "  line 2: ifmap_h ifmap_w filter_h filter_w channels num_filters stride\n"
      "GEMM dimensions follow the valid-convolution rule (sr = out_h * out_w with "
      "out_h = (ifmap_h - filter_h) // stride + 1, sc = num_filters, "
      "t = filter_h * filter_w * channels). The sr x sc output grid is tiled "
      "row-major over (row_fold, col_fold): interior folds use the full array, edge "
      "folds carry the remainders (never zero-padded). Every fold keeps the full "
      "reduction depth t.\n\n"
      "Output (stdout): one line per fold, in row-major fold order, numbered from 1:\n"
      "  fold <i>: rows=<rows_used> cols=<cols_used> t=<t>\n";
  auto solve = [](const std::string& input) {
    std::istringstream in(input);
    ArchConfig cfg;
    in >> cfg.array_rows >> cfg.array_cols;
    std::string rest;
    std::getline(in >> std::ws, rest);
    FoldPlan plan = plan_folds(im2col_dims(detail::layer_from_line(rest)), cfg);
    std::string out;
    for (size_t i = 0; i < plan.folds.size(); ++i) {
      const auto& f = plan.folds[i];
      out += "fold " + std::to_string(i + 1) + ": rows=" + std::to_string(f.rows_used) +
             " cols=" + std::to_string(f.cols_used) + " t=" + std::to_string(f.t_len) + "\n";
    }
    return out;
  };
  for (const char* in :
       {"4 4\n4 4 2 2 1 3 1\n", "4 4\n5 5 2 2 2 6 2\n", "32 32\n1 1 1 1 4 1 1\n"}) {
    t.test_vectors.push_back({in, solve(in)});
  }
  for (const char* in : {"2 3\n3 3 2 2 1 4 1\n", "3 2\n4 4 3 3 1 3 1\n"}) {
    t.exemplars.push_back({in, solve(in)});
  }
  return t;
}

inline Task task_gemm_report() {
  Task t;
  t.task_id = "mapping_gemm_report";
  t.target_module = TargetModule::Mapping;
  t.granularity = Granularity::Module;
  t.description =
      "Implement the mapping stage of a systolic-array simulator: lower every layer "
      "of a workload to GEMM dimensions and count its folds.\n\n"
      "Input (stdin): the first line holds 'array_rows array_cols'. Every following "
      "line describes one layer as comma-separated values:\n"
      "  name,ifmap_h,ifmap_w,filter_h,filter_w,channels,num_filters,stride\n"
      "Convolutions are 'valid' (no padding): out_h = (ifmap_h - filter_h) // stride "
      "+ 1, likewise out_w. GEMM dimensions per layer: sr = out_h * out_w, "
      "sc = num_filters, t = filter_h * filter_w * channels. The fold count is "
      "ceil(sr / array_rows) * ceil(sc / array_cols).\n\n"
      "Output (stdout): one line per layer, in input order:\n"
      "  <name> sr=<sr> sc=<sc> t=<t> folds=<count>\n";
  auto solve = [](const std::string& input) {
    std::istringstream in(input);
    ArchConfig cfg;
    in >> cfg.array_rows >> cfg.array_cols;
    std::string line;
    std::getline(in, line);
    std::string out;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::string csv = line;
      for (auto& ch : csv) {
        if (ch == ',') ch = ' ';
      }
      std::istringstream ls(csv);
      LayerDescriptor l;
      ls >> l.name >> l.ifmap_h >> l.ifmap_w >> l.filter_h >> l.filter_w >> l.channels >>
          l.num_filters >> l.stride;
      GemmDims d = im2col_dims(l);
      FoldPlan plan = plan_folds(d, cfg);
      out += l.name + " sr=" + std::to_string(d.sr) + " sc=" + std::to_string(d.sc) +
             " t=" + std::to_string(d.t) + " folds=" + std::to_string(plan.folds.size()) + "\n";
    }
    return out;
  };
  for (const char* in :
       {"4 4\nconv1,8,8,3,3,2,4,1\nfc,1,1,1,1,72,10,1\n",
        "16 16\nstem,32,32,5,5,3,12,2\nmid,14,14,3,3,12,24,1\nhead,1,1,1,1,96,40,1\n",
        "8 8\nsolo,9,9,2,2,1,1,3\n"}) {
    t.test_vectors.push_back({in, solve(in)});
  }
  for (const char* in : {"4 4\na,6,6,3,3,1,2,1\n", "2 2\nb,4,4,2,2,2,3,2\nc,3,3,1,1,4,4,1\n"}) {
    t.exemplars.push_back({in, solve(in)});
  }
  return t;
}

// --- storage -----------------------------------------------------------

inline Task task_ofmap_traffic() {
  Task t;
  t.task_id = "storage_ofmap_traffic";
  t.target_module = TargetModule::Storage;
  t.granularity = Granularity::Function;
  t.description =
      "Compute the off-chip output traffic of one layer. Every output element "
      "streams to DRAM exactly once and is never re-read.\n\n"
      "Input (stdin): one line with seven integers:\n"
      "  ifmap_h ifmap_w filter_h filter_w channels num_filters stride\n"
      "With valid convolution (out_h = (ifmap_h - filter_h) // stride + 1, likewise "
      "out_w), the layer produces sr = out_h * out_w output pixels for each of the "
      "sc = num_filters filters, so the write count in words is sr * sc.\n\n"
      "Output (stdout): exactly one line:\n"
      "  dram_ofmap_writes=<sr*sc>\n";
  auto solve = [](const std::string& input) {
    LayerDescriptor l = detail::layer_from_line(input);
    ArchConfig cfg = detail::roomy(4, 4);
    FoldPlan plan = capacity_tile(plan_folds(im2col_dims(l), cfg), l, cfg);
    TrafficReport rep = traffic(plan, l, cfg);
    return "dram_ofmap_writes=" + std::to_string(rep.dram_ofmap_writes) + "\n";
  };
  for (const char* in : {"8 8 3 3 2 4 1\n", "12 12 2 2 1 16 2\n", "1 1 1 1 64 10 1\n"}) {
    t.test_vectors.push_back({in, solve(in)});
  }
  for (const char* in : {"4 4 2 2 1 2 1\n", "7 5 3 3 2 6 2\n"}) {
    t.exemplars.push_back({in, solve(in)});
  }
  return t;
}

inline Task task_stall_cycles() {
  Task t;
  t.task_id = "storage_stall_cycles";
  t.target_module = TargetModule::Storage;
  t.granularity = Granularity::Function;
  t.description =
      "Implement the double-buffered prefetch stall model for a serialized fold "
      "sequence.\n\n"
      "Input (stdin):\n"
      "  line 1: dram_bandwidth (words per cycle)\n"
      "  line 2: n (number of folds)\n"
      "  then n lines, one per fold in execution order: '<words> <compute_cycles>' "
      "where <words> is the DRAM word count fetched for that fold and "
      "<compute_cycles> is the fold's compute time.\n"
      "Fetching fold 0 cannot overlap anything, so it stalls for "
      "ceil(words_0 / bandwidth) cycles in full (zero words stall zero cycles). For "
      "every later fold k, its fetch overlaps fold k-1's compute, and only the "
      "overhang stalls: max(0, ceil(words_k / bandwidth) - compute_cycles_{k-1}). "
      "Total stall cycles are the sum over folds.\n\n"
      "Output (stdout): exactly one line:\n"
      "  stall_cycles=<n>\n";
  auto solve = [](const std::string& input) {
    std::istringstream in(input);
    ArchConfig cfg = detail::roomy(4, 4);
    uint64_t n = 0;
    in >> cfg.dram_bandwidth >> n;
    TrafficReport rep;
    ComputeResult compute;
    for (uint64_t i = 0; i < n; ++i) {
      uint64_t words = 0, cycles = 0;
      in >> words >> cycles;
      rep.per_fold_dram_words.push_back(words);
      FoldCompute fc;
      fc.cycles.total = cycles;
      compute.per_fold.push_back(fc);
    }
    StallReport st = stalls(rep, compute, cfg);
    return "stall_cycles=" + std::to_string(st.stall_cycles) + "\n";
  };
  for (const char* in : {"1\n2\n100 40\n100 40\n", "1000\n2\n100 40\n100 40\n",
                         "4\n3\n64 10\n128 20\n32 50\n"}) {
    t.test_vectors.push_back({in, solve(in)});
  }
  for (const char* in : {"2\n1\n10 5\n", "8\n2\n0 4\n64 2\n"}) {
    t.exemplars.push_back({in, solve(in)});
  }
  return t;
}

inline Task task_capacity_split() {
  Task t;
  t.task_id = "storage_capacity_split";
  t.target_module = TargetModule::Storage;
  t.granularity = Granularity::Class;
  t.description =
      "Implement the capacity tiler that splits a fold's reduction depth until its "
      "filter tile fits a double-buffered scratchpad.\n\n"
      "Input (stdin): one line with four integers:\n"
      "  filter_sram_bytes word_size cols_used t\n"
      "Double buffering halves the usable capacity: a reduction slice of length "
      "t_len fits when cols_used * t_len * word_size <= filter_sram_bytes / 2 "
      "(integer division). Split recursively: if a slice of length len does not "
      "fit, cut it into a first half of length ceil(len / 2) and a second half of "
      "length floor(len / 2), and recurse on each, keeping left-to-right order. "
      "Collect the lengths of the slices that fit.\n\n"
      "Output (stdout): exactly one line listing the final slice lengths in order:\n"
      "  chunks=<k>: <len1> <len2> ... <lenk>\n";
  auto solve = [](const std::string& input) {
    std::istringstream in(input);
    uint64_t sram = 0, word = 0, cols = 0, depth = 0;
    in >> sram >> word >> cols >> depth;
    LayerDescriptor l{"probe", 1, 1, 1, 1, depth, cols, 1};
    ArchConfig cfg = detail::roomy(1, cols);
    cfg.filter_sram_bytes = sram;
    cfg.word_size = word;
    FoldPlan refined = capacity_tile(plan_folds(im2col_dims(l), cfg), l, cfg);
    std::string out = "chunks=" + std::to_string(refined.folds.size()) + ":";
    for (const auto& f : refined.folds) out += " " + std::to_string(f.t_len);
    return out + "\n";
  };
  for (const char* in : {"32 1 4 8\n", "64 1 4 8\n", "16 2 2 9\n"}) {
    t.test_vectors.push_back({in, solve(in)});
  }
  for (const char* in : {"8 1 2 4\n", "24 1 3 10\n"}) {
    t.exemplars.push_back({in, solve(in)});
  }
  return t;
}

inline Task task_layer_cycles() {
  Task t;
  t.task_id = "storage_layer_cycles";
  t.target_module = TargetModule::Storage;
  t.granularity = Granularity::Module;
  t.description =
      "Implement the cycle model of one layer on a systolic-array accelerator whose "
      "scratchpads are large enough to hold every tile (no capacity splitting).\n\n"
      "Input (stdin): two lines.\n"
      "  line 1: array_rows array_cols dataflow dram_bandwidth   (dataflow is os, ws, "
      "or is)\n"
      "  line 2: ifmap_h ifmap_w filter_h filter_w channels num_filters stride\n\n"
      "Mapping: valid convolution, out_h = (ifmap_h - filter_h) // stride + 1 "
      "(likewise out_w); sr = out_h * out_w, sc = num_filters, t = filter_h * "
      "filter_w * channels. The output grid tiles row-major onto the array: "
      "row_folds = ceil(sr / array_rows), col_folds = ceil(sc / array_cols); "
      "interior folds are full, edge folds ragged. Folds run strictly one after "
      "another.\n\n"
      "Compute cycles per fold of shape (r, c) with reduction depth t:\n"
      "  os: r + c + t - 1\n"
      "  ws: 2*r + c + t - 2\n"
      "  is: r + 2*c + t - 2\n"
      "compute_cycles is the sum over folds.\n\n"
      "DRAM fetch per fold (word_size is 1 byte): the first fold of each row group "
      "(folds sharing the same output-row block) fetches that block's distinct ifmap "
      "elements, counted over all its output pixels, channels, and filter offsets "
      "(output pixel (oy, ox) at offset (fy, fx) reads ifmap row oy*stride+fy, "
      "column ox*stride+fx, in every channel; output pixels are row-major over the "
      "output grid and split into row blocks of array_rows). Folds of the first row "
      "group additionally fetch their filter tile of cols_used * t words; later row "
      "groups reuse the filters already on chip. All other fetch counts are zero.\n\n"
      "Stalls: fold 0 stalls ceil(words_0 / bandwidth) cycles in full; every later "
      "fold k stalls max(0, ceil(words_k / bandwidth) - compute_cycles_of_fold_{k-1}). "
      "stall_cycles is the sum; total_cycles = compute_cycles + stall_cycles.\n\n"
      "Output (stdout): exactly one line:\n"
      "  compute_cycles=<n> stall_cycles=<n> total_cycles=<n>\n";
  auto solve = [](const std::string& input) {
    std::istringstream in(input);
    uint64_t rows = 0, cols = 0, bw = 0;
    std::string df;
    in >> rows >> cols >> df >> bw;
    std::string rest;
    std::getline(in >> std::ws, rest);
    LayerDescriptor l = detail::layer_from_line(rest);
    ArchConfig cfg = detail::roomy(rows, cols, parse_dataflow(df), bw);
    LayerReport rep = simulate_layer(l, cfg);
    return "compute_cycles=" + std::to_string(rep.compute_cycles) +
           " stall_cycles=" + std::to_string(rep.stall_cycles) +
           " total_cycles=" + std::to_string(rep.total_cycles) + "\n";
  };
  for (const char* in : {"4 4 os 4\n8 8 1 1 2 6 1\n", "8 8 ws 16\n9 9 2 2 1 12 3\n",
                         "16 16 is 8\n1 1 1 1 32 24 1\n"}) {
    t.test_vectors.push_back({in, solve(in)});
  }
  for (const char* in : {"2 2 os 2\n4 4 1 1 1 2 1\n", "4 2 ws 4\n6 6 2 2 1 4 2\n"}) {
    t.exemplars.push_back({in, solve(in)});
  }
  return t;
}

// --- interconnect ------------------------------------------------------

inline Task task_injection_slowdown() {
  Task t;
  t.task_id = "interconnect_injection_slowdown";
  t.target_module = TargetModule::Interconnect;
  t.granularity = Granularity::Function;
  t.description =
      "Compute the operand-injection slowdown of a fold under an edge-port budget.\n\n"
      "Input (stdin): one line with four integers:\n"
      "  rows_used cols_used row_ports col_ports\n"
      "The west edge feeds one operand lane per active row and the north edge one "
      "lane per active column. Lanes sharing a port time-multiplex, so the "
      "injection schedule dilates by max(ceil(rows_used / row_ports), "
      "ceil(cols_used / col_ports)), and never below 1.\n\n"
      "Output (stdout): exactly one line:\n"
      "  multiplier=<n>\n";
  auto solve = [](const std::string& input) {
    std::istringstream in(input);
    FoldShape fold{};
    LinkBudget budget{};
    in >> fold.rows_used >> fold.cols_used >> budget.row_ports >> budget.col_ports;
    budget.drain_ports = 1;
    return "multiplier=" +
           std::to_string(injection_slowdown(fold, Dataflow::OutputStationary, budget)) + "\n";
  };
  for (const char* in : {"8 8 8 8\n", "8 8 4 8\n", "5 3 2 2\n"}) {
    t.test_vectors.push_back({in, solve(in)});
  }
  for (const char* in : {"1 1 1 1\n", "6 2 2 1\n"}) {
    t.exemplars.push_back({in, solve(in)});
  }
  return t;
}

inline Task task_drain_slowdown() {
  Task t;
  t.task_id = "interconnect_drain_slowdown";
  t.target_module = TargetModule::Interconnect;
  t.granularity = Granularity::Function;
  t.description =
      "Compute the result-drain slowdown of a fold under a south-edge port "
      "budget.\n\n"
      "Input (stdin): one line with two integers:\n"
      "  cols_used drain_ports\n"
      "Results leave through one lane per active column; lanes sharing a drain port "
      "time-multiplex, so the drain phase dilates by ceil(cols_used / drain_ports), "
      "and never below 1.\n\n"
      "Output (stdout): exactly one line:\n"
      "  multiplier=<n>\n";
  auto solve = [](const std::string& input) {
    std::istringstream in(input);
    FoldShape fold{};
    LinkBudget budget{1, 1, 1};
    in >> fold.cols_used >> budget.drain_ports;
    return "multiplier=" + std::to_string(drain_slowdown(fold, budget)) + "\n";
  };
  for (const char* in : {"8 8\n", "8 2\n", "3 2\n"}) {
    t.test_vectors.push_back({in, solve(in)});
  }
  for (const char* in : {"1 4\n", "6 5\n"}) {
    t.exemplars.push_back({in, solve(in)});
  }
  return t;
}

inline Task task_budget_scaling() {
  Task t;
  t.task_id = "interconnect_budget_scaling";
  t.target_module = TargetModule::Interconnect;
  t.granularity = Granularity::Class;
  t.description =
      "Implement the phase scaler that applies port-budget multipliers to a fold's "
      "cycle decomposition.\n\n"
      "Input (stdin): one line with five integers:\n"
      "  fill stream drain inject_mult drain_mult\n"
      "The fill and stream phases are operand injection and scale by inject_mult; "
      "the drain phase scales by drain_mult; the total is recomputed as the sum of "
      "the three scaled phases.\n\n"
      "Output (stdout): exactly one line:\n"
      "  fill=<n> stream=<n> drain=<n> total=<n>\n";
  auto solve = [](const std::string& input) {
    std::istringstream in(input);
    FoldCycles fc{};
    uint64_t mi = 0, md = 0;
    in >> fc.fill >> fc.stream >> fc.drain >> mi >> md;
    fc.total = fc.fill + fc.stream + fc.drain;
    return detail::fold_cycles_line(simcoder::detail::scale_fold_cycles(fc, mi, md));
  };
  for (const char* in : {"6 5 1 1 1\n", "6 5 1 2 2\n", "0 9 1 3 1\n"}) {
    t.test_vectors.push_back({in, solve(in)});
  }
  for (const char* in : {"2 4 1 2 1\n", "7 3 1 1 4\n"}) {
    t.exemplars.push_back({in, solve(in)});
  }
  return t;
}

inline Task task_constrained_fold() {
  Task t;
  t.task_id = "interconnect_constrained_fold";
  t.target_module = TargetModule::Interconnect;
  t.granularity = Granularity::Module;
  t.description =
      "Implement the port-constrained cycle model of one systolic fold.\n\n"
      "Input (stdin): one line:\n"
      "  rows cols t dataflow row_ports col_ports drain_ports   (dataflow is os, ws, "
      "or is)\n"
      "Unconstrained cycle decomposition for a fold of rows x cols PEs with "
      "reduction depth t (fill is the skew-in before the far corner's first "
      "multiply-accumulate, stream is the steady issue phase, drain is the "
      "extraction tail):\n"
      "  os: fill = rows + cols - 2,   stream = t, drain = 1\n"
      "  ws: fill = 2*rows + cols - 3, stream = t, drain = 1\n"
      "  is: fill = rows + 2*cols - 3, stream = t, drain = 1\n"
      "Port budgets dilate the phases: inject_mult = max(ceil(rows / row_ports), "
      "ceil(cols / col_ports)) scales fill and stream; drain_mult = "
      "ceil(cols / drain_ports) scales drain. The total is the sum of the scaled "
      "phases.\n\n"
      "Output (stdout): exactly one line:\n"
      "  fill=<n> stream=<n> drain=<n> total=<n>\n";
  auto solve = [](const std::string& input) {
    std::istringstream in(input);
    uint64_t rows = 0, cols = 0, depth = 0;
    std::string df;
    LinkBudget budget{};
    in >> rows >> cols >> depth >> df >> budget.row_ports >> budget.col_ports >>
        budget.drain_ports;
    return detail::fold_cycles_line(
        simulate_fold_reference_constrained(rows, cols, depth, parse_dataflow(df), budget));
  };
  for (const char* in : {"4 4 10 os 4 4 4\n", "4 4 10 ws 2 4 4\n", "3 5 7 is 1 1 1\n"}) {
    t.test_vectors.push_back({in, solve(in)});
  }
  for (const char* in : {"1 1 1 os 1 1 1\n", "2 3 4 ws 2 3 3\n"}) {
    t.exemplars.push_back({in, solve(in)});
  }
  return t;
}

inline std::vector<Task> build_sample_corpus() {
  return {task_gemm_dims(),      task_fold_counts(),       task_fold_planner(),
          task_gemm_report(),    task_ofmap_traffic(),     task_stall_cycles(),
          task_capacity_split(), task_layer_cycles(),      task_injection_slowdown(),
          task_drain_slowdown(), task_budget_scaling(),    task_constrained_fold()};
}

// Fixed fixture for the golden-prompt suite: stable task, stable arch text.
inline Task golden_task() {
  Task t = task_gemm_dims();
  t.task_id = "golden_gemm_dims";
  return t;
}

inline std::string golden_arch_text() {
  return "array_rows = 8\narray_cols = 8\ndataflow = os\nifmap_sram_kb = 64\n"
         "filter_sram_kb = 64\nofmap_sram_kb = 32\ndram_bandwidth_words_per_cycle = 16\n"
         "word_size_bytes = 1\n";
}

}  // namespace simcoder::tools
