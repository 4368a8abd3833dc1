#pragma once

// Cycle model of the systolic compute array.
//
// The authoritative semantics are the explicit per-cycle simulation in
// simulate_fold_reference; fold_cycles_closed_form is the fast path and must
// match it exactly (the equivalence suite enforces this over an exhaustive
// grid). Timing model, per fold of shape (r, c, t):
//
//   OUTPUT_STATIONARY
//     Operands enter skewed from the west (ifmap rows) and north (filter
//     columns) edges, one hop per cycle; PE(i,j) fires MAC k at cycle i+j+k
//     and accumulates in place for t cycles. Each result leaves southward,
//     one hop per cycle, starting the cycle after its local accumulation
//     completes; the skew means results pipeline out behind the MAC
//     wavefront, so the extraction tail past the last MAC is one cycle.
//     total = r + c + t - 1.
//
//   WEIGHT_STATIONARY
//     Weights preload from the north for r cycles (deepest row first; every
//     weight lands in its PE on cycle r-1, coinciding with the earliest
//     possible first MAC). The ifmap then streams from the west with the
//     same skew: PE(i,j) fires MAC k at cycle (r-1)+i+j+k. Drain as above.
//     total = 2r + c + t - 2.
//
//   INPUT_STATIONARY
//     Mirror of WEIGHT_STATIONARY with operand roles exchanged: inputs
//     preload from the west for c cycles, filters stream from the north.
//     total = r + 2c + t - 2.
//
// Folds execute strictly serially; drain never overlaps the next fold.
// All cycle counts are integers.

#include <cassert>
#include <cstdint>
#include <string>
#include <vector>

#include "simcoder/arch.hpp"
#include "simcoder/mapping.hpp"

namespace simcoder {

struct FoldCycles {
  uint64_t fill = 0;    // skew-in (and preload) before the far corner's first MAC
  uint64_t stream = 0;  // steady-state MAC issue
  uint64_t drain = 0;   // extraction tail past the last MAC
  uint64_t total = 0;   // fill + stream + drain

  bool operator==(const FoldCycles&) const = default;
};

struct FoldCompute {
  FoldCycles cycles;
  uint64_t rows_used = 0;
  uint64_t cols_used = 0;
  uint64_t t = 0;

  bool operator==(const FoldCompute&) const = default;
};

struct ComputeResult {
  std::string layer_name;
  uint64_t total_compute_cycles = 0;  // folds are serialized: sum over folds
  uint64_t mac_count = 0;
  double utilization = 0.0;  // mac_count / (array_rows * array_cols * total)
  uint64_t array_rows = 0;
  uint64_t array_cols = 0;
  std::vector<FoldCompute> per_fold;

  bool operator==(const ComputeResult&) const = default;
};

struct ReferenceRun {
  FoldCycles cycles;
  uint64_t mac_events = 0;  // must equal rows * cols * t
};

// Explicit per-cycle simulation of one fold. Slow by design; this is the
// oracle the closed form is checked against.
inline ReferenceRun simulate_fold_reference_run(uint64_t rows_used, uint64_t cols_used,
                                                uint64_t t, Dataflow dataflow) {
  assert(rows_used >= 1 && cols_used >= 1 && t >= 1);
  const int64_t r = static_cast<int64_t>(rows_used);
  const int64_t c = static_cast<int64_t>(cols_used);
  const int64_t depth = static_cast<int64_t>(t);

  auto idx = [c](int64_t i, int64_t j) { return static_cast<size_t>(i * c + j); };

  // Operand registers carry the reduction index k in flight; -1 is empty.
  std::vector<int64_t> west(static_cast<size_t>(r * c), -1);
  std::vector<int64_t> north(static_cast<size_t>(r * c), -1);
  // Preload tokens carry their destination row (WS) or column (IS).
  std::vector<int64_t> preload(static_cast<size_t>(r * c), -1);
  std::vector<uint8_t> stationary(static_cast<size_t>(r * c),
                                  dataflow == Dataflow::OutputStationary ? 1 : 0);
  std::vector<int64_t> next_k(static_cast<size_t>(r * c), 0);
  // Live results: remaining southward hops and birth cycle; <0 hops = gone.
  std::vector<int64_t> hops_left(static_cast<size_t>(r * c), -1);
  std::vector<int64_t> born(static_cast<size_t>(r * c), -1);

  const bool ws = dataflow == Dataflow::WeightStationary;
  const bool is = dataflow == Dataflow::InputStationary;
  const int64_t west_base = ws ? r - 1 : 0;   // ifmap stream start offset
  const int64_t north_base = is ? c - 1 : 0;  // filter stream start offset
  const bool west_streams = !is;
  const bool north_streams = !ws;

  ReferenceRun run;
  int64_t fill_cycle = -1;
  int64_t last_mac = -1;
  int64_t last_exit = -1;
  uint64_t exited = 0;
  const uint64_t want = rows_used * cols_used;
  const int64_t guard = 4 * (r + c + depth) + 16;

  for (int64_t cycle = 0; cycle < guard && exited < want; ++cycle) {
    // Results in flight move one hop south; a hop count reaching zero is the
    // crossing of the south edge this cycle.
    for (int64_t i = 0; i < r; ++i) {
      for (int64_t j = 0; j < c; ++j) {
        auto& h = hops_left[idx(i, j)];
        if (h > 0 && born[idx(i, j)] < cycle) {
          if (--h == 0) {
            last_exit = cycle;
            ++exited;
          }
        }
      }
    }

    // Shift operand registers one hop (east for west-injected, south for
    // north-injected), then inject this cycle's edge words.
    for (int64_t i = 0; i < r; ++i) {
      for (int64_t j = c - 1; j >= 1; --j) west[idx(i, j)] = west[idx(i, j - 1)];
      int64_t k = west_streams ? cycle - west_base - i : -1;
      west[idx(i, 0)] = (k >= 0 && k < depth) ? k : -1;
    }
    for (int64_t j = 0; j < c; ++j) {
      for (int64_t i = r - 1; i >= 1; --i) north[idx(i, j)] = north[idx(i - 1, j)];
      int64_t k = north_streams ? cycle - north_base - j : -1;
      north[idx(0, j)] = (k >= 0 && k < depth) ? k : -1;
    }

    // Preload wavefront (WS: rows fill from the north, deepest first; IS:
    // columns fill from the west). Tokens latch on reaching their target.
    if (ws) {
      for (int64_t j = 0; j < c; ++j) {
        for (int64_t i = r - 1; i >= 1; --i) preload[idx(i, j)] = preload[idx(i - 1, j)];
        int64_t dest = r - 1 - cycle;
        preload[idx(0, j)] = (dest >= 0 && dest < r) ? dest : -1;
      }
      for (int64_t i = 0; i < r; ++i) {
        for (int64_t j = 0; j < c; ++j) {
          if (preload[idx(i, j)] == i) {
            stationary[idx(i, j)] = 1;
            preload[idx(i, j)] = -1;
          }
        }
      }
    } else if (is) {
      for (int64_t i = 0; i < r; ++i) {
        for (int64_t j = c - 1; j >= 1; --j) preload[idx(i, j)] = preload[idx(i, j - 1)];
        int64_t dest = c - 1 - cycle;
        preload[idx(i, 0)] = (dest >= 0 && dest < c) ? dest : -1;
      }
      for (int64_t i = 0; i < r; ++i) {
        for (int64_t j = 0; j < c; ++j) {
          if (preload[idx(i, j)] == j) {
            stationary[idx(i, j)] = 1;
            preload[idx(i, j)] = -1;
          }
        }
      }
    }

    // MAC issue: one per PE per cycle, strictly in reduction order.
    for (int64_t i = 0; i < r; ++i) {
      for (int64_t j = 0; j < c; ++j) {
        size_t p = idx(i, j);
        if (next_k[p] >= depth) continue;
        bool west_ok = !west_streams || west[p] == next_k[p];
        bool north_ok = !north_streams || north[p] == next_k[p];
        if (west_ok && north_ok && stationary[p]) {
          if (next_k[p] == 0 && i == r - 1 && j == c - 1) fill_cycle = cycle;
          ++next_k[p];
          ++run.mac_events;
          last_mac = cycle;
          if (next_k[p] == depth) {
            // Local accumulation complete: result starts south next cycle,
            // needing r - i hops to cross the edge.
            hops_left[p] = r - i;
            born[p] = cycle;
          }
        }
      }
    }
  }

  assert(exited == want && "fold simulation did not converge");
  assert(fill_cycle >= 0 && last_mac >= 0 && last_exit >= 0);
  run.cycles.total = static_cast<uint64_t>(last_exit + 1);
  run.cycles.fill = static_cast<uint64_t>(fill_cycle);
  run.cycles.stream = static_cast<uint64_t>(last_mac + 1 - fill_cycle);
  run.cycles.drain = run.cycles.total - run.cycles.fill - run.cycles.stream;
  return run;
}

inline FoldCycles simulate_fold_reference(uint64_t rows_used, uint64_t cols_used, uint64_t t,
                                          Dataflow dataflow) {
  return simulate_fold_reference_run(rows_used, cols_used, t, dataflow).cycles;
}

// Closed-form fast path; derived from the reference model above and pinned
// to it by the exhaustive equivalence suite.
inline FoldCycles fold_cycles_closed_form(uint64_t rows_used, uint64_t cols_used, uint64_t t,
                                          Dataflow dataflow) {
  FoldCycles fc;
  switch (dataflow) {
    case Dataflow::OutputStationary:
      fc.fill = rows_used + cols_used - 2;
      break;
    case Dataflow::WeightStationary:
      fc.fill = 2 * rows_used + cols_used - 3;
      break;
    case Dataflow::InputStationary:
      fc.fill = rows_used + 2 * cols_used - 3;
      break;
  }
  fc.stream = t;
  fc.drain = 1;
  fc.total = fc.fill + fc.stream + fc.drain;
  return fc;
}

inline ComputeResult compute_layer(const FoldPlan& plan, const ArchConfig& config,
                                   const std::string& layer_name = "") {
  ComputeResult res;
  res.layer_name = layer_name;
  res.array_rows = config.array_rows;
  res.array_cols = config.array_cols;
  res.per_fold.reserve(plan.folds.size());
  for (const auto& fold : plan.folds) {
    FoldCompute fc;
    fc.rows_used = fold.rows_used;
    fc.cols_used = fold.cols_used;
    fc.t = fold.t_len;
    fc.cycles = fold_cycles_closed_form(fold.rows_used, fold.cols_used, fold.t_len, plan.dataflow);
    res.total_compute_cycles += fc.cycles.total;
    res.mac_count += fold.rows_used * fold.cols_used * fold.t_len;
    res.per_fold.push_back(fc);
  }
  if (res.total_compute_cycles > 0) {
    res.utilization = static_cast<double>(res.mac_count) /
                      (static_cast<double>(config.array_rows * config.array_cols) *
                       static_cast<double>(res.total_compute_cycles));
  }
  return res;
}

}  // namespace simcoder
