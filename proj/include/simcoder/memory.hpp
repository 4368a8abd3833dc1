#pragma once

// On-chip scratchpad and off-chip traffic model.
//
// Scratchpads are double-buffered, so a tile may occupy at most half of its
// buffer. Loop nest and reuse policy (fold order is row-major over
// (row_fold, col_fold), reduction chunks innermost):
//
//   for rf in row_folds:        # ifmap tile scope
//     for cf in col_folds:
//       for ks in t_chunks:     # capacity-driven reduction slices
//
//  - ifmap: when the fold is unsplit, its tile is fetched once per row_fold
//    and reused across col_folds; when the reduction had to be split, each
//    (col_fold, chunk) slice is re-fetched (the halves cannot hold more).
//  - filter: fetched once in total when the whole layer's filters fit in
//    half the filter SRAM, otherwise re-fetched for every row_fold.
//  - ofmap: streamed to DRAM as produced, written exactly once, never
//    re-read; reduction chunks accumulate in the ofmap SRAM, which must
//    hold one output tile.

#include <cassert>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "simcoder/arch.hpp"
#include "simcoder/compute.hpp"
#include "simcoder/errors.hpp"
#include "simcoder/mapping.hpp"

namespace simcoder {

struct TrafficReport {
  uint64_t dram_ifmap_reads = 0;
  uint64_t dram_filter_reads = 0;
  uint64_t dram_ofmap_writes = 0;  // always sr * sc
  uint64_t sram_ifmap_reads = 0;
  uint64_t sram_filter_reads = 0;
  uint64_t sram_ofmap_writes = 0;
  // DRAM words newly fetched at each fold, aligned with the plan's fold
  // order; feeds the per-fold prefetch stall model.
  std::vector<uint64_t> per_fold_dram_words;

  bool operator==(const TrafficReport&) const = default;
};

enum class LayerBound { ComputeBound, MemoryBound };

struct StallReport {
  uint64_t stall_cycles = 0;
  LayerBound bound = LayerBound::ComputeBound;  // MemoryBound iff stall_cycles > 0

  bool operator==(const StallReport&) const = default;
};

namespace detail {

inline uint64_t half_capacity(uint64_t sram_bytes) { return sram_bytes / 2; }

}  // namespace detail

// Splits the reduction depth of folds whose tile exceeds half of the ifmap
// or filter scratchpad. Output-tile overflow cannot be split away (outputs
// accumulate on chip) and raises InfeasibleTile, as does a single reduction
// step that still does not fit.
inline FoldPlan capacity_tile(const FoldPlan& plan, const LayerDescriptor& layer,
                              const ArchConfig& config) {
  const uint64_t ifmap_half = detail::half_capacity(config.ifmap_sram_bytes);
  const uint64_t filter_half = detail::half_capacity(config.filter_sram_bytes);
  const uint64_t ofmap_half = detail::half_capacity(config.ofmap_sram_bytes);
  const uint64_t w = config.word_size;

  FoldPlan refined;
  refined.dims = plan.dims;
  refined.dataflow = plan.dataflow;
  refined.row_folds = plan.row_folds;
  refined.col_folds = plan.col_folds;

  for (const auto& fold : plan.folds) {
    if (fold.rows_used * fold.cols_used * w > ofmap_half) {
      throw Error(ErrorKind::InfeasibleTile,
                  "layer '" + layer.name + "': output tile of " +
                      std::to_string(fold.rows_used * fold.cols_used * w) +
                      " bytes exceeds half the ofmap SRAM (" + std::to_string(ofmap_half) +
                      " bytes)");
    }

    auto chunk_fits = [&](uint64_t k_start, uint64_t k_len) {
      if (fold.cols_used * k_len * w > filter_half) return false;
      uint64_t ifmap_words =
          detail::ifmap_unique_words(layer, fold.row_start, fold.rows_used, k_start, k_len);
      return ifmap_words * w <= ifmap_half;
    };

    // Halve recursively until every slice fits both halves. The split tree
    // depends only on the depth, so a larger scratchpad prunes the same tree
    // higher up, and successive refinements stay nested.
    std::vector<std::pair<uint64_t, uint64_t>> work{{fold.t_start, fold.t_len}};
    while (!work.empty()) {
      auto [ks, kl] = work.back();
      work.pop_back();
      if (chunk_fits(ks, kl)) {
        FoldShape sub = fold;
        sub.t_start = ks;
        sub.t_len = kl;
        refined.folds.push_back(sub);
        continue;
      }
      if (kl == 1) {
        throw Error(ErrorKind::InfeasibleTile,
                    "layer '" + layer.name +
                        "': a single reduction step exceeds half a scratchpad "
                        "(ifmap or filter)");
      }
      uint64_t left = (kl + 1) / 2;
      work.emplace_back(ks + left, kl - left);  // right half
      work.emplace_back(ks, left);              // left half, processed first
    }
  }
  return refined;
}

inline TrafficReport traffic(const FoldPlan& plan, const LayerDescriptor& layer,
                             const ArchConfig& config) {
  TrafficReport rep;
  const uint64_t sr = plan.dims.sr;
  const uint64_t sc = plan.dims.sc;
  const uint64_t t = plan.dims.t;
  rep.dram_ofmap_writes = sr * sc;
  rep.per_fold_dram_words.reserve(plan.folds.size());

  const bool filters_fit_all =
      sc * t * config.word_size <= detail::half_capacity(config.filter_sram_bytes);

  uint64_t prev_row_start = UINT64_MAX;
  bool row_group_split = false;
  for (size_t fi = 0; fi < plan.folds.size(); ++fi) {
    const auto& fold = plan.folds[fi];
    uint64_t fetched = 0;

    bool new_row_group = fold.row_start != prev_row_start;
    if (new_row_group) {
      prev_row_start = fold.row_start;
      // A row group is split if any of its folds carries less than the full
      // reduction depth.
      row_group_split = false;
      for (size_t fj = fi; fj < plan.folds.size() && plan.folds[fj].row_start == fold.row_start;
           ++fj) {
        if (plan.folds[fj].t_len != t) {
          row_group_split = true;
          break;
        }
      }
    }

    // ifmap: once per row_fold when unsplit, per (col_fold, chunk) slice
    // otherwise.
    if (row_group_split) {
      uint64_t slice = detail::ifmap_unique_words(layer, fold.row_start, fold.rows_used,
                                                  fold.t_start, fold.t_len);
      rep.dram_ifmap_reads += slice;
      fetched += slice;
    } else if (new_row_group) {
      uint64_t tile =
          detail::ifmap_unique_words(layer, fold.row_start, fold.rows_used, 0, t);
      rep.dram_ifmap_reads += tile;
      fetched += tile;
    }

    // filter: first use only when everything fits, every row_fold otherwise.
    bool first_row_group = fold.row_start == plan.folds.front().row_start;
    if (!filters_fit_all || first_row_group) {
      uint64_t words = fold.cols_used * fold.t_len;
      rep.dram_filter_reads += words;
      fetched += words;
    }

    rep.sram_ifmap_reads += fold.rows_used * fold.t_len;
    rep.sram_filter_reads += fold.cols_used * fold.t_len;
    rep.sram_ofmap_writes += fold.rows_used * fold.cols_used;
    rep.per_fold_dram_words.push_back(fetched);
  }
  return rep;
}

// Per-fold prefetch model: fold 0 pays its fetch latency in full (cold
// start); fetching for fold k+1 overlaps fold k's compute, and only the
// overhang stalls.
inline StallReport stalls(const TrafficReport& traffic, const ComputeResult& compute,
                          const ArchConfig& config) {
  StallReport rep;
  const auto& words = traffic.per_fold_dram_words;
  assert(words.size() == compute.per_fold.size() && "traffic/compute fold order mismatch");
  for (size_t k = 0; k < words.size(); ++k) {
    uint64_t fetch_cycles = ceil_div(words[k], config.dram_bandwidth);
    if (k == 0) {
      rep.stall_cycles += fetch_cycles;
    } else {
      uint64_t prev_compute = compute.per_fold[k - 1].cycles.total;
      if (fetch_cycles > prev_compute) rep.stall_cycles += fetch_cycles - prev_compute;
    }
  }
  rep.bound = rep.stall_cycles > 0 ? LayerBound::MemoryBound : LayerBound::ComputeBound;
  return rep;
}

inline uint64_t total_layer_cycles(const ComputeResult& compute, const StallReport& stall) {
  return compute.total_compute_cycles + stall.stall_cycles;
}

}  // namespace simcoder
