#pragma once

// Lowers a layer to a GEMM via im2col and plans how the operand matrices
// fold onto the physical array.
//
// Conventions fixed here and relied on everywhere downstream:
//  - "valid" convolution, no padding: out_h = (ifmap_h - filter_h)/stride + 1.
//  - GEMM rows (sr) enumerate output pixels row-major over (out_y, out_x).
//  - GEMM columns (sc) enumerate filters.
//  - The reduction index k in [0, t) unravels row-major over
//    (channel, filter_y, filter_x).
//  - Folds are ordered row-major over (row_fold, col_fold); interior folds
//    are full-array, edge folds carry the remainders (ragged, not padded).

#include <cstdint>
#include <string>
#include <vector>

#include "simcoder/arch.hpp"

namespace simcoder {

struct GemmDims {
  uint64_t sr = 0;  // output pixels per filter
  uint64_t sc = 0;  // filters
  uint64_t t = 0;   // MACs per output (filter_h * filter_w * channels)

  bool operator==(const GemmDims&) const = default;
};

// One pass of the operand matrices through the array. row_start/col_start
// locate the fold in the sr x sc output grid; t_start/t_len select the
// reduction slice (plan_folds emits full-depth folds, capacity tiling may
// split them).
struct FoldShape {
  uint64_t row_start = 0;
  uint64_t rows_used = 0;
  uint64_t col_start = 0;
  uint64_t cols_used = 0;
  uint64_t t_start = 0;
  uint64_t t_len = 0;

  bool operator==(const FoldShape&) const = default;
};

struct FoldPlan {
  GemmDims dims;
  Dataflow dataflow = Dataflow::OutputStationary;
  uint64_t row_folds = 0;
  uint64_t col_folds = 0;
  std::vector<FoldShape> folds;

  bool operator==(const FoldPlan&) const = default;
};

struct TileFootprint {
  uint64_t ifmap_words = 0;   // unique im2col source elements
  uint64_t filter_words = 0;  // cols_used * t_len
  uint64_t ofmap_words = 0;   // rows_used * cols_used

  bool operator==(const TileFootprint&) const = default;
};

inline uint64_t ceil_div(uint64_t a, uint64_t b) { return (a + b - 1) / b; }

inline uint64_t out_height(const LayerDescriptor& l) {
  return (l.ifmap_h - l.filter_h) / l.stride + 1;
}

inline uint64_t out_width(const LayerDescriptor& l) {
  return (l.ifmap_w - l.filter_w) / l.stride + 1;
}

inline GemmDims im2col_dims(const LayerDescriptor& layer) {
  GemmDims d;
  d.sr = out_height(layer) * out_width(layer);
  d.sc = layer.num_filters;
  d.t = layer.filter_h * layer.filter_w * layer.channels;
  return d;
}

inline FoldPlan plan_folds(const GemmDims& dims, const ArchConfig& config) {
  FoldPlan plan;
  plan.dims = dims;
  plan.dataflow = config.dataflow;
  plan.row_folds = ceil_div(dims.sr, config.array_rows);
  plan.col_folds = ceil_div(dims.sc, config.array_cols);
  plan.folds.reserve(plan.row_folds * plan.col_folds);
  for (uint64_t rf = 0; rf < plan.row_folds; ++rf) {
    uint64_t row_start = rf * config.array_rows;
    uint64_t rows_used = std::min(config.array_rows, dims.sr - row_start);
    for (uint64_t cf = 0; cf < plan.col_folds; ++cf) {
      uint64_t col_start = cf * config.array_cols;
      uint64_t cols_used = std::min(config.array_cols, dims.sc - col_start);
      plan.folds.push_back({row_start, rows_used, col_start, cols_used, 0, dims.t});
    }
  }
  return plan;
}

namespace detail {

// Counts unique ifmap coordinates touched by output pixels
// [pixel_start, pixel_start+pixel_count) over reduction slice
// [k_start, k_start+k_len). Channels factor apart: the spatial union is the
// same for every channel whose (fy, fx) window subset matches, so we count
// one bitmap per distinct window subset (at most three: a leading partial
// channel, the full-window middle channels, a trailing partial channel).
inline uint64_t ifmap_unique_words(const LayerDescriptor& layer, uint64_t pixel_start,
                                   uint64_t pixel_count, uint64_t k_start, uint64_t k_len) {
  if (pixel_count == 0 || k_len == 0) return 0;
  const uint64_t window = layer.filter_h * layer.filter_w;
  const uint64_t ow = out_width(layer);

  auto spatial_union = [&](uint64_t off_lo, uint64_t off_hi) -> uint64_t {
    // Offsets [off_lo, off_hi) within one channel's filter window.
    if (off_lo >= off_hi) return 0;
    std::vector<uint8_t> seen(layer.ifmap_h * layer.ifmap_w, 0);
    uint64_t count = 0;
    for (uint64_t p = pixel_start; p < pixel_start + pixel_count; ++p) {
      uint64_t oy = p / ow;
      uint64_t ox = p % ow;
      for (uint64_t off = off_lo; off < off_hi; ++off) {
        uint64_t fy = off / layer.filter_w;
        uint64_t fx = off % layer.filter_w;
        uint64_t idx = (oy * layer.stride + fy) * layer.ifmap_w + (ox * layer.stride + fx);
        if (!seen[idx]) {
          seen[idx] = 1;
          ++count;
        }
      }
    }
    return count;
  };

  const uint64_t k_end = k_start + k_len;
  const uint64_t ch_first = k_start / window;
  const uint64_t ch_last = (k_end - 1) / window;
  if (ch_first == ch_last) {
    return spatial_union(k_start % window, (k_end - 1) % window + 1);
  }
  uint64_t total = spatial_union(k_start % window, window);      // leading partial channel
  total += spatial_union(0, (k_end - 1) % window + 1);           // trailing partial channel
  uint64_t full_channels = ch_last - ch_first - 1;
  if (full_channels > 0) total += full_channels * spatial_union(0, window);
  return total;
}

}  // namespace detail

// Word counts of the unique operand elements one fold consumes/produces.
// Counts are dataflow-invariant (the operand sets do not depend on which
// class stays resident); the parameter is kept for interface symmetry.
inline TileFootprint tile_footprint(const FoldShape& fold, const LayerDescriptor& layer,
                                    Dataflow /*dataflow*/) {
  TileFootprint fp;
  fp.filter_words = fold.cols_used * fold.t_len;
  fp.ofmap_words = fold.rows_used * fold.cols_used;
  fp.ifmap_words =
      detail::ifmap_unique_words(layer, fold.row_start, fold.rows_used, fold.t_start, fold.t_len);
  return fp;
}

// Warnings for layers whose single-tile footprint exceeds a scratchpad;
// the simulation still runs (capacity tiling splits the reduction), this
// is operator-facing advice only.
inline std::vector<std::string> validate_pair(const ArchConfig& config,
                                              const WorkloadTopology& topo) {
  std::vector<std::string> warnings;
  for (const auto& layer : topo.layers) {
    FoldPlan plan = plan_folds(im2col_dims(layer), config);
    TileFootprint fp = tile_footprint(plan.folds.front(), layer, config.dataflow);
    auto check = [&](uint64_t words, uint64_t sram_bytes, const char* buffer) {
      uint64_t bytes = words * config.word_size;
      if (bytes > sram_bytes) {
        warnings.push_back("layer '" + layer.name + "': " + buffer + " tile (" +
                           std::to_string(bytes) + " bytes) exceeds " + buffer + " SRAM (" +
                           std::to_string(sram_bytes) + " bytes); tiling will be forced");
      }
    };
    check(fp.ifmap_words, config.ifmap_sram_bytes, "ifmap");
    check(fp.filter_words, config.filter_sram_bytes, "filter");
    check(fp.ofmap_words, config.ofmap_sram_bytes, "ofmap");
  }
  return warnings;
}

}  // namespace simcoder
