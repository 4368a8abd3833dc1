#pragma once

// Shared test fixtures: seeded generators for valid configs/layers and the
// brute-force im2col oracle the mapping tests check against.

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "simcoder/arch.hpp"
#include "simcoder/mapping.hpp"

namespace testutil {

using simcoder::ArchConfig;
using simcoder::Dataflow;
using simcoder::LayerDescriptor;

inline Dataflow random_dataflow(std::mt19937_64& rng) {
  switch (rng() % 3) {
    case 0: return Dataflow::OutputStationary;
    case 1: return Dataflow::WeightStationary;
    default: return Dataflow::InputStationary;
  }
}

inline ArchConfig random_config(std::mt19937_64& rng) {
  std::uniform_int_distribution<uint64_t> dim(1, 8);
  std::uniform_int_distribution<uint64_t> kb(1, 64);
  std::uniform_int_distribution<uint64_t> bw(1, 16);
  ArchConfig cfg;
  cfg.array_rows = dim(rng);
  cfg.array_cols = dim(rng);
  cfg.dataflow = random_dataflow(rng);
  cfg.ifmap_sram_bytes = kb(rng) * 1024;
  cfg.filter_sram_bytes = kb(rng) * 1024;
  cfg.ofmap_sram_bytes = kb(rng) * 1024;
  cfg.dram_bandwidth = bw(rng);
  cfg.word_size = 1ull << (rng() % 3);  // 1, 2, 4
  return cfg;
}

inline LayerDescriptor random_layer(std::mt19937_64& rng, uint64_t max_spatial = 12,
                                    uint64_t max_filter = 4, uint64_t max_channels = 3,
                                    uint64_t max_filters = 6) {
  std::uniform_int_distribution<uint64_t> sp(1, max_spatial);
  LayerDescriptor l;
  l.ifmap_h = sp(rng);
  l.ifmap_w = sp(rng);
  l.filter_h = 1 + rng() % std::min(max_filter, l.ifmap_h);
  l.filter_w = 1 + rng() % std::min(max_filter, l.ifmap_w);
  l.channels = 1 + rng() % max_channels;
  l.num_filters = 1 + rng() % max_filters;
  l.stride = 1 + rng() % 3;
  static int counter = 0;
  l.name = "L" + std::to_string(counter++);
  return l;
}

// One im2col source coordinate.
using Coord = std::tuple<uint64_t, uint64_t, uint64_t>;  // channel, y, x

// Materializes the im2col matrix row by row: row p lists the t source
// coordinates of output pixel p in reduction order (channel, fy, fx).
inline std::vector<std::vector<Coord>> im2col_rows(const LayerDescriptor& l) {
  std::vector<std::vector<Coord>> rows;
  uint64_t oh = (l.ifmap_h - l.filter_h) / l.stride + 1;
  uint64_t ow = (l.ifmap_w - l.filter_w) / l.stride + 1;
  for (uint64_t oy = 0; oy < oh; ++oy) {
    for (uint64_t ox = 0; ox < ow; ++ox) {
      std::vector<Coord> row;
      for (uint64_t ch = 0; ch < l.channels; ++ch) {
        for (uint64_t fy = 0; fy < l.filter_h; ++fy) {
          for (uint64_t fx = 0; fx < l.filter_w; ++fx) {
            row.emplace_back(ch, oy * l.stride + fy, ox * l.stride + fx);
          }
        }
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

// Brute-force unique source count for a pixel/reduction slice.
inline uint64_t oracle_unique_ifmap(const LayerDescriptor& l, uint64_t pixel_start,
                                    uint64_t pixel_count, uint64_t k_start, uint64_t k_len) {
  auto rows = im2col_rows(l);
  std::set<Coord> seen;
  for (uint64_t p = pixel_start; p < pixel_start + pixel_count; ++p) {
    for (uint64_t k = k_start; k < k_start + k_len; ++k) {
      seen.insert(rows[p][k]);
    }
  }
  return seen.size();
}

}  // namespace testutil
