#pragma once

// End-to-end layer and network simulation: mapping -> capacity tiling ->
// compute -> link budget -> traffic -> stalls.

#include <chrono>
#include <string>

#include "simcoder/arch.hpp"
#include "simcoder/compute.hpp"
#include "simcoder/interconnect.hpp"
#include "simcoder/mapping.hpp"
#include "simcoder/memory.hpp"
#include "simcoder/report.hpp"

namespace simcoder {

inline LayerReport simulate_layer(const LayerDescriptor& layer, const ArchConfig& config) {
  FoldPlan plan = plan_folds(im2col_dims(layer), config);
  plan = capacity_tile(plan, layer, config);
  ComputeResult compute = compute_layer(plan, config, layer.name);
  compute = apply_link_budget(compute, LinkBudget::defaults_for(config), config.dataflow);
  TrafficReport traf = traffic(plan, layer, config);
  StallReport stall = stalls(traf, compute, config);

  LayerReport rep;
  rep.layer_name = layer.name;
  rep.compute_cycles = compute.total_compute_cycles;
  rep.stall_cycles = stall.stall_cycles;
  rep.total_cycles = total_layer_cycles(compute, stall);
  rep.utilization = compute.utilization;
  rep.traffic = traf;
  return rep;
}

// Wall clock covers the simulation loop only, not parsing or emission.
inline RunReport simulate_network(const WorkloadTopology& topo, const ArchConfig& config) {
  std::vector<LayerReport> layers;
  layers.reserve(topo.layers.size());
  auto start = std::chrono::steady_clock::now();
  for (const auto& layer : topo.layers) {
    layers.push_back(simulate_layer(layer, config));
  }
  auto stop = std::chrono::steady_clock::now();
  double secs = std::chrono::duration<double>(stop - start).count();
  return aggregate(std::move(layers), topo.network_name, secs);
}

}  // namespace simcoder
