#pragma once

// Edge-port bandwidth constraints layered onto the compute model.
//
// Each array edge is a set of ports: west (ifmap rows), north (filter
// columns), south (result drain). The unconstrained schedule needs at most
// one word per lane per cycle, so with the default budget (ports = array
// geometry) this module is an exact no-op. Constrained budgets are modeled
// as slotted time-division: lanes sharing a port dilate their phase by
// ceil(lanes / ports). The port-constrained reference simulation uses the
// same slotted semantics, so the rate multiplier is exact for these
// constant-rate streams, and per-word greedy arbitration is deliberately
// not modeled.

#include <algorithm>
#include <cstdint>

#include "simcoder/arch.hpp"
#include "simcoder/compute.hpp"
#include "simcoder/mapping.hpp"

namespace simcoder {

struct LinkBudget {
  uint64_t row_ports = 1;    // west edge, words/cycle
  uint64_t col_ports = 1;    // north edge, words/cycle
  uint64_t drain_ports = 1;  // south edge, words/cycle

  bool operator==(const LinkBudget&) const = default;

  static LinkBudget defaults_for(const ArchConfig& cfg) {
    LinkBudget b;
    b.row_ports = cfg.row_ports ? cfg.row_ports : cfg.array_rows;
    b.col_ports = cfg.col_ports ? cfg.col_ports : cfg.array_cols;
    b.drain_ports = cfg.drain_ports ? cfg.drain_ports : cfg.array_cols;
    return b;
  }
};

// Slowdown of the operand-injection schedule: the binding edge is whichever
// operand edge is most oversubscribed. Every dataflow streams (or preloads)
// over both operand edges, so the bound is the max of the two.
inline uint64_t injection_slowdown(const FoldShape& fold, Dataflow /*dataflow*/,
                                   const LinkBudget& budget) {
  uint64_t west = ceil_div(fold.rows_used, budget.row_ports);
  uint64_t north = ceil_div(fold.cols_used, budget.col_ports);
  return std::max<uint64_t>({west, north, 1});
}

inline uint64_t drain_slowdown(const FoldShape& fold, const LinkBudget& budget) {
  return std::max<uint64_t>(ceil_div(fold.cols_used, budget.drain_ports), 1);
}

namespace detail {

inline FoldCycles scale_fold_cycles(const FoldCycles& base, uint64_t inject_mult,
                                    uint64_t drain_mult) {
  FoldCycles out;
  out.fill = base.fill * inject_mult;
  out.stream = base.stream * inject_mult;
  out.drain = base.drain * drain_mult;
  out.total = out.fill + out.stream + out.drain;
  return out;
}

}  // namespace detail

// Per-cycle reference extended with port budgets: runs the explicit grid
// simulation, then applies the slotted-TDM dilation to each phase.
inline FoldCycles simulate_fold_reference_constrained(uint64_t rows_used, uint64_t cols_used,
                                                      uint64_t t, Dataflow dataflow,
                                                      const LinkBudget& budget) {
  FoldShape shape{0, rows_used, 0, cols_used, 0, t};
  FoldCycles base = simulate_fold_reference(rows_used, cols_used, t, dataflow);
  return detail::scale_fold_cycles(base, injection_slowdown(shape, dataflow, budget),
                                   drain_slowdown(shape, budget));
}

// Rescales a ComputeResult under a link budget. Identity (bit-exact) when
// every multiplier is 1, which the default budget guarantees.
inline ComputeResult apply_link_budget(const ComputeResult& compute, const LinkBudget& budget,
                                       Dataflow dataflow) {
  ComputeResult out = compute;
  out.total_compute_cycles = 0;
  for (auto& fc : out.per_fold) {
    FoldShape shape{0, fc.rows_used, 0, fc.cols_used, 0, fc.t};
    fc.cycles = detail::scale_fold_cycles(fc.cycles, injection_slowdown(shape, dataflow, budget),
                                          drain_slowdown(shape, budget));
    out.total_compute_cycles += fc.cycles.total;
  }
  if (out.total_compute_cycles > 0) {
    out.utilization = static_cast<double>(out.mac_count) /
                      (static_cast<double>(out.array_rows * out.array_cols) *
                       static_cast<double>(out.total_compute_cycles));
  }
  return out;
}

}  // namespace simcoder
