#include <catch2/catch_amalgamated.hpp>

#include <array>

#include "simcoder/interconnect.hpp"

using namespace simcoder;

namespace {
constexpr std::array<Dataflow, 3> kDataflows = {
    Dataflow::OutputStationary, Dataflow::WeightStationary, Dataflow::InputStationary};

ComputeResult sample_compute(const ArchConfig& cfg) {
  FoldPlan plan;
  plan.dims = {cfg.array_rows * 2, cfg.array_cols, 5};
  plan.dataflow = cfg.dataflow;
  plan.row_folds = 2;
  plan.col_folds = 1;
  plan.folds = {{0, cfg.array_rows, 0, cfg.array_cols, 0, 5},
                {cfg.array_rows, cfg.array_rows, 0, cfg.array_cols, 0, 5}};
  return compute_layer(plan, cfg, "sample");
}
}  // namespace

TEST_CASE("default budget is an exact identity") {
  for (Dataflow df : kDataflows) {
    ArchConfig cfg;
    cfg.array_rows = 4;
    cfg.array_cols = 6;
    cfg.dataflow = df;
    ComputeResult base = sample_compute(cfg);
    ComputeResult out = apply_link_budget(base, LinkBudget::defaults_for(cfg), df);
    CHECK(out == base);
  }
}

TEST_CASE("injection slowdown multipliers") {
  ArchConfig cfg;
  cfg.array_rows = cfg.array_cols = 8;
  LinkBudget dflt = LinkBudget::defaults_for(cfg);

  FoldShape full{0, 8, 0, 8, 0, 5};
  CHECK(injection_slowdown(full, Dataflow::OutputStationary, dflt) == 1);

  LinkBudget halved = dflt;
  halved.row_ports = 4;
  CHECK(injection_slowdown(full, Dataflow::OutputStationary, halved) == 2);

  FoldShape single{0, 1, 0, 1, 0, 9};
  for (uint64_t ports = 1; ports <= 4; ++ports) {
    LinkBudget b{ports, ports, ports};
    CHECK(injection_slowdown(single, Dataflow::OutputStationary, b) == 1);
  }
}

TEST_CASE("halving every port doubles the stream phase") {
  ArchConfig cfg;
  cfg.array_rows = cfg.array_cols = 8;
  for (Dataflow df : kDataflows) {
    cfg.dataflow = df;
    ComputeResult base = sample_compute(cfg);
    LinkBudget half{4, 4, 4};
    ComputeResult out = apply_link_budget(base, half, df);
    for (size_t i = 0; i < base.per_fold.size(); ++i) {
      CHECK(out.per_fold[i].cycles.stream == 2 * base.per_fold[i].cycles.stream);
      CHECK(out.per_fold[i].cycles.total >= base.per_fold[i].cycles.total);
    }
  }
}

TEST_CASE("budget-constrained fast path equals the extended reference") {
  for (Dataflow df : kDataflows) {
    for (uint64_t r = 1; r <= 6; ++r) {
      for (uint64_t c = 1; c <= 6; ++c) {
        for (uint64_t t : {1ull, 2ull, 5ull}) {
          for (uint64_t ports : {1ull, 2ull, 4ull}) {
            LinkBudget budget{ports, ports, ports};
            FoldShape shape{0, r, 0, c, 0, t};
            FoldCycles fast = detail::scale_fold_cycles(
                fold_cycles_closed_form(r, c, t, df),
                injection_slowdown(shape, df, budget), drain_slowdown(shape, budget));
            REQUIRE(fast == simulate_fold_reference_constrained(r, c, t, df, budget));
          }
        }
      }
    }
  }
}

TEST_CASE("reducing port counts never speeds anything up") {
  ArchConfig cfg;
  cfg.array_rows = 4;
  cfg.array_cols = 4;
  for (Dataflow df : kDataflows) {
    cfg.dataflow = df;
    ComputeResult base = sample_compute(cfg);
    LinkBudget dflt = LinkBudget::defaults_for(cfg);
    for (uint64_t rp : {1ull, 2ull, 4ull}) {
      for (uint64_t cp : {1ull, 2ull, 4ull}) {
        for (uint64_t dp : {1ull, 2ull, 4ull}) {
          ComputeResult out = apply_link_budget(base, {rp, cp, dp}, df);
          ComputeResult ref = apply_link_budget(base, dflt, df);
          CHECK(out.total_compute_cycles >= ref.total_compute_cycles);
          for (size_t i = 0; i < out.per_fold.size(); ++i) {
            CHECK(out.per_fold[i].cycles.total >= ref.per_fold[i].cycles.total);
          }
        }
      }
    }
  }
}
