#pragma once

// Operator-facing command layer. Subcommands: simulate | bench | agent |
// report, long flags only. Exit codes: 0 success, 2 usage, 3 parse/input,
// 4 simulation, 5 provider, 6 sandbox.

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "simcoder/agent/loop.hpp"
#include "simcoder/agent/provider_http.hpp"
#include "simcoder/agent/score.hpp"
#include "simcoder/simulate.hpp"

namespace simcoder::cli {

namespace fs = std::filesystem;

inline void require_exists(const fs::path& path, const char* what) {
  if (!fs::exists(path)) {
    throw Error(ErrorKind::IoError, std::string(what) + " not found: " + path.string());
  }
}

inline std::string network_name_of(const fs::path& topology_path) {
  return topology_path.stem().string();
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateOptions {
  std::string config_path;
  std::string topology_path;
  std::string output_dir;
};

inline RunReport simulate_files(const fs::path& config_path, const fs::path& topology_path,
                                std::ostream& warn_stream) {
  require_exists(config_path, "config file");
  require_exists(topology_path, "topology file");
  ArchConfig cfg = parse_arch_config(agent::read_text_file(config_path));
  WorkloadTopology topo = parse_topology_csv(agent::read_text_file(topology_path),
                                             network_name_of(topology_path));
  for (const auto& w : validate_pair(cfg, topo)) warn_stream << "warning: " << w << "\n";
  return simulate_network(topo, cfg);
}

inline int cmd_simulate(const SimulateOptions& opt) {
  RunReport run = simulate_files(opt.config_path, opt.topology_path, std::cerr);
  fs::path out = fs::path(opt.output_dir) / (run.network_name + "_report.csv");
  agent::write_text_file(out, emit_csv(run));
  std::cout << summary_line(run) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// bench

struct BenchOptions {
  std::string config_path;
  std::string manifest_path;  // one topology path per line, # comments
  std::string output_dir;
};

inline std::vector<fs::path> load_topology_manifest(const fs::path& path) {
  require_exists(path, "bench manifest");
  std::vector<fs::path> out;
  const std::string text = agent::read_text_file(path);
  for (std::string_view line : detail::split_lines(text)) {
    if (size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    fs::path p{std::string(line)};
    if (p.is_relative()) p = path.parent_path() / p;
    out.push_back(p);
  }
  if (out.empty()) throw Error(ErrorKind::Usage, "bench manifest lists no topologies");
  return out;
}

inline constexpr const char* kBenchHeader = "network,total_cycles,wall_clock_s";

inline int cmd_bench(const BenchOptions& opt) {
  require_exists(opt.config_path, "config file");
  auto topologies = load_topology_manifest(opt.manifest_path);

  std::string summary = std::string(kBenchHeader) + "\n";
  bool any_failed = false;
  for (const auto& topo_path : topologies) {
    std::string name = network_name_of(topo_path);
    try {
      RunReport run = simulate_files(opt.config_path, topo_path, std::cerr);
      agent::write_text_file(fs::path(opt.output_dir) / (name + "_report.csv"), emit_csv(run));
      summary += name + "," + std::to_string(run.total_cycles) + "," +
                 simcoder::detail::format_fraction(run.wall_clock_seconds) + "\n";
      std::cout << summary_line(run) << "\n";
    } catch (const Error& e) {
      any_failed = true;
      summary += name + ",ERROR,0\n";
      std::cerr << "error: " << name << ": " << e.what() << "\n";
    }
  }
  agent::write_text_file(fs::path(opt.output_dir) / "bench_summary.csv", summary);
  return any_failed ? 4 : 0;
}

// ---------------------------------------------------------------------------
// report: compare two bench summaries network by network

struct ReportOptions {
  std::string ours_path;
  std::string reference_path;
};

inline std::vector<std::pair<std::string, uint64_t>> parse_bench_summary(const fs::path& path) {
  require_exists(path, "summary file");
  std::vector<std::pair<std::string, uint64_t>> rows;
  const std::string text = agent::read_text_file(path);
  auto lines = detail::split_lines(text);
  for (size_t i = 1; i < lines.size(); ++i) {
    std::string_view line = detail::trim(lines[i]);
    if (line.empty()) continue;
    size_t c1 = line.find(',');
    if (c1 == std::string_view::npos) {
      throw Error(ErrorKind::BadRow, "summary row " + std::to_string(i + 1) + ": expected CSV");
    }
    size_t c2 = line.find(',', c1 + 1);
    std::string_view cycles = line.substr(c1 + 1, c2 == std::string_view::npos
                                                      ? std::string_view::npos
                                                      : c2 - c1 - 1);
    if (cycles == "ERROR") continue;
    uint64_t total = 0;
    if (!detail::parse_u64(cycles, total)) {
      throw Error(ErrorKind::NonNumericField,
                  "summary row " + std::to_string(i + 1) + ": bad cycle count");
    }
    rows.emplace_back(std::string(line.substr(0, c1)), total);
  }
  return rows;
}

inline int cmd_report(const ReportOptions& opt) {
  auto ours = parse_bench_summary(opt.ours_path);
  auto reference = parse_bench_summary(opt.reference_path);
  std::cout << "network,ours,reference,error_pct\n";
  bool any = false;
  for (const auto& [name, ref_cycles] : reference) {
    auto it = std::find_if(ours.begin(), ours.end(),
                           [&](const auto& row) { return row.first == name; });
    if (it == ours.end()) {
      std::cerr << "warning: no result for network '" << name << "'\n";
      continue;
    }
    any = true;
    std::cout << name << "," << it->second << "," << ref_cycles << ","
              << error_rate_string(it->second, ref_cycles) << "\n";
  }
  if (!any) throw Error(ErrorKind::Usage, "no networks in common between the two summaries");
  return 0;
}

// ---------------------------------------------------------------------------
// agent

struct AgentOptions {
  std::string manifest_path;        // task manifest (JSON)
  std::string config_path;          // architecture specification
  std::string strategy = "icl_cot";
  uint64_t budget = 5;
  std::string provider_config_path;  // required unless replaying
  std::string sandbox_profile_path;  // optional; defaults to the Python profile
  std::string output_dir;
  std::string replay_dir;  // replay transcripts instead of calling a provider
  unsigned jobs = 1;
};

inline int cmd_agent(const AgentOptions& opt) {
  using namespace simcoder::agent;

  require_exists(opt.manifest_path, "task manifest");
  require_exists(opt.config_path, "config file");
  std::string arch_spec = read_text_file(opt.config_path);
  parse_arch_config(arch_spec);  // validate before spending provider budget

  PromptStrategy strategy = parse_strategy(opt.strategy);
  SandboxProfile profile;
  if (!opt.sandbox_profile_path.empty()) {
    require_exists(opt.sandbox_profile_path, "sandbox profile");
    profile = load_sandbox_profile(opt.sandbox_profile_path);
  }

  std::vector<Task> tasks;
  for (const auto& path : load_task_manifest(opt.manifest_path)) {
    require_exists(path, "task file");
    tasks.push_back(load_task_file(path));
  }

  std::unique_ptr<Provider> http;
  std::unique_ptr<Provider> provider;
  if (!opt.replay_dir.empty()) {
    require_exists(opt.replay_dir, "replay transcript directory");
    provider = std::make_unique<ReplayProvider>(opt.replay_dir);
  } else {
    if (opt.provider_config_path.empty()) {
      throw Error(ErrorKind::Usage, "agent needs --provider-config or --replay");
    }
    require_exists(opt.provider_config_path, "provider config");
    http = std::make_unique<HttpProvider>(load_provider_config(opt.provider_config_path));
    provider =
        std::make_unique<RecordingProvider>(*http, fs::path(opt.output_dir) / "transcripts");
  }

  fs::path artifacts = fs::path(opt.output_dir) / "artifacts";
  std::vector<AttemptLog> logs(tasks.size());
  std::atomic<size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr first_error;

  auto worker = [&] {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= tasks.size()) break;
      try {
        logs[i] = run_task(tasks[i], *provider, strategy, opt.budget, profile, arch_spec,
                           artifacts);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!first_error) first_error = std::current_exception();
        break;
      }
    }
  };
  unsigned jobs = std::max(1u, opt.jobs);
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);

  for (const auto& log : logs) {
    write_text_file(fs::path(opt.output_dir) / "logs" / (log.task_id + ".json"),
                    attempt_log_to_json(log).dump(2) + "\n");
  }

  PassAtKReport at1 = pass_at_k(logs, 1);
  PassAtKReport atk = pass_at_k(logs, opt.budget);
  nlohmann::ordered_json scores;
  scores["strategy"] = to_token(strategy);
  scores["n"] = at1.n;
  scores["pass_at_1"] = {{"k", 1}, {"c", at1.c}, {"rate", at1.rate}};
  scores["pass_at_budget"] = {{"k", opt.budget}, {"c", atk.c}, {"rate", atk.rate}};
  write_text_file(fs::path(opt.output_dir) / "pass_at_k.json", scores.dump(2) + "\n");

  std::cout << "strategy,pass@1,pass@" << opt.budget << "\n";
  std::cout << to_token(strategy) << "," << pass_rate_string(at1) << "," << pass_rate_string(atk)
            << "\n";

  bool all_aborted = !logs.empty();
  for (const auto& log : logs) all_aborted = all_aborted && log.aborted;
  return all_aborted ? 5 : 0;
}

// ---------------------------------------------------------------------------
// app assembly

inline constexpr const char* kExitCodeFooter =
    "Exit codes:\n"
    "  0  success\n"
    "  2  usage error (bad flags or arguments)\n"
    "  3  input error (missing files, config/topology parse failures)\n"
    "  4  simulation error (infeasible tile, failed bench network)\n"
    "  5  provider error (HTTP failure after retries, empty corpus)\n"
    "  6  sandbox unavailable (candidate runner misconfigured)";

struct CliOptions {
  SimulateOptions simulate;
  BenchOptions bench;
  AgentOptions agent;
  ReportOptions report;
  uint64_t seed = 0;  // seeds randomized fixtures in tooling; accepted globally
};

inline std::unique_ptr<CLI::App> make_app(CliOptions& opt) {
  auto app = std::make_unique<CLI::App>("systolic-array DNN accelerator simulator and "
                                        "LLM-agent harness");
  app->require_subcommand(1);
  app->footer(kExitCodeFooter);
  app->add_option("--seed", opt.seed, "seed for randomized fixtures (default 0)");

  auto* sim = app->add_subcommand("simulate", "simulate one topology and write a layer report");
  sim->add_option("--config", opt.simulate.config_path, "architecture config file")->required();
  sim->add_option("--topology", opt.simulate.topology_path, "topology CSV file")->required();
  sim->add_option("--output-dir", opt.simulate.output_dir, "report output directory")->required();

  auto* bench = app->add_subcommand("bench", "simulate every topology in a manifest");
  bench->add_option("--config", opt.bench.config_path, "architecture config file")->required();
  bench->add_option("--manifest", opt.bench.manifest_path,
                    "text file listing topology CSVs, one per line")
      ->required();
  bench->add_option("--output-dir", opt.bench.output_dir, "report output directory")->required();

  auto* agent = app->add_subcommand("agent", "run the generate/evaluate/repair loop per task");
  agent->add_option("--manifest", opt.agent.manifest_path, "task manifest (JSON)")->required();
  agent->add_option("--config", opt.agent.config_path, "architecture config file")->required();
  agent->add_option("--strategy", opt.agent.strategy,
                    "prompting strategy: zero_shot|icl|cot|icl_cot");
  agent->add_option("--budget", opt.agent.budget, "attempt budget per task (default 5)");
  agent->add_option("--provider-config", opt.agent.provider_config_path,
                    "provider endpoint config (JSON)");
  agent->add_option("--sandbox-profile", opt.agent.sandbox_profile_path,
                    "candidate sandbox profile (JSON)");
  agent->add_option("--output-dir", opt.agent.output_dir, "run output directory")->required();
  agent->add_option("--replay", opt.agent.replay_dir,
                    "replay recorded transcripts instead of calling a provider");
  agent->add_option("--jobs", opt.agent.jobs, "concurrent tasks (default 1)");

  auto* report = app->add_subcommand("report", "compare two bench summaries with error rates");
  report->add_option("--ours", opt.report.ours_path, "bench summary to evaluate")->required();
  report->add_option("--reference", opt.report.reference_path, "reference bench summary")
      ->required();

  return app;
}

inline std::string help_text() {
  CliOptions opt;
  auto app = make_app(opt);
  return app->help("", CLI::AppFormatMode::All);
}

inline int run_cli(int argc, const char* const* argv) {
  CliOptions opt;
  auto app = make_app(opt);
  try {
    app->parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app->exit(e);
    return code == 0 ? 0 : 2;  // help/version exit 0; usage errors exit 2
  }

  try {
    if (app->got_subcommand("simulate")) return cmd_simulate(opt.simulate);
    if (app->got_subcommand("bench")) return cmd_bench(opt.bench);
    if (app->got_subcommand("agent")) return cmd_agent(opt.agent);
    if (app->got_subcommand("report")) return cmd_report(opt.report);
    throw Error(ErrorKind::Usage, "no subcommand selected");
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace simcoder::cli
