// repocorpus: command-line front end for the corpus pipeline.
//
// Exit codes: 0 success, 1 I/O or input error, 2 invalid config or usage,
// 3 a stage failed.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "repocorpus/config.hpp"
#include "repocorpus/ingest.hpp"
#include "repocorpus/pipeline.hpp"

namespace fs = std::filesystem;
using namespace repocorpus;

namespace {

constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitStage = 3;

struct Flags {
  std::optional<fs::path> config;
  std::vector<fs::path> inputs;
  std::optional<fs::path> output;
  std::optional<std::size_t> workers;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> format;
  std::vector<fs::path> test_sets;
  std::optional<fs::path> dedup_report;
  std::optional<fs::path> contamination_report;
  bool dump_graphs = false;
  bool quiet = false;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("-c,--config", f.config, "Pipeline config (JSON)");
  cmd->add_option("-i,--input", f.inputs, "Input corpus directory or JSONL file (replaces config inputs)");
  cmd->add_option("-o,--output", f.output, "Output directory");
  cmd->add_option("-w,--workers", f.workers, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", f.seed, "Global seed");
  cmd->add_option("--format", f.format, "Packed output format")->check(CLI::IsMember({"jsonl", "binary"}));
  cmd->add_option("--test-set", f.test_sets, "Benchmark test set JSONL (appends to config)");
  cmd->add_option("--dedup-report", f.dedup_report, "Write the near-duplicate cluster report here");
  cmd->add_option("--contamination-report", f.contamination_report, "Write the contamination report here");
  cmd->add_flag("--dump-graphs", f.dump_graphs, "Write per-repo dependency edge lists under reports/graphs");
  cmd->add_flag("-q,--quiet", f.quiet, "Only print errors");
}

PipelineConfig make_config(const Flags& f) {
  PipelineConfig cfg = f.config ? load_config(*f.config) : PipelineConfig{};
  if (!f.inputs.empty()) {
    cfg.inputs.clear();
    for (const auto& p : f.inputs) cfg.inputs.push_back(fs::absolute(p));
  }
  if (f.output) cfg.output = fs::absolute(*f.output);
  if (f.workers) cfg.workers = *f.workers;
  if (f.seed) {
    cfg.seed = *f.seed;
    cfg.dedup.minhash.seed = *f.seed;
  }
  if (f.format) cfg.build.format = *f.format == "binary" ? OutputFormat::binary : OutputFormat::jsonl;
  for (const auto& p : f.test_sets) cfg.decontam.test_sets.push_back(fs::absolute(p));
  if (f.dump_graphs) cfg.dump_graphs = true;
  return cfg;
}

void print_summary(const RunSummary& s) {
  auto line = [](const StageCounters& c, std::string_view note) {
    std::string drops;
    for (const auto& [reason, n] : c.drops) {
      if (n == 0) continue;
      drops += fmt::format(" {}={}", reason, n);
    }
    fmt::print("{:<14} {:>8} -> {:<8} {:<9}{}{}\n", c.stage, c.input, c.output, c.unit, drops, note);
  };
  line(s.ingest, "");
  for (const auto& st : s.stages) {
    std::string note;
    if (st.resumed) note += " (resumed)";
    if (!st.enabled) note += " (disabled)";
    line(st.counters, note);
  }
  fmt::print("\n{}", s.stats.render_table());
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Build pretraining samples from source-code repositories."};
  app.require_subcommand(0, 1);
  bool print_default = false;
  app.add_flag("--print-default-config", print_default, "Print the complete default config and exit");

  Flags flags;
  struct Command {
    const char* name;
    const char* help;
    std::optional<Stage> stop_after;
    bool stats_only;
  };
  const Command commands[] = {
      {"filter", "Run (or resume) up to quality filtering", Stage::filter, false},
      {"order", "Run (or resume) up to dependency ordering", Stage::order, false},
      {"dedup", "Run (or resume) up to repo-level near-dedup", Stage::dedup, false},
      {"decontaminate", "Run (or resume) up to decontamination", Stage::decontaminate, false},
      {"build", "Run (or resume) up to FIM and packing", Stage::build, false},
      {"run", "Run the full pipeline", std::nullopt, false},
      {"stats", "Report stats for the completed stages without running any", std::nullopt, true},
  };
  std::vector<CLI::App*> subs;
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    add_common(sub, flags);
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (print_default) {
    std::cout << config_to_json(PipelineConfig{}).dump(2) << "\n";
    return 0;
  }

  const Command* chosen = nullptr;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (subs[i]->parsed()) chosen = &commands[i];
  }
  if (!chosen) {
    std::cerr << app.help();
    return kExitUsage;
  }

  try {
    const PipelineConfig cfg = make_config(flags);
    RunOptions opts;
    opts.stop_after = chosen->stop_after;
    opts.stats_only = chosen->stats_only;
    opts.dedup_report = flags.dedup_report;
    opts.contamination_report = flags.contamination_report;
    const RunSummary summary = run_pipeline(cfg, opts);
    if (!flags.quiet) print_summary(summary);
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "invalid config:\n";
    for (const auto& p : e.problems()) std::cerr << "  " << p << "\n";
    return kExitUsage;
  } catch (const StageError& e) {
    std::cerr << e.what() << "\n";
    return kExitStage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
}
