#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "repocorpus/config.hpp"
#include "repocorpus/corpus_stats.hpp"

namespace repocorpus {

// A stage threw. The run manifest on disk records the stages that completed
// and marks this one failed.
class StageError : public std::runtime_error {
public:
  StageError(Stage stage, const std::string& what);
  Stage stage() const { return stage_; }

private:
  Stage stage_;
};

struct RunOptions {
  std::optional<Stage> stop_after;  // run (or resume) up to and including this stage
  bool stats_only = false;          // never execute a stage, only reuse completed ones
  std::optional<std::filesystem::path> dedup_report;          // copy of reports/dedup_clusters.jsonl
  std::optional<std::filesystem::path> contamination_report;  // copy of reports/contamination.jsonl
};

struct StageOutcome {
  Stage stage;
  bool enabled = true;
  bool resumed = false;
  std::string fingerprint;
  StageCounters counters;
};

struct RunSummary {
  StageCounters ingest;
  std::vector<StageOutcome> stages;  // the stages that completed, in order
  CorpusStats stats;
  nlohmann::json manifest;           // contents of run_manifest.json
};

/// Runs the stages in their fixed order. Each stage's output is written under
/// <output>/stages/<name>/ with a manifest; a stage whose manifest matches its
/// fingerprint (upstream fingerprint + own parameters) is reused instead of
/// recomputed. Throws ConfigError for an invalid config and StageError when a
/// stage fails.
RunSummary run_pipeline(const PipelineConfig& config, const RunOptions& options = {});

/// Renders stats to <output>/stats.txt and <output>/stats.json.
void emit_stats(const CorpusStats& stats, const std::filesystem::path& output_dir);

} // namespace repocorpus
