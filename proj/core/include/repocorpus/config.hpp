#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "repocorpus/dedup.hpp"
#include "repocorpus/fim.hpp"
#include "repocorpus/packing.hpp"
#include "repocorpus/quality_filter.hpp"

namespace repocorpus {

// Stages in execution order.
enum class Stage { filter, order, dedup, decontaminate, build };

inline constexpr std::array<Stage, 5> kAllStages = {Stage::filter, Stage::order, Stage::dedup, Stage::decontaminate,
                                                    Stage::build};

std::string_view stage_name(Stage stage);
std::optional<Stage> stage_from_name(std::string_view name);

enum class OutputFormat { jsonl, binary };

struct DedupConfig {
  MinHashParams minhash;  // minhash.seed is taken from PipelineConfig::seed
  double threshold = 0.85;
  LshParams lsh;
  bool auto_banding = false;  // derive bands/rows from threshold instead
  bool report = true;
};

struct DecontamConfig {
  std::vector<std::filesystem::path> test_sets;  // JSONL of {"text", "benchmark"}
  bool report = true;
};

struct BuildConfig {
  double fim_rate = 0.5;
  FimMode fim_mode = FimMode::psm;
  std::size_t entry_len = 4096;
  TailPolicy tail = TailPolicy::drop;
  OutputFormat format = OutputFormat::jsonl;
  std::size_t entries_per_shard = 1000;
  SentinelSet sentinels;
};

struct PipelineConfig {
  std::vector<std::filesystem::path> inputs;
  std::filesystem::path output;
  std::optional<std::filesystem::path> extension_map;
  std::size_t workers = 1;
  std::uint64_t seed = 0;
  std::size_t shard_records = 1000;
  std::array<bool, 5> stages{true, true, true, true, true};

  FilterThresholds filter;
  bool dump_graphs = false;
  DedupConfig dedup;
  DecontamConfig decontam;
  BuildConfig build;

  bool enabled(Stage s) const { return stages[static_cast<std::size_t>(s)]; }
};

// Carries every problem found, not just the first.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

private:
  std::vector<std::string> problems_;
};

nlohmann::json config_to_json(const PipelineConfig& cfg);

/// Missing keys take their defaults; unknown keys and ill-typed values are
/// errors. Relative paths are resolved against `base_dir`.
PipelineConfig config_from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});

PipelineConfig load_config(const std::filesystem::path& file);

/// Every violated constraint (ranges, sentinels, paths that must exist).
std::vector<std::string> validate_config(const PipelineConfig& cfg);

/// The parameters a stage's output depends on, as canonical JSON text. Paths
/// that only locate data (inputs, output) and the worker count are excluded.
std::string stage_parameters(const PipelineConfig& cfg, Stage stage);

} // namespace repocorpus
