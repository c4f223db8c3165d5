#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "repocorpus/language.hpp"
#include "repocorpus/repo_sample.hpp"
#include "repocorpus/source_file.hpp"

namespace repocorpus {

// Per-stage accounting. A stage is balanced when
// input == output + sum(drops).
struct StageCounters {
  std::string stage;
  std::string unit;  // "files", "repos" or "documents"
  std::uint64_t input = 0;
  std::uint64_t output = 0;
  std::map<std::string, std::uint64_t> drops;
  std::map<std::string, std::uint64_t> info;  // informational, not part of the identity

  std::uint64_t dropped() const;
  bool balanced() const { return input == output + dropped(); }
  nlohmann::json to_json() const;
  static StageCounters from_json(const nlohmann::json& j);
};

// Display values are held as exact integers (hundredths of a GB, whole files,
// hundredths of a percent) so that rows always add up to the Total row.
struct LanguageRow {
  std::string language;  // "Total" for the totals row
  std::uint64_t bytes = 0;
  std::uint64_t files = 0;
  std::uint64_t size_centi_gb = 0;
  std::uint64_t proportion_centi = 0;  // 10000 == 100.00 %
};

struct CorpusStats {
  std::vector<LanguageRow> rows;  // in language-table order
  LanguageRow total;
  std::vector<StageCounters> stages;

  /// Pipe table with the columns Language, Size (GB), Files (k), Prop. (%),
  /// followed by the per-stage drop table.
  std::string render_table() const;
  nlohmann::json to_json() const;
};

/// Largest-remainder apportionment of `units` proportional to `weights`; the
/// result always sums to `units` (or is all zero when the weights are).
std::vector<std::uint64_t> apportion(std::span<const std::uint64_t> weights, std::uint64_t units);

class StatsAccumulator {
public:
  void add_file(std::optional<LanguageId> language, std::uint64_t bytes);
  void add(const SourceFile& file) { add_file(file.language, file.byte_size()); }
  void add(const RepoSample& sample);

  CorpusStats finish(std::vector<StageCounters> stages = {}) const;

private:
  std::map<LanguageId, std::pair<std::uint64_t, std::uint64_t>> per_language_;  // bytes, files
};

} // namespace repocorpus
