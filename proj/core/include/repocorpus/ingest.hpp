#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "repocorpus/corpus_stats.hpp"
#include "repocorpus/decontam.hpp"
#include "repocorpus/language.hpp"
#include "repocorpus/source_file.hpp"

namespace repocorpus {

class IngestError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct IngestResult {
  std::vector<SourceFile> files;  // grouped by repo_id (sorted), paths in walk order
  StageCounters counters;         // stage "ingest", unit "files"
};

/// Each input is either a directory whose immediate subdirectories are
/// repositories, or a .jsonl file of {"repo_id", "path", "content"} records.
/// Hidden entries (leading '.') are skipped. Files that are not valid UTF-8,
/// have no supported language, or repeat a (repo_id, path) pair are dropped
/// and counted.
IngestResult ingest_inputs(std::span<const std::filesystem::path> inputs, const ExtensionMap& map);

/// Reads JSONL test sets of {"text", "benchmark"}; a missing "benchmark"
/// defaults to the file stem.
std::vector<TestString> load_test_sets(std::span<const std::filesystem::path> files);

} // namespace repocorpus
