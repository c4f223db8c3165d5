#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "repocorpus/dependency.hpp"
#include "repocorpus/language.hpp"
#include "repocorpus/source_file.hpp"

namespace repocorpus {

// One repository's surviving files in dependency order, concatenated into a
// single document. languages and file_bytes run parallel to ordered_paths.
struct RepoSample {
  std::string repo_id;
  std::vector<std::string> ordered_paths;
  std::vector<std::optional<LanguageId>> languages;
  std::vector<std::uint64_t> file_bytes;
  std::string text;
  std::size_t char_count = 0;  // code points of text
};

/// "<comment> <path>" header line, the content (newline-terminated), then one
/// blank line, for each file in the given order.
RepoSample concatenate_with_paths(const std::string& repo_id, std::span<const SourceFile> ordered);

struct OrderStats {
  std::size_t files = 0;
  std::size_t edges = 0;
  std::size_t unsupported_files = 0;  // no import patterns for the language
  std::size_t components = 0;
};

// Result of ordering one repository: the sample plus the graph it came from.
struct OrderedRepo {
  RepoSample sample;
  DependencyGraph graph;
  OrderStats stats;
};

/// Extracts dependencies, builds the graph, sorts it and concatenates the
/// component sequences in emission order. `files` is taken in input
/// (directory-walk) order, which drives tie-breaking.
OrderedRepo order_repository(const std::string& repo_id, std::span<const SourceFile> files);

} // namespace repocorpus
