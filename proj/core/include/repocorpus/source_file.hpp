#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "repocorpus/language.hpp"

namespace repocorpus {

// One file of one repository. Content is UTF-8; files that fail to decode
// never become a SourceFile (ingestion drops them).
struct SourceFile {
  std::string repo_id;
  std::string path;  // repo-relative, '/'-separated
  std::optional<LanguageId> language;
  std::string content;

  std::size_t byte_size() const { return content.size(); }
};

// Quantities tested by the base filters. Lengths are in code points.
struct FileStats {
  double avg_line_len = 0.0;
  std::size_t max_line_len = 0;
  double alphabetic_fraction = 0.0;
  std::size_t char_count = 0;
  std::size_t line_count = 0;
};

// Lines are split on '\n'; the terminator (and a '\r' right before it) is not
// part of the line, and a trailing terminator does not open an empty line.
// alphabetic_fraction counts Unicode letters over every code point,
// whitespace and newlines included.
FileStats compute_file_stats(std::string_view content);

} // namespace repocorpus
