#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "repocorpus/language.hpp"
#include "repocorpus/source_file.hpp"

namespace repocorpus {

enum class FilterRule {
  max_line_len,
  avg_line_len,
  alphabetic_fraction,
  xml_header,
  visible_min_chars,
  visible_ratio,
  data_too_small,
  data_too_large,
  repeated_token,
  long_code_lines,
};

std::string_view rule_name(FilterRule rule);

// accepted == !rule_fired, always; build through accept()/reject().
struct FilterVerdict {
  bool accepted = true;
  std::optional<FilterRule> rule_fired;
  std::string detail;

  static FilterVerdict accept() { return {}; }
  static FilterVerdict reject(FilterRule rule, std::string detail) {
    return {false, rule, std::move(detail)};
  }
};

// Comparison semantics are part of the contract: "max"/"avg" reject on >,
// "min" fractions reject on <, data-file bounds are inclusive.
struct FilterThresholds {
  std::size_t max_line_len = 1000;
  double max_avg_line_len = 100.0;
  double min_alphabetic_fraction = 0.25;
  std::size_t xml_header_window = 100;

  std::size_t html_min_visible_chars = 100;
  double html_min_visible_ratio = 0.20;

  std::size_t data_min_chars = 50;
  std::size_t data_max_chars = 5000;

  bool quality_heuristics = true;
  double max_repeated_token_share = 0.5;
  std::size_t repeated_token_min_tokens = 10;
  std::size_t long_line_len = 200;
  double max_long_line_share = 0.9;
};

/// Line-length, alphabetic and XML-header rules, checked in the order of
/// FilterRule. XSLT is exempt from the XML-header rule.
FilterVerdict apply_base_filters(const SourceFile& file, const FileStats& stats,
                                 const FilterThresholds& t = {});

/// Tag stripper that drops comments and script/style bodies and collapses
/// whitespace runs to one space. Never fails; unterminated constructs run to
/// the end of input.
std::string extract_visible_text(std::string_view html);

FilterVerdict filter_html(std::string_view content, const FilterThresholds& t = {});

/// Throws std::invalid_argument unless `language` is JSON or YAML.
FilterVerdict filter_data_file(std::string_view content, LanguageId language,
                               const FilterThresholds& t = {});

/// Stand-in for learned quality screening: a single whitespace token making up
/// more than half the content, or almost every code line being very long.
FilterVerdict screen_heuristics(std::string_view content, std::optional<LanguageId> language,
                                const FilterThresholds& t = {});

/// Full per-file decision: base rules, then HTML or data-file rules by
/// language, then the heuristics when enabled.
FilterVerdict evaluate_file(const SourceFile& file, const FilterThresholds& t = {});

} // namespace repocorpus
