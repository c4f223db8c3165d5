#include "repocorpus/quality_filter.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <stdexcept>
#include <unordered_map>

#include "repocorpus/comment_style.hpp"
#include "repocorpus/text.hpp"

namespace repocorpus {
namespace {

constexpr std::string_view kXmlHeader = "<?xml version=";

bool is_language(std::optional<LanguageId> lang, std::string_view name) {
  return lang && lang->name() == name;
}

char ascii_lower(char c) { return c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c; }

bool starts_with_ci(std::string_view s, std::size_t pos, std::string_view prefix) {
  if (s.size() - pos < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (ascii_lower(s[pos + i]) != prefix[i]) return false;
  }
  return true;
}

std::size_t find_ci(std::string_view s, std::size_t from, std::string_view needle) {
  for (std::size_t i = from; i + needle.size() <= s.size(); ++i) {
    if (starts_with_ci(s, i, needle)) return i;
  }
  return std::string_view::npos;
}

bool is_tag_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '/' || c == '!' || c == '?';
}

// Index just past the closing '>' of the tag opened at `lt`, honouring quoted
// attribute values.
std::size_t skip_tag(std::string_view html, std::size_t lt) {
  char quote = 0;
  for (std::size_t i = lt + 1; i < html.size(); ++i) {
    const char c = html[i];
    if (quote) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '>') {
      return i + 1;
    }
  }
  return html.size();
}

std::string_view tag_name(std::string_view html, std::size_t lt) {
  std::size_t i = lt + 1;
  const std::size_t start = i;
  while (i < html.size() && ((html[i] >= 'a' && html[i] <= 'z') || (html[i] >= 'A' && html[i] <= 'Z') ||
                             (html[i] >= '0' && html[i] <= '9'))) {
    ++i;
  }
  return html.substr(start, i - start);
}

} // namespace

std::string_view rule_name(FilterRule rule) {
  switch (rule) {
    case FilterRule::max_line_len: return "max_line_len";
    case FilterRule::avg_line_len: return "avg_line_len";
    case FilterRule::alphabetic_fraction: return "alphabetic_fraction";
    case FilterRule::xml_header: return "xml_header";
    case FilterRule::visible_min_chars: return "visible_min_chars";
    case FilterRule::visible_ratio: return "visible_ratio";
    case FilterRule::data_too_small: return "data_too_small";
    case FilterRule::data_too_large: return "data_too_large";
    case FilterRule::repeated_token: return "repeated_token";
    case FilterRule::long_code_lines: return "long_code_lines";
  }
  return "unknown";
}

FilterVerdict apply_base_filters(const SourceFile& file, const FileStats& stats,
                                 const FilterThresholds& t) {
  if (stats.max_line_len > t.max_line_len) {
    return FilterVerdict::reject(FilterRule::max_line_len,
                                 fmt::format("max line length {} > {}", stats.max_line_len, t.max_line_len));
  }
  if (stats.avg_line_len > t.max_avg_line_len) {
    return FilterVerdict::reject(FilterRule::avg_line_len,
                                 fmt::format("average line length {:.2f} > {}", stats.avg_line_len,
                                             t.max_avg_line_len));
  }
  if (stats.alphabetic_fraction < t.min_alphabetic_fraction) {
    return FilterVerdict::reject(FilterRule::alphabetic_fraction,
                                 fmt::format("alphabetic fraction {:.4f} < {}", stats.alphabetic_fraction,
                                             t.min_alphabetic_fraction));
  }
  if (!is_language(file.language, "XSLT")) {
    const std::string_view head(file.content.data(), byte_offset_of(file.content, t.xml_header_window));
    if (head.find(kXmlHeader) != std::string_view::npos) {
      return FilterVerdict::reject(FilterRule::xml_header,
                                   fmt::format("'{}' within the first {} characters", kXmlHeader,
                                               t.xml_header_window));
    }
  }
  return FilterVerdict::accept();
}

std::string extract_visible_text(std::string_view html) {
  std::string text;
  text.reserve(html.size() / 2);
  bool pending_space = false;

  auto emit = [&](char c) {
    if (is_ascii_space(c)) {
      pending_space = !text.empty();
      return;
    }
    if (pending_space) text.push_back(' ');
    pending_space = false;
    text.push_back(c);
  };

  std::size_t i = 0;
  while (i < html.size()) {
    if (html[i] != '<' || i + 1 >= html.size() || !is_tag_start(html[i + 1])) {
      emit(html[i++]);
      continue;
    }
    if (html.compare(i, 4, "<!--") == 0) {
      const auto end = html.find("-->", i + 4);
      i = end == std::string_view::npos ? html.size() : end + 3;
      pending_space = !text.empty();
      continue;
    }
    const std::string_view name = tag_name(html, i);
    std::size_t after = skip_tag(html, i);
    const bool self_closing = after >= 2 && html[after - 2] == '/';
    for (const std::string_view raw : {std::string_view("script"), std::string_view("style")}) {
      if (!self_closing && name.size() == raw.size() && starts_with_ci(html, i + 1, raw)) {
        const auto close = find_ci(html, after, raw == "script" ? "</script" : "</style");
        after = close == std::string_view::npos ? html.size() : skip_tag(html, close);
      }
    }
    i = after;
    // Tags separate words ("a<br>b" shows as two words).
    pending_space = !text.empty();
  }
  return text;
}

FilterVerdict filter_html(std::string_view content, const FilterThresholds& t) {
  const std::size_t visible = count_code_points(extract_visible_text(content));
  const std::size_t total = count_code_points(content);
  if (visible < t.html_min_visible_chars) {
    return FilterVerdict::reject(FilterRule::visible_min_chars,
                                 fmt::format("{} visible characters < {}", visible, t.html_min_visible_chars));
  }
  const double ratio = total == 0 ? 0.0 : static_cast<double>(visible) / static_cast<double>(total);
  if (ratio < t.html_min_visible_ratio) {
    return FilterVerdict::reject(FilterRule::visible_ratio,
                                 fmt::format("visible ratio {}/{} = {:.4f} < {}", visible, total, ratio,
                                             t.html_min_visible_ratio));
  }
  return FilterVerdict::accept();
}

FilterVerdict filter_data_file(std::string_view content, LanguageId language, const FilterThresholds& t) {
  if (language.name() != "JSON" && language.name() != "YAML") {
    throw std::invalid_argument("filter_data_file: expected JSON or YAML, got " + std::string(language.name()));
  }
  const std::size_t chars = count_code_points(content);
  if (chars < t.data_min_chars) {
    return FilterVerdict::reject(FilterRule::data_too_small,
                                 fmt::format("{} characters < {}", chars, t.data_min_chars));
  }
  if (chars > t.data_max_chars) {
    return FilterVerdict::reject(FilterRule::data_too_large,
                                 fmt::format("{} characters > {}", chars, t.data_max_chars));
  }
  return FilterVerdict::accept();
}

FilterVerdict screen_heuristics(std::string_view content, std::optional<LanguageId> language,
                                const FilterThresholds& t) {
  const std::size_t chars = count_code_points(content);
  const auto tokens = split_whitespace(content);
  if (chars > 0 && tokens.size() >= t.repeated_token_min_tokens) {
    std::unordered_map<std::string_view, std::size_t> counts;
    for (const auto tok : tokens) ++counts[tok];
    std::size_t best = 0;
    std::string_view best_tok;
    for (const auto& [tok, n] : counts) {
      const std::size_t covered = n * count_code_points(tok);
      if (covered > best || (covered == best && tok < best_tok)) {
        best = covered;
        best_tok = tok;
      }
    }
    const double share = static_cast<double>(best) / static_cast<double>(chars);
    if (share > t.max_repeated_token_share) {
      return FilterVerdict::reject(FilterRule::repeated_token,
                                   fmt::format("token '{}' covers {:.2f} of the content",
                                               best_tok.substr(0, 32), share));
    }
  }

  const CommentStyle style = comment_style_for(language);
  std::size_t code_lines = 0;
  std::size_t long_lines = 0;
  std::size_t pos = 0;
  while (pos <= content.size()) {
    auto nl = content.find('\n', pos);
    if (nl == std::string_view::npos) nl = content.size();
    const std::string_view line = content.substr(pos, nl - pos);
    pos = nl + 1;
    if (split_whitespace(line).empty() || is_comment_line(line, style)) continue;
    ++code_lines;
    if (count_code_points(line) > t.long_line_len) ++long_lines;
  }
  if (code_lines > 0) {
    const double share = static_cast<double>(long_lines) / static_cast<double>(code_lines);
    if (share > t.max_long_line_share) {
      return FilterVerdict::reject(FilterRule::long_code_lines,
                                   fmt::format("{}/{} code lines longer than {}", long_lines, code_lines,
                                               t.long_line_len));
    }
  }
  return FilterVerdict::accept();
}

FilterVerdict evaluate_file(const SourceFile& file, const FilterThresholds& t) {
  const FileStats stats = compute_file_stats(file.content);
  if (auto v = apply_base_filters(file, stats, t); !v.accepted) return v;
  if (is_language(file.language, "HTML")) {
    if (auto v = filter_html(file.content, t); !v.accepted) return v;
  }
  if (is_language(file.language, "JSON") || is_language(file.language, "YAML")) {
    if (auto v = filter_data_file(file.content, *file.language, t); !v.accepted) return v;
  }
  if (t.quality_heuristics) return screen_heuristics(file.content, file.language, t);
  return FilterVerdict::accept();
}

} // namespace repocorpus
