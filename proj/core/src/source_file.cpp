#include "repocorpus/source_file.hpp"

#include <algorithm>

#include "repocorpus/text.hpp"

namespace repocorpus {

FileStats compute_file_stats(std::string_view content) {
  FileStats stats;
  if (content.empty()) return stats;

  const std::u32string cps = decode_utf8(content);
  std::size_t letters = 0;
  std::size_t total_line_chars = 0;
  std::size_t line_len = 0;
  std::size_t lines = 0;

  auto close_line = [&](std::size_t len) {
    ++lines;
    total_line_chars += len;
    stats.max_line_len = std::max(stats.max_line_len, len);
  };

  for (std::size_t i = 0; i < cps.size(); ++i) {
    const char32_t cp = cps[i];
    if (is_letter(cp)) ++letters;
    if (cp == U'\n') {
      const bool crlf = i > 0 && cps[i - 1] == U'\r';
      close_line(crlf ? line_len - 1 : line_len);
      line_len = 0;
    } else {
      ++line_len;
    }
  }
  if (cps.back() != U'\n') close_line(line_len);

  stats.char_count = cps.size();
  stats.line_count = lines;
  stats.avg_line_len = static_cast<double>(total_line_chars) / static_cast<double>(lines);
  stats.alphabetic_fraction = static_cast<double>(letters) / static_cast<double>(cps.size());
  return stats;
}

} // namespace repocorpus
