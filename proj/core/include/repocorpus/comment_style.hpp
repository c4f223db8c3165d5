#pragma once

#include <optional>
#include <string_view>

#include "repocorpus/language.hpp"

namespace repocorpus {

// Line-comment syntax used for path headers and comment detection. `close` is
// empty for line comments and set for languages that only have block
// comments (HTML "<!-- ... -->", OCaml "(* ... *)").
struct CommentStyle {
  std::string_view open;
  std::string_view close;
};

/// `#` for the script family, language-specific tokens where known, `//`
/// otherwise (including an unknown language).
CommentStyle comment_style_for(std::optional<LanguageId> lang);

/// True when the trimmed line starts a comment in `style`.
bool is_comment_line(std::string_view line, const CommentStyle& style);

} // namespace repocorpus
